#include "bmir/toric.hpp"

#include "bmir/linsolve.hpp"

#include <algorithm>
#include <sstream>

namespace bmir {

namespace {

bool contains(const std::vector<unsigned>& s, unsigned j) {
  return std::find(s.begin(), s.end(), j) != s.end();
}

void k_subsets(unsigned n, unsigned k, unsigned start, std::vector<unsigned>& cur,
               std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (unsigned j = start; j < n; ++j) {
    cur.push_back(j);
    k_subsets(n, k, j + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Rational>> column_block(const IntMatrix& m, const std::vector<unsigned>& J) {
  std::vector<std::vector<Rational>> a(m.size(), std::vector<Rational>(J.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t c = 0; c < J.size(); ++c) a[i][c] = m[i][J[c]];
  return a;
}

// Exact ratio x / y when it is a rational constant.
Rational constant_ratio(const CohClass& x, const CohClass& y, const char* what) {
  CohClass q = x * y.inverse();
  if (!q.is_scalar() || !q.degree0().is_constant())
    throw ModelError(std::string("non-constant ") + what);
  return q.degree0().constant_value();
}

long integral(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw ModelError(std::string("non-integral ") + what);
  return q.get_num().get_si();
}

std::string set_text(const std::vector<unsigned>& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i] + 1);
  return t + "}";
}

}  // namespace

Ring base_ring_for(const std::vector<unsigned>& dims) { return make_ring(dims); }

FibrationModel make_model(const IntMatrix& m, const std::vector<Rational>& omega,
                          const std::vector<unsigned>& base_dims,
                          const std::vector<std::string>& lambda_base, const std::vector<unsigned>& alpha,
                          BlowupMode mode, const std::vector<std::string>& L, Ring im_ring) {
  FibrationModel model;
  model.K = static_cast<long>(m.size());
  model.N = m.empty() ? 0 : static_cast<long>(m[0].size());
  model.m = m;
  model.omega = omega;
  model.base_dims = base_dims;
  model.base_ring = base_ring_for(base_dims);
  model.im_ring = im_ring ? im_ring
                  : mode == BlowupMode::AlongDivisor ? default_im_ring(base_dims)
                                                      : model.base_ring;
  for (long j = 0; j < model.N; ++j) {
    CohClass lam(model.base_ring, -Scalar::lambda(static_cast<unsigned>(j)));
    if (j < static_cast<long>(lambda_base.size()) && !lambda_base[j].empty())
      lam += parse_class(lambda_base[j], model.base_ring);
    model.Lambda.push_back(lam);
  }
  model.alpha = alpha;
  model.mode = mode;
  for (const auto& l : L) model.L.push_back(parse_class(l, model.base_ring));
  model.validate();
  return model;
}

Ring default_im_ring(const std::vector<unsigned>& dims) {
  if (dims.empty()) return make_ring(dims);
  std::vector<unsigned> caps = dims;
  if (caps[0] > 0) caps[0] -= 1;
  Ring b = make_ring(dims);
  return make_ring(b->names, caps);
}

const CohClass& FibrationModel::c1L() const {
  if (L.empty()) throw ModelError("model has no divisor bundle L");
  return L[0];
}

void FibrationModel::validate() const {
  if (K <= 0 || N <= 0 || static_cast<long>(m.size()) != K) throw ModelError("matrix must have K rows");
  for (const auto& row : m)
    if (static_cast<long>(row.size()) != N) throw ModelError("matrix rows must have N entries");
  if (matrix_rank(m) != K) throw ModelError("matrix rank is not K");
  if (static_cast<long>(omega.size()) != K) throw ModelError("omega must have K entries");
  if (static_cast<long>(Lambda.size()) != N) throw ModelError("need one Lambda class per coordinate");
  if (!base_ring || !im_ring) throw ModelError("rings not set");
  for (const auto& l : Lambda) {
    if (l.ring() && !l.ring()->same_as(*base_ring)) throw ModelError("Lambda class in wrong ring");
    for (const auto& [mono, c] : l.terms())
      if (total_degree(mono) > 1) throw ModelError("Lambda classes must have degree <= 1 in the base generators");
  }
  if (im_ring->names != base_ring->names) throw ModelError("im ring must share base generators");
  for (std::size_t i = 0; i < im_ring->caps.size(); ++i)
    if (im_ring->caps[i] > base_ring->caps[i]) throw ModelError("im ring caps exceed base caps");
  if (static_cast<long>(alpha.size()) != K) throw ModelError("alpha must be a K-subset");
  if (!std::is_sorted(alpha.begin(), alpha.end()) ||
      std::adjacent_find(alpha.begin(), alpha.end()) != alpha.end())
    throw ModelError("alpha must be sorted and distinct");
  for (unsigned j : alpha)
    if (static_cast<long>(j) >= N) throw ModelError("alpha index out of range");
  auto fps = fixed_points(*this);
  if (std::find(fps.begin(), fps.end(), alpha) == fps.end()) throw ModelError("alpha is not a fixed point");
  for (const auto& l : L) {
    if (!l.degree0().is_zero()) throw ModelError("L must be a non-equivariant degree-2 class");
    for (const auto& [mono, c] : l.terms()) {
      if (total_degree(mono) != 1) throw ModelError("L must be of degree 1 in the base generators");
      if (!c.is_constant()) throw ModelError("L coefficients must be rational");
      // Mori generators of a product of projective spaces are the lines in each factor.
      if (c.constant_value() < 0) throw ModelError("L is not convex: negative pairing with a Mori generator");
    }
  }
  if (mode == BlowupMode::AlongDivisor && L.size() != 1)
    throw ModelError("blowup along alpha(A) needs exactly one divisor bundle");
}

std::vector<std::vector<unsigned>> fixed_points(const FibrationModel& model) {
  std::vector<std::vector<unsigned>> subsets, out;
  std::vector<unsigned> cur;
  k_subsets(static_cast<unsigned>(model.N), static_cast<unsigned>(model.K), 0, cur, subsets);
  for (const auto& J : subsets) {
    std::vector<std::vector<Rational>> inv;
    try {
      inv = rational_inverse(column_block(model.m, J));
    } catch (const SingularMatrixError&) {
      continue;
    }
    bool positive = true;
    for (std::size_t r = 0; r < J.size(); ++r) {
      Rational x = 0;
      for (std::size_t c = 0; c < J.size(); ++c) x += inv[r][c] * model.omega[c];
      if (x == 0) throw DegenerateMomentError("moment value lies on a wall for subset " + set_text(J));
      if (x < 0) positive = false;
    }
    if (positive) out.push_back(J);
  }
  return out;
}

std::string Stratum::name() const {
  switch (kind) {
    case StratumKind::Section: return set_text(fixed);
    case StratumKind::AlphaTilde: return "alpha~" + set_text(fixed);
    case StratumKind::Exceptional: return "(alpha," + std::to_string(jplus + 1) + ")";
    case StratumKind::ExceptionalL: return "(alpha,[1,0])";
  }
  return "?";
}

std::vector<std::pair<std::size_t, std::size_t>> edges(const FibrationModel& model) {
  auto fps = fixed_points(model);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < fps.size(); ++a)
    for (std::size_t b = a + 1; b < fps.size(); ++b) {
      std::vector<unsigned> common;
      std::set_intersection(fps[a].begin(), fps[a].end(), fps[b].begin(), fps[b].end(),
                            std::back_inserter(common));
      if (static_cast<long>(common.size()) == model.K - 1) out.emplace_back(a, b);
    }
  return out;
}

namespace {

// Coordinates j_+ with beta ~ alpha, paired with the neighbor.
std::vector<std::pair<unsigned, std::vector<unsigned>>> alpha_neighbors(const FibrationModel& model) {
  auto fps = fixed_points(model);
  std::vector<std::pair<unsigned, std::vector<unsigned>>> out;
  for (const auto& [a, b] : edges(model)) {
    const std::vector<unsigned>* other = nullptr;
    if (fps[a] == model.alpha) other = &fps[b];
    else if (fps[b] == model.alpha) other = &fps[a];
    if (!other) continue;
    for (unsigned j : *other)
      if (!contains(model.alpha, j)) out.emplace_back(j, *other);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Stratum> strata(const FibrationModel& model) {
  std::vector<Stratum> out;
  for (const auto& J : fixed_points(model)) {
    Stratum s;
    s.fixed = J;
    s.ring = model.base_ring;
    if (J == model.alpha && model.mode != BlowupMode::None) {
      if (model.mode == BlowupMode::AlongSection) continue;
      s.kind = StratumKind::AlphaTilde;
    }
    out.push_back(s);
  }
  if (model.mode == BlowupMode::None) return out;
  for (const auto& [j, beta] : alpha_neighbors(model)) {
    Stratum s;
    s.kind = StratumKind::Exceptional;
    s.fixed = model.alpha;
    s.jplus = static_cast<int>(j);
    s.ring = model.im_ring;
    out.push_back(s);
  }
  if (model.mode == BlowupMode::AlongDivisor) {
    Stratum s;
    s.kind = StratumKind::ExceptionalL;
    s.fixed = model.alpha;
    s.ring = model.im_ring;
    out.push_back(s);
  }
  return out;
}

std::vector<CohClass> section_P(const FibrationModel& model, const std::vector<unsigned>& J) {
  // Solve sum_i m_ij P_i = Lambda_j for j in J.
  auto block = column_block(model.m, J);  // K x K, rows i, columns j
  std::vector<std::vector<Rational>> bt(J.size(), std::vector<Rational>(J.size()));
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t c = 0; c < J.size(); ++c) bt[c][i] = block[i][c];
  std::vector<std::vector<Rational>> inv;
  try {
    inv = rational_inverse(bt);
  } catch (const SingularMatrixError&) {
    throw ModelError("singular matrix block for subset " + set_text(J));
  }
  std::vector<CohClass> P;
  for (std::size_t i = 0; i < J.size(); ++i) {
    CohClass v(model.base_ring);
    for (std::size_t c = 0; c < J.size(); ++c) v += model.Lambda[J[c]] * Scalar(inv[i][c]);
    P.push_back(v);
  }
  return P;
}

Restriction stratum_restrictions(const FibrationModel& model, const Stratum& eps) {
  Restriction r;
  const Ring& ring = eps.ring;
  std::vector<CohClass> P = section_P(model, eps.fixed);
  for (auto& p : P) r.P.push_back(p.map_to(ring));
  for (long j = 0; j < model.N; ++j) {
    CohClass u(ring);
    for (long i = 0; i < model.K; ++i) u += r.P[i] * Scalar(model.m[i][j]);
    u -= model.Lambda[j].map_to(ring);
    r.U.push_back(u);
  }
  r.c1L = model.L.empty() || model.mode != BlowupMode::AlongDivisor ? CohClass(ring)
                                                                     : model.c1L().map_to(ring);
  if (eps.is_section()) {
    r.Pt = CohClass(ring);
    r.euler = CohClass(ring, Scalar(1));
    for (long j = 0; j < model.N; ++j)
      if (!contains(eps.fixed, static_cast<unsigned>(j))) r.euler = r.euler * r.U[j];
    r.Pt_geometric = r.Pt;
    r.euler_geometric = r.euler;
    if (eps.kind == StratumKind::AlphaTilde) {
      r.Pt_geometric = -r.c1L;
      r.euler_geometric = CohClass(ring, Scalar(1));
      for (long j = 0; j < model.N; ++j)
        if (!contains(eps.fixed, static_cast<unsigned>(j))) r.euler_geometric = r.euler_geometric * (r.U[j] - r.c1L);
    }
    return r;
  }
  const bool withL = model.mode == BlowupMode::AlongDivisor;
  r.Pt = eps.kind == StratumKind::Exceptional ? -r.U[eps.jplus] : -r.c1L;
  r.UA.assign(model.N + 1, CohClass(ring));
  for (long j = 0; j < model.N; ++j)
    if (!contains(model.alpha, static_cast<unsigned>(j))) r.UA[j] = r.Pt + r.U[j];
  if (withL) r.UA[model.N] = r.Pt + r.c1L;
  CohClass e = eps.kind == StratumKind::Exceptional ? -r.Pt : CohClass(ring, Scalar(1));
  for (long j = 0; j < model.N; ++j) {
    if (contains(model.alpha, static_cast<unsigned>(j))) continue;
    if (eps.kind == StratumKind::Exceptional && j == eps.jplus) continue;
    e = e * r.UA[j];
  }
  if (withL && eps.kind == StratumKind::Exceptional) e = e * r.UA[model.N];
  r.euler = e;
  r.component = eps.kind == StratumKind::Exceptional;
  r.Pt_geometric = r.Pt;
  r.euler_geometric = e;
  return r;
}

CohClass LinearClass::restrict_to(const Restriction& r, const Ring& ring) const {
  CohClass v = base.is_zero() ? CohClass(ring) : base.map_to(ring);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) v += r.P[i] * Scalar(p[i]);
  if (pt != 0) v += r.Pt * Scalar(pt);
  return v;
}

Rational LinearClass::pairing(const std::vector<long>& D, const std::vector<long>& d, long dt) const {
  Rational s = base.pairing(D);
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * Rational(d[i]);
  return s + pt * Rational(dt);
}

LinearClass U_class(const FibrationModel& model, unsigned j) {
  LinearClass u;
  for (long i = 0; i < model.K; ++i) u.p.push_back(Rational(model.m[i][j]));
  u.base = -model.Lambda[j];
  return u;
}

std::string family_tag(EdgeFamily f) {
  switch (f) {
    case EdgeFamily::SectionSection: return "2.bb";
    case EdgeFamily::ExceptionalSection: return "2.ab";
    case EdgeFamily::ExceptionalExceptional: return "2.aa";
  }
  return "?";
}

std::vector<EdgeData> blowup_edges(const FibrationModel& model, const std::vector<Stratum>& st) {
  std::vector<Restriction> res;
  for (const auto& s : st) res.push_back(stratum_restrictions(model, s));
  auto degree = [&](std::size_t a, std::size_t b, const CohClass& chi, EdgeData& e) {
    const Ring& ring = st[a].ring;
    for (long i = 0; i < model.K; ++i) {
      CohClass diff = res[a].P[i] - res[b].P[i].map_to(ring);
      e.d.push_back(integral(constant_ratio(diff, chi, "edge degree"), "edge degree"));
    }
    CohClass dpt = res[a].Pt - res[b].Pt.map_to(ring);
    e.dt = integral(constant_ratio(dpt, chi, "P~ pairing on edge"), "P~ pairing on edge");
  };
  std::vector<EdgeData> out;
  for (std::size_t a = 0; a < st.size(); ++a) {
    for (std::size_t b = 0; b < st.size(); ++b) {
      if (a == b) continue;
      const Stratum& A = st[a];
      const Stratum& B = st[b];
      EdgeData e;
      e.from = a;
      e.to = b;
      if (A.is_section() && B.is_section()) {
        std::vector<unsigned> common;
        std::set_intersection(A.fixed.begin(), A.fixed.end(), B.fixed.begin(), B.fixed.end(),
                              std::back_inserter(common));
        if (static_cast<long>(common.size()) != model.K - 1) continue;
        unsigned jp = 0;
        for (unsigned j : B.fixed)
          if (!contains(A.fixed, j)) jp = j;
        e.family = EdgeFamily::SectionSection;
        e.chi = res[a].U[jp];
      } else if (A.kind == StratumKind::Exceptional && B.is_section() && B.kind != StratumKind::AlphaTilde) {
        if (!contains(B.fixed, static_cast<unsigned>(A.jplus))) continue;
        std::vector<unsigned> common;
        std::set_intersection(A.fixed.begin(), A.fixed.end(), B.fixed.begin(), B.fixed.end(),
                              std::back_inserter(common));
        if (static_cast<long>(common.size()) != model.K - 1) continue;
        e.family = EdgeFamily::ExceptionalSection;
        e.chi = res[a].U[A.jplus];
      } else if (A.over_A() && B.over_A()) {
        auto alphaU = [&](const Stratum& s, const Restriction& r) {
          return s.kind == StratumKind::Exceptional ? r.U[s.jplus] : r.c1L;
        };
        e.family = EdgeFamily::ExceptionalExceptional;
        e.chi = -alphaU(A, res[a]) + alphaU(B, res[a]);
      } else {
        continue;
      }
      degree(a, b, e.chi, e);
      out.push_back(std::move(e));
    }
  }
  return out;
}

bool Inequality::holds(const std::vector<long>& d, long dt) const {
  long s = b * dt;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * d[i];
  return s >= 0;
}

std::string Inequality::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](long c, const std::string& v) {
    if (c == 0) return;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    long ac = c < 0 ? -c : c;
    if (ac != 1) os << ac << "*";
    os << v;
    first = false;
  };
  for (std::size_t i = 0; i < a.size(); ++i) term(a[i], "d" + std::to_string(i + 1));
  term(b, "dt");
  if (first) os << "0";
  os << " >= 0";
  return os.str();
}

std::vector<Inequality> mori_support(const FibrationModel& model, const Stratum& eps) {
  auto U = [&](unsigned j, long b) {
    Inequality q;
    for (long i = 0; i < model.K; ++i) q.a.push_back(model.m[i][j]);
    q.b = b;
    return q;
  };
  std::vector<Inequality> out;
  const auto& alpha = model.alpha;
  if (model.mode == BlowupMode::None) {
    for (unsigned j : eps.fixed) out.push_back(U(j, 0));
    return out;
  }
  switch (eps.kind) {
    case StratumKind::Section: {
      Inequality q;
      q.a.assign(model.K, 0);
      q.b = -1;
      out.push_back(q);
      for (unsigned j : eps.fixed) out.push_back(U(j, contains(alpha, j) ? 0 : 1));
      break;
    }
    case StratumKind::AlphaTilde: {
      for (unsigned j : alpha) out.push_back(U(j, 0));
      Inequality q;
      q.a.assign(model.K, 0);
      q.b = -1;
      out.push_back(q);
      break;
    }
    case StratumKind::Exceptional:
      out.push_back(U(static_cast<unsigned>(eps.jplus), 1));
      for (unsigned j : alpha) out.push_back(U(j, 0));
      break;
    case StratumKind::ExceptionalL: {
      for (unsigned j : alpha) out.push_back(U(j, 0));
      Inequality q;
      q.a.assign(model.K, 0);
      q.b = 1;
      out.push_back(q);
      break;
    }
  }
  return out;
}

IntMatrix gale_dual(const IntMatrix& rays) {
  if (rays.empty()) throw ModelError("no rays");
  const std::size_t n = rays[0].size();
  if (static_cast<std::size_t>(matrix_rank(rays)) != n) throw ModelError("rays do not span their ambient space");
  return integer_left_kernel(rays);
}

IntMatrix rays_from_matrix(const IntMatrix& m) {
  // Columns of an integer kernel basis of m, one row per coordinate.
  IntMatrix ker = integer_left_kernel(transpose(m));
  return transpose(ker);
}

IntMatrix blowup_matrix(const IntMatrix& m, const std::vector<Rational>& omega,
                        const std::vector<unsigned>& center) {
  if (m.empty()) throw ModelError("empty matrix");
  const std::size_t N = m[0].size();
  if (center.empty()) throw ModelError("invalid center: empty");
  for (unsigned j : center)
    if (j >= N) throw ModelError("invalid center: index out of range");
  FibrationModel probe;
  probe.K = static_cast<long>(m.size());
  probe.N = static_cast<long>(N);
  probe.m = m;
  probe.omega = omega;
  bool cone = false;
  for (const auto& J : fixed_points(probe)) {
    bool disjoint = true;
    for (unsigned j : center) disjoint = disjoint && !contains(J, j);
    cone = cone || disjoint;
  }
  if (!cone) throw ModelError("invalid center: the rays do not span a cone of the fan");

  IntMatrix rays = rays_from_matrix(m);
  IntRow vnew(rays[0].size(), 0);
  for (unsigned j : center)
    for (std::size_t c = 0; c < vnew.size(); ++c) vnew[c] += rays[j][c];
  IntMatrix newrays = rays;
  newrays.push_back(vnew);

  IntMatrix out;
  for (const auto& row : m) {
    IntRow r = row;
    r.push_back(0);
    out.push_back(r);
  }
  IntRow last(N + 1, 0);
  for (unsigned j : center) last[j] = 1;
  last[N] = -1;
  out.push_back(last);
  if (same_row_lattice(m, gale_dual(rays)) && !same_row_lattice(out, gale_dual(newrays)))
    throw std::logic_error("star subdivision does not match the Gale dual of the new fan");
  return out;
}

std::vector<long> c1_row_sums(const IntMatrix& m) {
  std::vector<long> s;
  for (const auto& row : m) {
    long t = 0;
    for (long v : row) t += v;
    s.push_back(t);
  }
  return s;
}

}  // namespace bmir
