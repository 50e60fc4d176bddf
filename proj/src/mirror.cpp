#include "bmir/mirror.hpp"

#include <algorithm>
#include <numeric>

namespace bmir {

namespace {

long to_long(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw ModelError(std::string("non-integral ") + what);
  return q.get_num().get_si();
}

CohClass one(const Ring& r) { return CohClass(r, Scalar(1)); }

}  // namespace

const ZRat& JFunction::at(const BaseDegree& D) const {
  auto it = terms.find(D);
  if (it == terms.end()) throw std::out_of_range("J-function degree outside the computed range");
  return it->second;
}

std::vector<BaseDegree> iota_order(const std::vector<long>& Dmax) {
  std::vector<BaseDegree> all;
  BaseDegree cur(Dmax.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == Dmax.size()) {
      all.push_back(cur);
      return;
    }
    for (long v = 0; v <= Dmax[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::stable_sort(all.begin(), all.end(), [](const BaseDegree& a, const BaseDegree& b) {
    long ta = std::accumulate(a.begin(), a.end(), 0L), tb = std::accumulate(b.begin(), b.end(), 0L);
    if (ta != tb) return ta < tb;
    return a > b;
  });
  return all;
}

JFunction j_projective(const std::vector<unsigned>& dims, const std::vector<long>& Dmax) {
  if (dims.size() != Dmax.size()) throw std::invalid_argument("one degree bound per projective factor");
  JFunction J;
  J.ring = make_ring(dims);
  J.dims = dims;
  J.Dmax = Dmax;
  for (unsigned i = 0; i < dims.size(); ++i) J.prefactor.push_back(CohClass::gen(J.ring, i));
  for (const auto& D : iota_order(Dmax)) {
    J.exponent[D] = D;
    auto it = std::find_if(D.begin(), D.end(), [](long v) { return v > 0; });
    if (it == D.end()) {
      J.terms[D] = ZRat::z_power(J.ring, 1);
      continue;
    }
    // J^D = J^{D - e_i} / (H_i + D_i z)^{n_i + 1}
    std::size_t i = static_cast<std::size_t>(it - D.begin());
    BaseDegree prev = D;
    prev[i] -= 1;
    ZRat v = J.terms.at(prev);
    CohClass H = CohClass::gen(J.ring, static_cast<unsigned>(i));
    for (unsigned k = 0; k <= dims[i]; ++k) v.div_linear(H, Rational(D[i]));
    J.terms[D] = std::move(v);
  }
  return J;
}

JFunction quantum_lefschetz_twist(const JFunction& J, const std::vector<CohClass>& L) {
  for (const auto& l : L)
    for (const auto& [mono, c] : l.terms())
      if (total_degree(mono) != 1 || !c.is_constant() || c.constant_value() < 0)
        throw ConvexityError("L is not convex: negative pairing with a Mori generator");
  JFunction out = J;
  for (const auto& l : L) {
    std::vector<ZRat> prefix{ZRat(J.ring, one(J.ring))};
    for (auto& [D, v] : out.terms) {
      long n = to_long(l.pairing(D), "pairing of L");
      while (static_cast<long>(prefix.size()) <= n) {
        ZRat next = prefix.back();
        next.mul_linear(l, Rational(static_cast<long>(prefix.size())));
        prefix.push_back(std::move(next));
      }
      v *= prefix[n];
    }
  }
  return out;
}

DegreePredicate multiples_of(long step) {
  return [step](const BaseDegree& D) {
    return std::all_of(D.begin(), D.end(), [step](long v) { return v % step == 0; });
  };
}

std::map<BaseDegree, ZRat> restrict_to_sublattice(const std::map<BaseDegree, ZRat>& series,
                                                  const DegreePredicate& keep) {
  std::map<BaseDegree, ZRat> out;
  for (const auto& [D, v] : series)
    if (!keep || keep(D)) out.emplace(D, v);
  return out;
}

std::map<BaseDegree, ZRat> b_series(const JFunction& twisted, const Ring& target) {
  std::map<BaseDegree, ZRat> out;
  ZRat zinv = ZRat::z_power(twisted.ring, -1);
  for (const auto& [D, v] : twisted.terms) out.emplace(D, (v * zinv).map_to(target));
  return out;
}

HtTable ht_function(const JFunction& twisted, const HtOptions& opts) {
  if (!twisted.div_str_primary) throw PreconditionError("ht needs a J-function satisfying the divisor equation");
  Ring ring = opts.im_ring ? opts.im_ring : twisted.ring;
  HtTable t;
  t.order = iota_order(twisted.Dmax);
  t.B = b_series(twisted, ring);
  BaseDegree zero(twisted.Dmax.size(), 0);
  ZRat unit(ring, one(ring));
  if (t.B.at(zero) != unit) throw NormalizationError("degree-0 term of the twisted series is not 1");
  t.A = restrict_to_sublattice(t.B, opts.sublattice);
  t.C[zero] = unit;
  long running = 0;
  for (const auto& D : t.order) {
    if (D == zero) continue;
    ZRat c = t.B.at(D);
    for (const auto& [Dp, a] : t.A) {
      if (Dp == zero) continue;
      BaseDegree rest(D.size());
      bool le = true;
      for (std::size_t i = 0; i < D.size(); ++i) {
        rest[i] = D[i] - Dp[i];
        le = le && rest[i] >= 0;
      }
      if (!le) continue;
      c -= a * t.C.at(rest);
    }
    t.C[D] = c;
    const ZRat& src = opts.source == PoleSource::C ? c : t.B.at(D);
    std::optional<int> d;
    if (!src.is_zero()) d = src.pole_order_at_zero();
    t.pole_order[D] = d;
    if (d) running = std::max<long>(running, *d);
    t.ht[D] = running;
  }
  return t;
}

ZRat gamma_assemble(const std::vector<const std::map<BaseDegree, ZRat>*>& inputs,
                    const std::vector<CohClass>& L, const BaseDegree& D, const Ring& ring) {
  ZRat total(ring);
  for (std::size_t a = 0; a < inputs.size() && a < L.size(); ++a) {
    if (!inputs[a]) continue;
    auto it = inputs[a]->find(D);
    if (it == inputs[a]->end() || it->second.is_zero()) continue;
    ZRat term = it->second;
    for (std::size_t b = 0; b < L.size(); ++b)
      if (b != a) term *= gamma_product(L[b].map_to(ring), to_long(L[b].pairing(D), "pairing of L"));
    total += term;
  }
  return total;
}

std::vector<Family> i_function_families(const FibrationModel& model) {
  std::vector<Family> out;
  auto contains = [&](unsigned j) { return std::find(model.alpha.begin(), model.alpha.end(), j) != model.alpha.end(); };
  for (long j = 0; j < model.N; ++j) {
    Family f{U_class(model, static_cast<unsigned>(j)), "U" + std::to_string(j + 1)};
    if (model.mode != BlowupMode::None && !contains(static_cast<unsigned>(j))) {
      f.F.pt = 1;
      f.label += "+Pt";
    }
    out.push_back(f);
  }
  if (model.mode == BlowupMode::None) return out;
  Family neg;
  neg.F.p.assign(model.K, Rational(0));
  neg.F.pt = -1;
  neg.F.base = CohClass(model.base_ring);
  neg.label = "-Pt";
  out.push_back(neg);
  if (model.mode == BlowupMode::AlongDivisor) {
    Family l;
    l.F.p.assign(model.K, Rational(0));
    l.F.pt = 1;
    l.F.base = model.c1L();
    l.label = "c1L+Pt";
    out.push_back(l);
  }
  return out;
}

IAssembler::IAssembler(const FibrationModel& model, IFunctionInput input)
    : model_(model), input_(std::move(input)) {
  strata_ = bmir::strata(model_);
  for (const auto& s : strata_) res_.push_back(stratum_restrictions(model_, s));
  families_ = i_function_families(model_);
  edges_ = blowup_edges(model_, strata_);
}

std::pair<std::vector<long>, long> IAssembler::global_degree(std::size_t s, const Degree& rel) const {
  const Restriction& r = res_[s];
  std::vector<long> d(rel.d.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = to_long(r.P[i].pairing(rel.D), "section degree") + rel.d[i];
  long dt = to_long(r.Pt.pairing(rel.D), "exceptional degree") + rel.dt;
  return {d, dt};
}

Degree IAssembler::relative_degree(std::size_t s, const BaseDegree& D, const std::vector<long>& d, long dt) const {
  const Restriction& r = res_[s];
  Degree g;
  g.D = D;
  g.d.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g.d[i] = d[i] - to_long(r.P[i].pairing(D), "section degree");
  g.dt = dt - to_long(r.Pt.pairing(D), "exceptional degree");
  return g;
}

ZRat IAssembler::term(std::size_t s, const Degree& rel) const {
  const Ring& ring = strata_[s].ring;
  const Restriction& r = res_[s];
  auto [d, dt] = global_degree(s, rel);
  ZRat v = input_.J.at(rel.D).map_to(ring);
  if (model_.mode == BlowupMode::AlongDivisor) {
    v *= ZRat::z_power(ring, static_cast<int>(input_.ht));
    v *= gamma_product(r.c1L, to_long(model_.c1L().pairing(rel.D), "pairing of L"));
    auto it = input_.gamma.find(rel.D);
    if (it != input_.gamma.end()) v += it->second.map_to(ring);
  }
  for (const auto& f : families_) {
    if (v.is_zero()) break;
    long n = to_long(f.F.pairing(rel.D, d, dt), "family degree");
    v *= inverse_gamma_product(f.F.restrict_to(r, ring), n);
  }
  return v;
}

NovikovSeries IAssembler::pullback(std::size_t s, const SeriesBounds& bounds) const {
  NovikovSeries out(strata_[s].ring, bounds);
  long dtmax = model_.mode == BlowupMode::None ? 0 : bounds.dtmax;
  std::vector<BaseDegree> Ds = iota_order(bounds.Dmax);
  std::vector<std::vector<long>> ds{{}};
  for (long i = 0; i < model_.K; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& p : ds)
      for (long v = -bounds.dmax; v <= bounds.dmax; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    ds = std::move(next);
  }
  for (const auto& D : Ds)
    for (const auto& d : ds)
      for (long dt = -dtmax; dt <= dtmax; ++dt) {
        Degree g{D, d, dt};
        ZRat v = term(s, g);
        if (v.is_zero()) continue;
        if (strata_[s].kind == StratumKind::AlphaTilde && dt == -dtmax) out.extension_truncated = true;
        out.set(g, v);
      }
  return out;
}

}  // namespace bmir
