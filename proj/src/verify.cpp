#include "bmir/verify.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace bmir {

namespace {

std::vector<std::vector<long>> fiber_box(long K, long dmax) {
  std::vector<std::vector<long>> ds{{}};
  for (long i = 0; i < K; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& p : ds)
      for (long v = -dmax; v <= dmax; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    ds = std::move(next);
  }
  return ds;
}

std::vector<Degree> degree_box(const FibrationModel& model, const SeriesBounds& b) {
  std::vector<Degree> out;
  long dtmax = model.mode == BlowupMode::None ? 0 : b.dtmax;
  for (const auto& D : iota_order(b.Dmax))
    for (const auto& d : fiber_box(model.K, b.dmax))
      for (long dt = -dtmax; dt <= dtmax; ++dt) out.push_back(Degree{D, d, dt});
  return out;
}

long to_long(const Rational& q) {
  if (q.get_den() != 1) throw ModelError("non-integral pairing on an edge");
  return q.get_num().get_si();
}

}  // namespace

const EdgeData& find_edge(const IAssembler& I, std::size_t from, std::size_t to) {
  for (const auto& e : I.edges())
    if (e.from == from && e.to == to) return e;
  throw EdgeError("strata " + std::to_string(from) + " and " + std::to_string(to) + " are not joined by an edge");
}

std::optional<CohClass> CoeffResult::value() const {
  if (!denominator.is_invertible()) return std::nullopt;
  return numerator * denominator.inverse();
}

CoeffResult recursion_coeff(const IAssembler& I, const EdgeData& e, long k) {
  if (k < 1) throw std::invalid_argument("multiplicity must be positive");
  const Ring& ring = I.strata()[e.from].ring;
  const Restriction& r = I.restrictions()[e.from];
  const Restriction& r2 = I.restrictions()[e.to];
  const Ring& ring2 = I.strata()[e.to].ring;
  CoeffResult out;
  out.numerator = CohClass(ring, Scalar(1));
  out.denominator = CohClass(ring, Scalar(1));
  std::vector<long> zeroD(I.model().base_rank(), 0);
  int zeros = 0;
  for (const auto& f : I.families()) {
    CohClass Fe = f.F.restrict_to(r, ring);
    long n = k * to_long(f.F.pairing(zeroD, e.d, e.dt));
    if (n >= 0) {
      for (long m = 1; m <= n; ++m) {
        CohClass factor = Fe - e.chi * Scalar(Rational(m, k));
        if (factor.is_zero()) {
          ++zeros;
          continue;
        }
        out.numerator = out.numerator * factor;
      }
    } else {
      for (long m = n + 1; m <= 0; ++m) out.denominator = out.denominator * (Fe - e.chi * Scalar(Rational(m, k)));
      CohClass F2 = f.F.restrict_to(r2, ring2).map_to(ring);
      for (long m = 1; m <= -n; ++m) out.shifted.emplace_back(F2, m);
    }
  }
  if (zeros != 1) {
    out.degenerate = true;
    out.note = std::to_string(zeros) + " vanishing factors, expected exactly the pole factor";
  } else if (!out.numerator.is_invertible()) {
    out.degenerate = true;
    out.note = "coefficient numerator is not invertible";
  }
  return out;
}

RecursionCheckReport check_recursion(const IAssembler& I, const EdgeData& e, long k, const SeriesBounds& bounds) {
  RecursionCheckReport rep;
  rep.from = I.strata()[e.from].name();
  rep.to = I.strata()[e.to].name();
  rep.family = family_tag(e.family);
  rep.k = k;
  const Ring& ring = I.strata()[e.from].ring;
  CohClass z0 = -(e.chi * Scalar(Rational(1, k)));
  CoeffResult co = recursion_coeff(I, e, k);
  CohClass shifted_value(ring, Scalar(1));
  for (const auto& [c, m] : co.shifted) shifted_value = shifted_value * (c + z0 * Scalar(m));
  bool consistent = shifted_value == co.denominator;
  for (const auto& g : degree_box(I.model(), bounds)) {
    Verdict v;
    v.degree = g;
    try {
      ZRat lf = I.term(e.from, g);
      CohClass lhs = lf.is_zero() ? CohClass(ring) : residue_at(lf, e.chi, k);
      auto [dg, dtg] = I.global_degree(e.from, g);
      for (std::size_t i = 0; i < dg.size(); ++i) dg[i] -= k * e.d[i];
      dtg -= k * e.dt;
      Degree g2 = I.relative_degree(e.to, g.D, dg, dtg);
      ZRat rf = I.term(e.to, g2).map_to(ring);
      // rhs * denominator, with the shifted factors cancelled against the poles of rf before evaluating
      for (const auto& [c, m] : co.shifted) rf.mul_linear(c, Rational(m));
      CohClass rr = rf.is_zero() ? CohClass(ring) : rf.evaluate(z0);
      if (!consistent) {
        v.note = "shifted factors do not reproduce the coefficient denominator";
      } else if (co.degenerate && !(lhs.is_zero() && rr.is_zero())) {
        v.degenerate = true;
        v.note = co.note;
      } else {
        CohClass l = lhs * co.numerator;
        v.equal = l == rr;
        v.lhs = l.to_string();
        v.rhs = rr.to_string();
      }
    } catch (const PoleOrderError& ex) {
      v.degenerate = true;
      v.note = ex.what();
    } catch (const DegenerateCollisionError& ex) {
      v.degenerate = true;
      v.note = ex.what();
    } catch (const NotInvertibleError& ex) {
      v.degenerate = true;
      v.note = ex.what();
    }
    if (v.degenerate) {
      ++rep.degenerate;
    } else if (!v.equal) {
      rep.pass = false;
    }
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

SupportReport check_support(const IAssembler& I, std::size_t s, const NovikovSeries& series) {
  SupportReport rep;
  const Stratum& st = I.strata()[s];
  rep.stratum = st.name();
  rep.extension = st.kind == StratumKind::AlphaTilde;
  auto ineq = mori_support(I.model(), st);
  for (const auto& [g, v] : series.terms()) {
    for (const auto& q : ineq) {
      if (q.holds(g.d, g.dt)) continue;
      rep.pass = false;
      rep.violations.push_back(g.to_string() + " violates " + q.to_string());
    }
  }
  return rep;
}

StringDivisorReport check_string_divisor(const JFunction& J, int order) {
  StringDivisorReport rep;
  const Ring& ring = J.ring;
  ZRat z = ZRat::z_power(ring, 1);
  std::vector<long> zero(J.dims.size(), 0);
  auto it0 = J.terms.find(zero);
  if (it0 == J.terms.end() || it0->second != z) {
    rep.pass = false;
    rep.failures.push_back("degree 0 term is not z");
  }
  auto fail = [&](const BaseDegree& D, const std::string& what) {
    rep.pass = false;
    std::string t = "D=(";
    for (std::size_t i = 0; i < D.size(); ++i) t += (i ? "," : "") + std::to_string(D[i]);
    rep.failures.push_back(t + ") " + what);
  };
  for (const auto& [D, JD] : J.terms) {
    // string: F(t0) = e^{t0/z} J^D, so z F' = F coefficientwise
    {
      std::vector<ZRat> c{JD};
      for (int a = 1; a <= order; ++a) c.push_back(c.back() * ZRat::z_power(ring, -1) * ZRat(ring, CohClass(ring, Scalar(Rational(1, a)))));
      for (int a = 0; a < order; ++a)
        if (z * c[a + 1] * ZRat(ring, CohClass(ring, Scalar(a + 1))) != c[a]) fail(D, "string equation");
    }
    auto ex = J.exponent.find(D);
    if (ex == J.exponent.end() || ex->second.size() != J.dims.size()) {
      fail(D, "missing degree exponent");
      continue;
    }
    for (std::size_t i = 0; i < J.dims.size(); ++i) {
      // F(t) = e^{t(prefactor_i / z + exponent_i)} J^D, expanded to t^order
      ZRat step = ZRat(ring, J.prefactor[i]) * ZRat::z_power(ring, -1) +
                  ZRat(ring, CohClass(ring, Scalar(ex->second[i])));
      std::vector<ZRat> c{JD};
      for (int a = 1; a <= order; ++a)
        c.push_back(c.back() * step * ZRat(ring, CohClass(ring, Scalar(Rational(1, a)))));
      ZRat rho = ZRat(ring, CohClass::gen(ring, static_cast<unsigned>(i))) +
                 ZRat(ring, CohClass(ring, Scalar(D[i]))) * z;
      for (int a = 0; a < order; ++a)
        if (z * c[a + 1] * ZRat(ring, CohClass(ring, Scalar(a + 1))) != rho * c[a])
          fail(D, "divisor equation for H" + std::to_string(i + 1) + " at t^" + std::to_string(a));
    }
  }
  return rep;
}

long total_dimension(const FibrationModel& model) {
  long b = std::accumulate(model.base_dims.begin(), model.base_dims.end(), 0L);
  return b + model.N - model.K;
}

LocalizationReport atiyah_bott_integrate(const IAssembler& I, const Integrand& f, const std::string& description) {
  const FibrationModel& model = I.model();
  LocalizationReport rep;
  rep.description = description;
  auto integrate = [&](const Stratum& st, const CohClass& y) -> Scalar {
    if (st.over_A() && model.mode == BlowupMode::AlongDivisor) {
      CohClass lifted(model.base_ring);
      for (const auto& [mono, c] : y.terms()) lifted += CohClass::monomial(model.base_ring, mono, c);
      return (lifted * model.c1L()).top_coeff();
    }
    return y.top_coeff();
  };
  for (std::size_t s = 0; s < I.strata().size(); ++s) {
    const Stratum& st = I.strata()[s];
    const Restriction& r = I.restrictions()[s];
    if (r.component) {
      if (!r.euler_geometric.is_invertible()) throw WeightDegeneracyError("normal bundle weights vanish at " + st.name());
      Scalar c = integrate(st, f(st, r, true) * r.euler_geometric.inverse());
      rep.contributions.emplace_back(st.name(), c);
      rep.total += c;
    }
    if (!r.euler.is_invertible()) throw WeightDegeneracyError("normal bundle weights vanish at " + st.name());
    Scalar c = integrate(st, f(st, r, false) * r.euler.inverse());
    rep.table_contributions.emplace_back(st.name(), c);
    rep.table_total += c;
  }
  rep.polynomial = rep.total.den().is_constant();
  return rep;
}

HtPropositionReport check_ht_proposition(unsigned n, long l, long Dmax, PoleSource source) {
  HtPropositionReport rep;
  rep.n = n;
  rep.l = l;
  if (static_cast<long>(n) + 1 - l < 0) {
    rep.status = "skipped";
    rep.reason = "c1(TB) - c1(L) is negative";
    return rep;
  }
  JFunction J = j_projective({n}, {Dmax});
  JFunction T = quantum_lefschetz_twist(J, {CohClass::gen(J.ring, 0) * Scalar(l)});
  HtOptions o;
  o.sublattice = multiples_of(l);
  o.source = source;
  o.im_ring = default_im_ring({n});
  HtTable h = ht_function(T, o);
  bool ok = true;
  for (long D = 1; D <= Dmax; ++D) {
    rep.computed[D] = h.ht.at({D});
    rep.expected[D] = (static_cast<long>(n) + 1 - l) * D + (static_cast<long>(n) - 1);
    ok = ok && rep.computed[D] == rep.expected[D];
  }
  rep.status = ok ? "pass" : "fail";
  return rep;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

FibrationModel specialize_model(const FibrationModel& model, const std::vector<Rational>& point) {
  FibrationModel out = model;
  for (auto& l : out.Lambda) l = l.specialize(point);
  return out;
}

std::vector<Rational> prime_point(std::size_t count, std::size_t attempt) {
  std::vector<long> primes;
  for (long p = 2; primes.size() < count * (attempt + 1) + 1; ++p) {
    bool prime = true;
    for (long q : primes)
      if (q * q > p) break;
      else if (p % q == 0) prime = false;
    if (prime) primes.push_back(p);
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(primes[attempt * count + i]);
  return out;
}

}  // namespace bmir
