#include "doctest.h"

#include "bmir/mirror.hpp"

using namespace bmir;

namespace {

using Series = std::vector<Rational>;  // truncated power series in x

Series ser_mul(const Series& a, const Series& b) {
  Series c(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series ser_inv(const Series& a) {
  Series b(a.size(), Rational(0));
  b[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += a[k] * b[n - k];
    b[n] = -s / a[0];
  }
  return b;
}

Series linear(const Rational& c0, const Rational& c1, std::size_t len) {
  Series s(len, Rational(0));
  s[0] = c0;
  if (len > 1) s[1] = c1;
  return s;
}

// B_D at z = 1 as a series in P for (P^n, O(l)): prod_{m=1}^{lD}(lP+m) / prod_{m=1}^{D}(P+m)^{n+1}.
Series b_oracle(unsigned n, long l, long D, std::size_t len) {
  Series num = linear(1, 0, len), den = linear(1, 0, len);
  for (long m = 1; m <= l * D; ++m) num = ser_mul(num, linear(m, l, len));
  for (long m = 1; m <= D; ++m)
    for (unsigned k = 0; k <= n; ++k) den = ser_mul(den, linear(m, 1, len));
  return ser_mul(num, ser_inv(den));
}

// Coefficients of a class-valued Laurent polynomial that is homogeneous of degree 0 in (P, z).
Series homogeneous_coeffs(const ZRat& v, std::size_t len) {
  Series s(len, Rational(0));
  REQUIRE(v.factors().empty());
  for (const auto& [e, c] : v.poly()) {
    for (const auto& [mono, coef] : c.terms()) {
      unsigned k = mono.empty() ? 0 : mono[0];
      REQUIRE(static_cast<int>(k) == -e);
      s[k] += coef.constant_value();
    }
  }
  return s;
}

}  // namespace

TEST_CASE("j_projective closed forms") {
  JFunction J = j_projective({4}, {2});
  Ring r = J.ring;
  CHECK(J.at({0}) == ZRat::z_power(r, 1));
  CohClass z = parse_class("l1 + 2*P", r);
  CohClass P = CohClass::gen(r, 0);
  CHECK(J.at({1}).evaluate(z) == z * (P + z).pow(5).inverse());
  CHECK(J.at({2}).evaluate(z) == z * ((P + z) * (P + z * Scalar(2))).pow(5).inverse());
  JFunction J2 = j_projective({1, 1}, {1, 1});
  CohClass H1 = CohClass::gen(J2.ring, 0), H2 = CohClass::gen(J2.ring, 1);
  CohClass w = parse_class("3 + l1", J2.ring);
  CHECK(J2.at({1, 0}).evaluate(w) == w * (H1 + w).pow(2).inverse());
  CHECK(J2.at({1, 1}).evaluate(w) == w * ((H1 + w) * (H2 + w)).pow(2).inverse());
  CHECK(J2.div_str_primary);
}

TEST_CASE("iota order respects total degree") {
  auto o = iota_order({2, 2});
  REQUIRE(o.size() == 9);
  CHECK(o[0] == BaseDegree{0, 0});
  CHECK(o[1] == BaseDegree{1, 0});
  CHECK(o[2] == BaseDegree{0, 1});
  CHECK(o[3] == BaseDegree{2, 0});
  CHECK(o[8] == BaseDegree{2, 2});
}

TEST_CASE("quintic twist and B series") {
  JFunction J = j_projective({4}, {20});
  Ring r = J.ring;
  CohClass fiveP = parse_class("5*P", r);
  JFunction T = quantum_lefschetz_twist(J, {fiveP});
  CHECK(T.at({0}) == J.at({0}));
  ZRat num = gamma_product(fiveP, 5);
  CHECK(T.at({1}) == J.at({1}) * num);
  CHECK_THROWS_AS(quantum_lefschetz_twist(J, {parse_class("-P", r)}), ConvexityError);

  Ring im = default_im_ring({4});
  auto B = b_series(T, im);
  // z^0 P^0 coefficient of B_1 against the truncated expansion and the k-element sets formula
  Series b1 = b_oracle(4, 5, 1, 4);
  CHECK(b1[0] == 120);
  CHECK(homogeneous_coeffs(B.at({1}), 4) == b1);
  const long sym[] = {1, 10, 35, 50, 24};
  long sets = 0, pw = 625;
  for (int k = 0; k <= 4; ++k, pw /= 5) sets += (k % 2 ? -1 : 1) * pw * sym[k];
  CHECK(5 * sets == 120);

  auto A = restrict_to_sublattice(B, multiples_of(5));
  for (long n = 1; n <= 4; ++n) {
    REQUIRE(A.count({5 * n}));
    CHECK(homogeneous_coeffs(A.at({5 * n}), 4) == b_oracle(4, 5, 5 * n, 4));
  }
  CHECK(A.size() == 5);
  CHECK(restrict_to_sublattice(B, {}).size() == B.size());
  auto only0 = restrict_to_sublattice(B, [](const BaseDegree& D) { return D[0] == 0; });
  CHECK(only0.size() == 1);
}

TEST_CASE("quintic ht against a homogeneous oracle") {
  const long Dm = 20;
  JFunction T = quantum_lefschetz_twist(j_projective({4}, {Dm}), {parse_class("5*P", make_ring({4}))});
  HtOptions o;
  o.sublattice = multiples_of(5);
  o.im_ring = default_im_ring({4});
  HtTable h = ht_function(T, o);
  std::vector<Series> Bo(Dm + 1), Co(Dm + 1);
  for (long D = 0; D <= Dm; ++D) Bo[D] = b_oracle(4, 5, D, 4);
  Co[0] = linear(1, 0, 4);
  long running = 0;
  for (long D = 1; D <= Dm; ++D) {
    Series c = Bo[D];
    for (long n = 5; n <= D; n += 5) {
      Series t = ser_mul(Bo[n], Co[D - n]);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] -= t[i];
    }
    Co[D] = c;
    int top = -1;
    for (int k = 0; k < 4; ++k)
      if (c[k] != 0) top = k;
    if (top >= 0) running = std::max<long>(running, top);
    std::optional<int> expect;
    if (top >= 0) expect = top;
    CHECK(h.pole_order.at({D}) == expect);
    CHECK(h.ht.at({D}) == running);
    CHECK(h.ht.at({D}) == 3);
  }
  // monotone along iota
  long prev = 0;
  for (const auto& D : h.order) {
    if (!h.ht.count(D)) continue;
    CHECK(h.ht.at(D) >= prev);
    prev = h.ht.at(D);
  }
}

TEST_CASE("ht vanishes when the sublattice is everything") {
  JFunction T = quantum_lefschetz_twist(j_projective({3}, {6}), {parse_class("P", make_ring({3}))});
  HtOptions o;
  o.im_ring = default_im_ring({3});
  HtTable h = ht_function(T, o);
  for (const auto& [D, v] : h.ht) CHECK(v == 0);
  JFunction bad = T;
  bad.div_str_primary = false;
  CHECK_THROWS_AS(ht_function(bad, o), PreconditionError);
  bad = T;
  bad.terms[{0}] = ZRat::z_power(T.ring, 2);
  CHECK_THROWS_AS(ht_function(bad, o), NormalizationError);
}

TEST_CASE("gamma assembly") {
  Ring r = make_ring({2});
  std::vector<CohClass> L = {parse_class("P", r), parse_class("2*P", r)};
  std::map<BaseDegree, ZRat> g1, g2;
  g1[{1}] = ZRat(r, parse_class("l1 + P", r));
  CHECK(gamma_assemble({nullptr, nullptr}, L, {1}, r).is_zero());
  CHECK(gamma_assemble({&g1}, {L[0]}, {1}, r) == g1.at({1}));
  CHECK(gamma_assemble({&g1, &g2}, L, {1}, r) == g1.at({1}) * gamma_product(L[1], 2));
}

TEST_CASE("blowup along a section matches the toric I-function of the star subdivision") {
  // Fiber P^2 over a point blown up at alpha = {1}.
  FibrationModel cor = make_model({{1, 1, 1}}, {Rational(1)}, {}, {}, {0}, BlowupMode::AlongSection);
  IntMatrix mbl = blowup_matrix(cor.m, cor.omega, {1, 2});
  CHECK(mbl == IntMatrix{{1, 1, 1, 0}, {0, 1, 1, -1}});
  FibrationModel bl = make_model(mbl, {Rational(1), Rational(1, 2)}, {}, {"", "", "", "l4"}, {1, 3},
                                 BlowupMode::None);
  JFunction Jpt = j_projective({}, {});
  IAssembler a(cor, {Jpt, 0, {}});
  IAssembler b(bl, {Jpt, 0, {}});
  REQUIRE(a.strata().size() == b.strata().size());
  std::size_t matched = 0;
  for (std::size_t s = 0; s < a.strata().size(); ++s) {
    const Stratum& st = a.strata()[s];
    std::vector<unsigned> key = st.fixed;
    if (st.kind == StratumKind::Exceptional)
      key.push_back(static_cast<unsigned>(st.jplus));
    else
      key.push_back(3);
    std::sort(key.begin(), key.end());
    for (std::size_t t = 0; t < b.strata().size(); ++t) {
      if (b.strata()[t].fixed != key) continue;
      ++matched;
      for (long d = -1; d <= 2; ++d)
        for (long dt = -2; dt <= 2; ++dt) {
          ZRat x = a.term(s, Degree{{}, {d}, dt});
          ZRat y = b.term(t, Degree{{}, {d, dt}, 0});
          CHECK_MESSAGE(x == y, st.name(), " d=", d, " dt=", dt);
        }
    }
  }
  CHECK(matched == a.strata().size());
}

TEST_CASE("stratum pullbacks: leading term and support") {
  FibrationModel m = make_model({{1, 1}}, {Rational(1)}, {}, {}, {0}, BlowupMode::AlongSection);
  IAssembler a(m, {j_projective({}, {}), 0, {}});
  SeriesBounds bounds{{}, 3, 3};
  for (std::size_t s = 0; s < a.strata().size(); ++s) {
    NovikovSeries ser = a.pullback(s, bounds);
    const ZRat* lead = ser.get(Degree{{}, {0}, 0});
    REQUIRE(lead);
    CHECK(*lead == ZRat::z_power(ser.ring(), 1));
    auto ineq = mori_support(m, a.strata()[s]);
    for (const auto& [g, v] : ser.terms())
      for (const auto& q : ineq) CHECK_MESSAGE(q.holds(g.d, g.dt), a.strata()[s].name(), " ", g.to_string());
  }
}
