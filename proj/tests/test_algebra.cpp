#include "doctest.h"

#include "bmir/cohclass.hpp"
#include "bmir/linsolve.hpp"

#include <random>

using namespace bmir;

namespace {

Scalar L(unsigned i) { return Scalar::lambda(i - 1); }

Scalar random_scalar(std::mt19937& rng, unsigned nvars) {
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, 2);
  auto rp = [&]() {
    Poly p;
    for (int t = 0; t < 3; ++t) {
      Monomial m(nvars, 0);
      for (auto& e : m) e = static_cast<std::uint32_t>(pick(rng));
      p += Poly::monomial(m, Rational(coef(rng)));
    }
    return p;
  };
  Poly den = rp();
  while (den.is_zero()) den = rp();
  return Scalar(rp(), den);
}

// Ratio of products of linear forms, the shape of equivariant weights.
Scalar random_weight(std::mt19937& rng, unsigned nvars) {
  std::uniform_int_distribution<int> coef(-2, 2), count(0, 2);
  auto lin = [&]() {
    Poly p(Rational(coef(rng)));
    for (unsigned i = 0; i < nvars; ++i) p += Poly::var(i) * Rational(coef(rng));
    return p;
  };
  Poly num(Rational(1)), den(Rational(1));
  for (int k = count(rng); k >= 0; --k) num = num * lin();
  for (int k = count(rng); k > 0; --k) {
    Poly f = lin();
    if (!f.is_zero()) den = den * f;
  }
  return Scalar(num, den);
}

}  // namespace

TEST_CASE("poly gcd and exact division") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly a = (x - y) * (x + y * y + Poly(Rational(1)));
  Poly b = (x - y) * (x * y - Poly(Rational(2)));
  CHECK(Poly::gcd(a, b) == x - y);
  CHECK(Poly::divide_exact(a, x - y) == x + y * y + Poly(Rational(1)));
  CHECK_THROWS_AS(Poly::divide_exact(a, x * y - Poly(Rational(2))), std::domain_error);
  CHECK((x - y).to_string() == "l1 - l2");
}

TEST_CASE("scalar field axioms on random elements") {
  std::mt19937 rng(7);
  for (int it = 0; it < 40; ++it) {
    Scalar a = random_scalar(rng, 2), b = random_scalar(rng, 2), c = random_scalar(rng, 2);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    if (!a.is_zero() && !b.is_zero()) CHECK((a / b) * (b / a) == Scalar(1));
  }
}

TEST_CASE("ring_arith truncation") {
  Ring r = make_ring({4});
  CohClass P = CohClass::gen(r, 0);
  CHECK((P * P.pow(4)).is_zero());
  CohClass one(r, Scalar(1));
  CHECK(one * P == P);
  Ring r3 = make_ring({2});
  CohClass Q = CohClass::gen(r3, 0);
  CohClass one3(r3, Scalar(1));
  CHECK((Q + one3) * (Q - one3) == Q * Q - one3);
  CHECK_THROWS_AS(P + Q, DescriptorError);
}

TEST_CASE("nilpotent_inverse") {
  Ring r = make_ring({1});
  CohClass P = CohClass::gen(r, 0);
  CohClass l1(r, L(1));
  CHECK(l1.inverse() == CohClass(r, L(1).inverse()));
  CohClass x = l1 + P;
  CohClass expect = CohClass(r, L(1).inverse()) - P * (L(1) * L(1)).inverse();
  CHECK(x.inverse() == expect);
  CHECK_THROWS_AS(P.inverse(), NotInvertibleError);

  Ring r2 = make_ring({2, 3});
  std::mt19937 rng(11);
  for (int it = 0; it < 10; ++it) {
    CohClass y(r2, random_weight(rng, 2));
    if (y.is_zero()) continue;
    y += CohClass::gen(r2, 0) * random_weight(rng, 2) + CohClass::gen(r2, 1).pow(2) * random_weight(rng, 2);
    y += CohClass::gen(r2, 0) * CohClass::gen(r2, 1) * random_weight(rng, 2);
    CHECK(y * y.inverse() == CohClass(r2, Scalar(1)));
  }
}

TEST_CASE("linear_solve") {
  LinearSystem id{{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}, {L(1), L(2)}};
  auto s = linear_solve(id);
  CHECK(s[0] == L(1));
  CHECK(s[1] == L(2));
  LinearSystem one{{{Scalar(1)}}, {L(1)}};
  CHECK(linear_solve(one)[0] == L(1));
  LinearSystem sing{{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}, {L(1), L(2)}};
  CHECK_THROWS_AS(linear_solve(sing), SingularMatrixError);
  LinearSystem sym{{{L(1), Scalar(1)}, {Scalar(1), L(2)}}, {Scalar(3), L(1) - L(2)}};
  auto x = linear_solve(sym);
  CHECK(sym.matrix[0][0] * x[0] + sym.matrix[0][1] * x[1] == sym.rhs[0]);
  CHECK(sym.matrix[1][0] * x[0] + sym.matrix[1][1] * x[1] == sym.rhs[1]);
}

TEST_CASE("class text form") {
  Ring r = make_ring({4});
  CohClass P = CohClass::gen(r, 0);
  CHECK(CohClass(r).to_string() == "0");
  CHECK((P * P + CohClass(r, L(1)) * P).to_string() == "l1*P^1 + P^2");
  CohClass x = CohClass(r, L(1) - L(2)) + P * Scalar(Rational(3, 2)) + P.pow(3) * (L(2) / L(1));
  CHECK(parse_class(x.to_string(), r) == x);
  try {
    parse_class("P + * 2", r);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(parse_class("P + Q", r), ParseError);

  std::mt19937 rng(3);
  Ring r2 = make_ring({2, 2});
  for (int it = 0; it < 20; ++it) {
    CohClass y(r2, random_scalar(rng, 3));
    y += CohClass::gen(r2, 0) * random_scalar(rng, 3);
    y += CohClass::gen(r2, 0) * CohClass::gen(r2, 1).pow(2) * random_scalar(rng, 3);
    CHECK(parse_class(y.to_string(), r2) == y);
  }
}
