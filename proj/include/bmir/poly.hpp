#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bmir {

using Rational = mpq_class;

// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);

// Graded lexicographic order: total degree first, then lexicographic on exponents.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over Q in variables x_0, x_1, ...
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly var(unsigned index);
  static Poly monomial(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  const Terms& terms() const { return terms_; }

  // Largest term in grlex order; requires !is_zero().
  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  unsigned num_vars() const;  // one past the largest variable index present
  unsigned degree_in(unsigned v) const;
  bool has_var(unsigned v) const { return degree_in(v) > 0; }

  // Coefficients as a polynomial in x_v: result[k] is the coefficient of x_v^k.
  std::vector<Poly> coeffs_in(unsigned v) const;
  static Poly from_coeffs_in(unsigned v, const std::vector<Poly>& cs);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Exact quotient a / b; throws std::domain_error if b does not divide a.
  static Poly divide_exact(const Poly& a, const Poly& b);
  static bool divides(const Poly& b, const Poly& a, Poly* quotient);

  // Monic (leading grlex coefficient 1) greatest common divisor; gcd(0,0) = 0.
  static Poly gcd(const Poly& a, const Poly& b);

  Rational evaluate(const std::vector<Rational>& point) const;

  // Total order used for canonical sorting of containers.
  static int compare(const Poly& a, const Poly& b);

  // Variables are printed as <prefix><index+1>, e.g. l1, l2.
  std::string to_string(const std::string& prefix = "l") const;

 private:
  static Poly prs_gcd(const Poly& a, const Poly& b);
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

}  // namespace bmir
