#pragma once

#include "bmir/cohclass.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmir {

struct PoleOrderError : std::domain_error {
  using std::domain_error::domain_error;
};
// A factor other than the selected pole is non-invertible at the evaluation point.
struct DegenerateCollisionError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ClassLess {
  bool operator()(const CohClass& a, const CohClass& b) const { return CohClass::compare(a, b) < 0; }
};

// poly(z) * prod_c (c + z)^{e_c}: poly is a Laurent polynomial with class coefficients,
// every key c has an invertible degree-0 part and every e_c is nonzero.
class ZRat {
 public:
  using Laurent = std::map<int, CohClass>;
  using Factors = std::map<CohClass, int, ClassLess>;

  ZRat() = default;
  explicit ZRat(Ring ring) : ring_(std::move(ring)) {}
  ZRat(Ring ring, const CohClass& c);
  static ZRat z_power(Ring ring, int e);

  const Ring& ring() const { return ring_; }
  const Laurent& poly() const { return poly_; }
  const Factors& factors() const { return factors_; }
  bool is_zero() const { return poly_.empty(); }

  // Multiply or divide by (c + m z).
  ZRat& mul_linear(const CohClass& c, const Rational& m);
  ZRat& div_linear(const CohClass& c, const Rational& m);

  ZRat& operator*=(const ZRat& o);
  ZRat& operator*=(const CohClass& c);
  ZRat& operator+=(const ZRat& o);
  ZRat& operator-=(const ZRat& o);
  ZRat operator-() const;
  friend ZRat operator*(ZRat a, const ZRat& b) { return a *= b; }
  friend ZRat operator+(ZRat a, const ZRat& b) { return a += b; }
  friend ZRat operator-(ZRat a, const ZRat& b) { return a -= b; }
  friend bool operator==(const ZRat& a, const ZRat& b) { return (a - b).is_zero(); }
  friend bool operator!=(const ZRat& a, const ZRat& b) { return !(a == b); }

  // Value at z = z0; throws PoleOrderError at a pole.
  CohClass evaluate(const CohClass& z0) const;
  // Res_{z = -c} f(z) d(kz); c must have an invertible degree-0 part.
  CohClass residue(const CohClass& c, long k) const;
  // Order of the pole at z = 0 (negative when f vanishes there); requires !is_zero().
  int pole_order_at_zero() const;
  // Laurent coefficients at z = 0 up to and including z^max_power.
  Laurent expand_at_zero(int max_power) const;
  // Quotient map / l-specialization; factors whose key stops being invertible are expanded.
  ZRat map_to(const Ring& target) const;
  ZRat specialize(const std::vector<Rational>& point) const;
  ZRat substitute_minus_z() const;  // f(-z)

  std::string to_string() const;

 private:
  void poly_mul(const Laurent& q);
  void add_factor(const CohClass& c, int e);
  void adopt(const Ring& r);
  Ring ring_;
  Laurent poly_;
  Factors factors_;
};

std::string laurent_text(const ZRat::Laurent& p);

// Inverse of ZRat::to_string: sums, products, integer powers, z, integers and class names.
// Negative powers and division need a divisor of the form c + mz with m rational.
ZRat parse_zrat(const std::string& text, const Ring& ring);

// prod_{m=1}^{n}(U + mz) with the Gamma convention for n < 0.
ZRat gamma_product(const CohClass& U, long n);
// 1 / gamma_product(U, n), computed directly so that U = 0 with n < 0 gives 0.
ZRat inverse_gamma_product(const CohClass& U, long n);
// The same products evaluated at a class value of z (no z variable).
CohClass gamma_value(const CohClass& U, long n, const CohClass& z);

// Res_{z = -chi/k} f(z) d(kz).
CohClass residue_at(const ZRat& f, const CohClass& chi, long k);

struct Degree {
  std::vector<long> D;
  std::vector<long> d;
  long dt = 0;
  auto operator<=>(const Degree&) const = default;
  std::string to_string() const;
};

struct SeriesBounds {
  std::vector<long> Dmax;  // 0 <= D_i <= Dmax_i
  long dmax = 0;           // |d_i| <= dmax
  long dtmax = 0;          // |dt| <= dtmax
  bool contains(const Degree& g) const;
};

class NovikovSeries {
 public:
  NovikovSeries() = default;
  NovikovSeries(Ring ring, SeriesBounds bounds) : ring_(std::move(ring)), bounds_(std::move(bounds)) {}

  const Ring& ring() const { return ring_; }
  const SeriesBounds& bounds() const { return bounds_; }
  const std::map<Degree, ZRat>& terms() const { return terms_; }
  bool extension_truncated = false;

  // Stores nonzero values inside the bounds; returns false when dropped.
  bool set(const Degree& g, const ZRat& v);
  void add(const Degree& g, const ZRat& v);
  const ZRat* get(const Degree& g) const;

 private:
  Ring ring_;
  SeriesBounds bounds_;
  std::map<Degree, ZRat> terms_;
};

NovikovSeries series_mul(const NovikovSeries& x, const NovikovSeries& y);

// sum_{m=1}^{M} B_{2m} / (2m(2m-1)) (z/nu)^{2m-1}: entry m-1 is the coefficient of (z/nu)^{2m-1}.
struct GammaHatTail {
  int order = 0;
  std::vector<Rational> coefficients;
};

std::vector<Rational> bernoulli_numbers(int n);  // B_0..B_n, B_1 = -1/2
GammaHatTail gamma_hat_log_tail(int M);

}  // namespace bmir
