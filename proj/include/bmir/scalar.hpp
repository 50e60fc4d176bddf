#pragma once

#include "bmir/poly.hpp"

#include <string>
#include <vector>

namespace bmir {

// Element of Q(l1..lN): reduced fraction num/den with den monic in grlex.
class Scalar {
 public:
  Scalar() : num_(), den_(Rational(1)) {}
  Scalar(long v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT
  Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT
  explicit Scalar(const Poly& p) : num_(p), den_(Rational(1)) {}
  Scalar(const Poly& num, const Poly& den);

  // The equivariant parameter l_{index+1}.
  static Scalar lambda(unsigned index);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Substitute l_i = point[i]. Throws std::domain_error if the denominator vanishes.
  Rational evaluate(const std::vector<Rational>& point) const;
  unsigned num_vars() const { return std::max(num_.num_vars(), den_.num_vars()); }

  static int compare(const Scalar& a, const Scalar& b);
  std::string to_string() const;

 private:
  void normalize();
  Poly num_, den_;
};

}  // namespace bmir
