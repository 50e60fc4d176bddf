#include "bmir/scalar.hpp"

#include <stdexcept>

namespace bmir {

Scalar::Scalar(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

Scalar Scalar::lambda(unsigned index) { return Scalar(Poly::var(index)); }

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (den_.is_constant()) {
    Rational c = den_.constant_value();
    if (c != 1) {
      num_ *= Rational(1) / c;
      den_ = Poly(Rational(1));
    }
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = Poly::divide_exact(num_, g);
    den_ = Poly::divide_exact(den_, g);
  }
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational Scalar::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = Poly(Rational(1));
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross-cancel first to keep the gcds small.
  Poly g1 = Poly::gcd(num_, o.den_);
  Poly g2 = Poly::gcd(o.num_, den_);
  Poly a = g1.is_constant() ? num_ : Poly::divide_exact(num_, g1);
  Poly bd = g1.is_constant() ? o.den_ : Poly::divide_exact(o.den_, g1);
  Poly b = g2.is_constant() ? o.num_ : Poly::divide_exact(o.num_, g2);
  Poly ad = g2.is_constant() ? den_ : Poly::divide_exact(den_, g2);
  num_ = a * b;
  den_ = ad * bd;
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Rational Scalar::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw std::domain_error("denominator vanishes at specialization point");
  return num_.evaluate(point) / d;
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  int c = Poly::compare(a.den_, b.den_);
  if (c != 0) return c;
  return Poly::compare(a.num_, b.num_);
}

std::string Scalar::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace bmir
