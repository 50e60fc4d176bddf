#pragma once

#include "bmir/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmir {

// Q(l)[H_1..H_r]/(H_i^{cap_i + 1}).
struct RingDesc {
  std::vector<std::string> names;
  std::vector<unsigned> caps;  // largest surviving exponent per generator

  std::size_t rank() const { return names.size(); }
  bool same_as(const RingDesc& o) const { return names == o.names && caps == o.caps; }
};

using Ring = std::shared_ptr<const RingDesc>;

// Generators named P when r = 1, H1..Hr otherwise.
Ring make_ring(const std::vector<unsigned>& caps);
Ring make_ring(std::vector<std::string> names, std::vector<unsigned> caps);

struct DescriptorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInvertibleError : std::domain_error {
  using std::domain_error::domain_error;
};

class CohClass {
 public:
  using Terms = std::map<Monomial, Scalar, GrlexLess>;

  CohClass() = default;  // ring-less zero; adopts the ring of the other operand
  explicit CohClass(Ring ring) : ring_(std::move(ring)) {}
  CohClass(Ring ring, const Scalar& c);
  static CohClass gen(Ring ring, unsigned i);
  static CohClass monomial(Ring ring, const Monomial& m, const Scalar& c);

  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;  // no nilpotent part
  Scalar degree0() const;
  bool is_invertible() const { return !degree0().is_zero(); }

  CohClass operator-() const;
  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  CohClass& operator*=(const Scalar& c);
  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator*(const CohClass& a, const CohClass& b);
  friend CohClass operator*(CohClass a, const Scalar& c) { return a *= c; }
  friend CohClass operator*(const Scalar& c, CohClass a) { return a *= c; }
  friend bool operator==(const CohClass& a, const CohClass& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const CohClass& a, const CohClass& b) { return !(a == b); }

  // y with x*y = 1, by the terminating geometric series.
  CohClass inverse() const;
  CohClass pow(unsigned e) const;

  // Part of total degree deg in the generators.
  CohClass homogeneous(unsigned deg) const;
  // Coefficient of generator i in the degree-1 part.
  Scalar linear_coeff(unsigned i) const;
  // Sum_i coeff(H_i) * D_i for a class whose degree-1 coefficients are rational constants.
  Rational pairing(const std::vector<long>& D) const;
  // Top-degree coefficient: the monomial prod H_i^{cap_i}.
  Scalar top_coeff() const;

  // Reinterpret in a ring with the same generators and smaller caps (the quotient map).
  CohClass map_to(const Ring& target) const;
  // Substitute numeric values for the l variables.
  CohClass specialize(const std::vector<Rational>& point) const;

  static int compare(const CohClass& a, const CohClass& b);
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Scalar& c);
  bool fits(const Monomial& m) const;
  Ring ring_;
  Terms terms_;
};

// Canonical text form of a scalar coefficient: parenthesized unless atomic.
std::string scalar_text(const Scalar& s);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Maps an identifier to a class; returns nullopt for unknown names.
using SymbolResolver = std::function<std::optional<CohClass>(const std::string&)>;

// Parses +, -, *, /, ^, parentheses, integers, l<k>, the ring generators and any
// names accepted by extra. Division requires an invertible divisor.
CohClass parse_class(const std::string& text, const Ring& ring, const SymbolResolver& extra = {});
Scalar parse_scalar(const std::string& text);

}  // namespace bmir
