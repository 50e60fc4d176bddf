#include "bmir/cohclass.hpp"

#include <cctype>
#include <sstream>

namespace bmir {

Ring make_ring(const std::vector<unsigned>& caps) {
  std::vector<std::string> names;
  if (caps.size() == 1) {
    names.push_back("P");
  } else {
    for (std::size_t i = 0; i < caps.size(); ++i) names.push_back("H" + std::to_string(i + 1));
  }
  return make_ring(std::move(names), caps);
}

Ring make_ring(std::vector<std::string> names, std::vector<unsigned> caps) {
  if (names.size() != caps.size()) throw DescriptorError("ring names and caps differ in length");
  return std::make_shared<RingDesc>(RingDesc{std::move(names), std::move(caps)});
}

namespace {

const Ring& pick_ring(const Ring& a, const Ring& b) {
  if (!a) return b;
  if (!b) return a;
  if (a != b && !a->same_as(*b)) throw DescriptorError("mismatched ring descriptors");
  return a;
}

}  // namespace

CohClass::CohClass(Ring ring, const Scalar& c) : ring_(std::move(ring)) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

CohClass CohClass::gen(Ring ring, unsigned i) {
  if (!ring || i >= ring->rank()) throw DescriptorError("generator index out of range");
  Monomial m(i + 1, 0);
  m[i] = 1;
  return monomial(std::move(ring), m, Scalar(1));
}

CohClass CohClass::monomial(Ring ring, const Monomial& m, const Scalar& c) {
  CohClass r(std::move(ring));
  Monomial t = m;
  while (!t.empty() && t.back() == 0) t.pop_back();
  r.add_term(t, c);
  return r;
}

bool CohClass::fits(const Monomial& m) const {
  if (!ring_) return m.empty();
  if (m.size() > ring_->rank()) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > ring_->caps[i]) return false;
  return true;
}

void CohClass::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero() || !fits(m)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool CohClass::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar CohClass::degree0() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Scalar() : it->second;
}

CohClass CohClass::operator-() const {
  CohClass r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

CohClass& CohClass::operator+=(const CohClass& o) {
  ring_ = pick_ring(ring_, o.ring_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  ring_ = pick_ring(ring_, o.ring_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CohClass& CohClass::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CohClass operator*(const CohClass& a, const CohClass& b) {
  CohClass r(pick_ring(a.ring_, b.ring_));
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_scalar()) return CohClass(b) *= a.degree0();
  if (b.is_scalar()) return CohClass(a) *= b.degree0();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      if (!r.fits(m)) continue;
      r.add_term(m, ca * cb);
    }
  return r;
}

CohClass CohClass::inverse() const {
  Scalar x0 = degree0();
  if (x0.is_zero()) throw NotInvertibleError("class has no invertible degree-0 part");
  Scalar inv0 = x0.inverse();
  if (is_scalar()) return CohClass(ring_, inv0);
  // Degree by degree: y_d = -x0^{-1} sum_{k=1}^{d} x_k y_{d-k}; terminates by nilpotency.
  unsigned top = 0;
  for (auto c : ring_->caps) top += c;
  std::vector<CohClass> xs, ys;
  for (unsigned d = 0; d <= top; ++d) xs.push_back(homogeneous(d));
  ys.push_back(CohClass(ring_, inv0));
  CohClass sum = ys[0];
  for (unsigned d = 1; d <= top; ++d) {
    CohClass acc(ring_);
    for (unsigned k = 1; k <= d; ++k)
      if (!xs[k].is_zero() && !ys[d - k].is_zero()) acc += xs[k] * ys[d - k];
    acc *= -inv0;
    sum += acc;
    ys.push_back(std::move(acc));
  }
  return sum;
}

CohClass CohClass::pow(unsigned e) const {
  CohClass r(ring_, Scalar(1));
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

CohClass CohClass::homogeneous(unsigned deg) const {
  CohClass r(ring_);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) == deg) r.terms_.emplace(m, c);
  return r;
}

Scalar CohClass::linear_coeff(unsigned i) const {
  Monomial m(i + 1, 0);
  m[i] = 1;
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

Rational CohClass::pairing(const std::vector<long>& D) const {
  Rational s = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (D[i] == 0) continue;
    Scalar c = linear_coeff(static_cast<unsigned>(i));
    if (!c.is_constant()) throw DescriptorError("pairing of a class with non-constant degree-1 part");
    s += c.constant_value() * Rational(D[i]);
  }
  return s;
}

Scalar CohClass::top_coeff() const {
  if (!ring_) return degree0();
  Monomial m(ring_->caps.begin(), ring_->caps.end());
  while (!m.empty() && m.back() == 0) m.pop_back();
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

CohClass CohClass::map_to(const Ring& target) const {
  if (ring_ && ring_->names != target->names)
    throw DescriptorError("quotient map between rings with different generators");
  CohClass r(target);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

CohClass CohClass::specialize(const std::vector<Rational>& point) const {
  CohClass r(ring_);
  for (const auto& [m, c] : terms_) r.add_term(m, Scalar(c.evaluate(point)));
  return r;
}

int CohClass::compare(const CohClass& a, const CohClass& b) {
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  GrlexLess less;
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ia->first, ib->first) ? -1 : 1;
    int c = Scalar::compare(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return 0;
  return ia == a.terms_.end() ? -1 : 1;
}

std::string scalar_text(const Scalar& s) {
  std::string t = s.to_string();
  if (t.find(' ') == std::string::npos && t.find('/') == std::string::npos) return t;
  return "(" + t + ")";
}

std::string CohClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m.empty()) {
      os << scalar_text(c);
      continue;
    }
    bool unit = (c == Scalar(1));
    if (!unit) os << scalar_text(c);
    bool wrote = !unit;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << ring_->names[i] << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Ring& ring, const SymbolResolver& extra)
      : s_(s), ring_(ring), extra_(extra) {}

  CohClass run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    CohClass v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  CohClass expr() {
    CohClass v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  CohClass term() {
    CohClass v = unary();
    while (true) {
      skip();
      std::size_t at = pos_;
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        CohClass d = unary();
        if (!d.is_invertible()) throw ParseError("division by a non-invertible class", at);
        v = v * d.inverse();
      } else {
        return v;
      }
    }
  }

  CohClass unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  CohClass power() {
    CohClass base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", start);
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  CohClass atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      CohClass v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return CohClass(ring_, Scalar(Rational(mpz_class(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      return symbol(name, start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  CohClass symbol(const std::string& name, std::size_t at) {
    for (std::size_t i = 0; i < ring_->rank(); ++i)
      if (ring_->names[i] == name) return CohClass::gen(ring_, static_cast<unsigned>(i));
    if (name.size() > 1 && name[0] == 'l' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      unsigned long k = std::stoul(name.substr(1));
      if (k == 0) throw ParseError("equivariant parameters start at l1", at);
      return CohClass(ring_, Scalar::lambda(static_cast<unsigned>(k - 1)));
    }
    if (extra_) {
      if (auto v = extra_(name)) return *v;
    }
    throw ParseError("unknown symbol '" + name + "'", at);
  }

  const std::string& s_;
  Ring ring_;
  const SymbolResolver& extra_;
  std::size_t pos_ = 0;
};

}  // namespace

CohClass parse_class(const std::string& text, const Ring& ring, const SymbolResolver& extra) {
  Ring r = ring ? ring : make_ring(std::vector<std::string>{}, std::vector<unsigned>{});
  return Parser(text, r, extra).run();
}

Scalar parse_scalar(const std::string& text) {
  CohClass c = parse_class(text, make_ring(std::vector<std::string>{}, std::vector<unsigned>{}));
  return c.degree0();
}

}  // namespace bmir
