#include "bmir/poly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace bmir {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool mono_divides(const Monomial& b, const Monomial& a, Monomial* q) {
  if (b.size() > a.size()) {
    for (std::size_t i = a.size(); i < b.size(); ++i)
      if (b[i] != 0) return false;
  }
  Monomial r(a);
  for (std::size_t i = 0; i < b.size() && i < a.size(); ++i) {
    if (b[i] > a[i]) return false;
    r[i] -= b[i];
  }
  trim(r);
  if (q) *q = std::move(r);
  return true;
}

// Polynomials in x_v with coefficients free of x_v (dense, index = power).
using UPoly = std::vector<Poly>;

void strip(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Pseudo-remainder of a by b, up to a nonzero factor free of x_v.
UPoly pseudo_rem(UPoly a, const UPoly& b) {
  strip(a);
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    Poly la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    strip(a);
  }
  return a;
}

// Scale so every coefficient is an integer and their gcd is 1.
void normalize_numeric(UPoly& p) {
  mpz_class l = 1, g = 0;
  for (const auto& c : p)
    for (const auto& [m, v] : c.terms()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
  if (g == 0) return;
  Rational f(l, g);
  f.canonicalize();
  if (f == 1) return;
  for (auto& c : p) c *= f;
}

Poly content_of(const UPoly& p) {
  Poly g;
  for (const auto& c : p) {
    g = Poly::gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly(Rational(1));
  }
  return g;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  Rational lc = p.leading_coeff();
  if (lc == 1) return p;
  Poly r = p;
  r *= Rational(1) / lc;
  return r;
}

}  // namespace

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Lexicographic with x_0 most significant: larger power of x_0 is larger.
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned ea = i < a.size() ? a[i] : 0;
    unsigned eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea < eb;
  }
  return false;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::var(unsigned index) {
  Monomial m(index + 1, 0);
  m[index] = 1;
  return monomial(m, Rational(1));
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  Monomial t = m;
  trim(t);
  if (c != 0) p.terms_.emplace(std::move(t), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

const Monomial& Poly::leading_monomial() const { return std::prev(terms_.end())->first; }
const Rational& Poly::leading_coeff() const { return std::prev(terms_.end())->second; }

unsigned Poly::num_vars() const {
  std::size_t n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.size());
  return static_cast<unsigned>(n);
}

unsigned Poly::degree_in(unsigned v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    if (v < m.size()) d = std::max(d, m[v]);
  return d;
}

std::vector<Poly> Poly::coeffs_in(unsigned v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& [m, c] : terms_) {
    unsigned e = v < m.size() ? m[v] : 0;
    Monomial rest = m;
    if (v < rest.size()) rest[v] = 0;
    trim(rest);
    out[e].add_term(rest, c);
  }
  return out;
}

Poly Poly::from_coeffs_in(unsigned v, const std::vector<Poly>& cs) {
  Poly r;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [m, c] : cs[k].terms_) {
      Monomial t = m;
      if (t.size() <= v) t.resize(v + 1, 0);
      t[v] += static_cast<std::uint32_t>(k);
      trim(t);
      r.add_term(t, c);
    }
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_constant()) return Poly(b) *= a.constant_value();
  if (b.is_constant()) return Poly(a) *= b.constant_value();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = mono_mul(ma, mb);
      r.add_term(m, ca * cb);
    }
  return r;
}

bool Poly::divides(const Poly& b, const Poly& a, Poly* quotient) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (b.is_constant()) {
    if (quotient) *quotient = Poly(a) *= (Rational(1) / b.constant_value());
    return true;
  }
  Poly rem = a;
  Poly q;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coeff();
  while (!rem.is_zero()) {
    Monomial t;
    if (!mono_divides(lb, rem.leading_monomial(), &t)) return false;
    Rational c = rem.leading_coeff() / cb;
    Poly term = Poly::monomial(t, c);
    q += term;
    rem -= term * b;
  }
  if (quotient) *quotient = std::move(q);
  return true;
}

Poly Poly::divide_exact(const Poly& a, const Poly& b) {
  Poly q;
  if (!divides(b, a, &q)) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly Poly::prs_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  if (a == b) return make_monic(a);

  unsigned v = std::max(a.num_vars(), b.num_vars());
  while (v > 0 && !a.has_var(v - 1) && !b.has_var(v - 1)) --v;
  --v;
  if (!a.has_var(v)) return prs_gcd(a, content_of(b.coeffs_in(v)));
  if (!b.has_var(v)) return prs_gcd(content_of(a.coeffs_in(v)), b);

  UPoly ua = a.coeffs_in(v), ub = b.coeffs_in(v);
  Poly ca = content_of(ua), cb = content_of(ub);
  Poly g0 = prs_gcd(ca, cb);
  for (auto& c : ua) c = divide_exact(c, ca);
  for (auto& c : ub) c = divide_exact(c, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  normalize_numeric(ua);
  normalize_numeric(ub);

  while (true) {
    UPoly r = pseudo_rem(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = UPoly{Poly(Rational(1))};
      break;
    }
    Poly cr = content_of(r);
    for (auto& c : r) c = divide_exact(c, cr);
    normalize_numeric(r);
    ua = std::move(ub);
    ub = std::move(r);
  }
  Poly g = from_coeffs_in(v, ub);
  return make_monic(g0 * g);
}

// Heuristic gcd: evaluate the last variable at a large integer, recurse, and
// lift the integer image back by its balanced xi-adic expansion.
namespace {

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (const auto& [mono, c] : p.terms()) {
    mpz_class v = abs(c.get_num());
    if (v > m) m = v;
  }
  return m;
}

// Integer multiple with coprime integer coefficients; sign so the leading coefficient is positive.
Poly primitive_integer(const Poly& p) {
  UPoly u{p};
  normalize_numeric(u);
  if (!u[0].is_zero() && u[0].leading_coeff() < 0) u[0] *= Rational(-1);
  return u[0];
}

Poly substitute_last(const Poly& p, unsigned v, const mpz_class& xi) {
  std::vector<Poly> cs = p.coeffs_in(v);
  Poly r;
  mpz_class pw = 1;
  for (const auto& c : cs) {
    r += c * Rational(pw);
    pw *= xi;
  }
  return r;
}

Poly lift(const Poly& image, unsigned v, const mpz_class& xi) {
  // image has integer coefficients; expand each coefficient balanced in base xi.
  std::vector<Poly> cs;
  Poly rest = image;
  mpz_class half = xi / 2;
  while (!rest.is_zero()) {
    Poly digit, next;
    for (const auto& [m, c] : rest.terms()) {
      mpz_class n = c.get_num();
      mpz_class r = n % xi;
      if (r < 0) r += xi;
      if (r > half) r -= xi;
      mpz_class q = (n - r) / xi;
      if (r != 0) digit += Poly::monomial(m, Rational(r));
      if (q != 0) next += Poly::monomial(m, Rational(q));
    }
    cs.push_back(std::move(digit));
    rest = std::move(next);
  }
  return Poly::from_coeffs_in(v, cs);
}

std::optional<Poly> heu_gcd(const Poly& f, const Poly& g, int depth);

std::optional<Poly> heu_gcd(const Poly& f, const Poly& g, int depth) {
  // f, g primitive with integer coefficients, both nonzero.
  if (f.is_constant() || g.is_constant()) return Poly(Rational(1));
  unsigned nv = std::max(f.num_vars(), g.num_vars());
  unsigned v = nv - 1;
  while (!f.has_var(v) && !g.has_var(v)) {
    if (v == 0) return std::nullopt;
    --v;
  }
  mpz_class bf = max_norm(f), bg = max_norm(g);
  mpz_class xi = 2 * std::min(bf, bg) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly ff = substitute_last(f, v, xi), gg = substitute_last(g, v, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      Poly h;
      if (ff.is_constant() && gg.is_constant()) {
        mpz_class a = abs(ff.constant_value().get_num()), b = abs(gg.constant_value().get_num());
        mpz_class c;
        mpz_gcd(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        h = Poly(Rational(c));
      } else {
        // Integer content of the images must be kept, so work with the raw images.
        mpz_class cf = 0, cg = 0;
        for (const auto& [m, c] : ff.terms()) mpz_gcd(cf.get_mpz_t(), cf.get_mpz_t(), c.get_num_mpz_t());
        for (const auto& [m, c] : gg.terms()) mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), c.get_num_mpz_t());
        mpz_class cc;
        mpz_gcd(cc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
        auto sub = heu_gcd(primitive_integer(ff), primitive_integer(gg), depth + 1);
        if (!sub) return std::nullopt;
        h = *sub * Rational(cc);
      }
      Poly cand = primitive_integer(lift(h, v, xi));
      if (!cand.is_zero() && Poly::divides(cand, f, nullptr) && Poly::divides(cand, g, nullptr))
        return cand;
    }
    xi = xi * 73794 / 27011 + 7;
  }
  return std::nullopt;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  if (a == b) return make_monic(a);
  if (auto h = heu_gcd(primitive_integer(a), primitive_integer(b), 0)) return make_monic(*h);
  return prs_gcd(a, b);
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= point.size()) throw std::out_of_range("evaluation point too short");
      Rational p = 1;
      for (unsigned k = 0; k < m[i]; ++k) p *= point[i];
      t *= p;
    }
    s += t;
  }
  return s;
}

int Poly::compare(const Poly& a, const Poly& b) {
  auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
  GrlexLess less;
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ia->first, ib->first) ? -1 : 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (ia == a.terms_.rend() && ib == b.terms_.rend()) return 0;
  return ia == a.terms_.rend() ? -1 : 1;
}

std::string Poly::to_string(const std::string& prefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    Rational c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    bool wrote = false;
    if (!unit || m.empty()) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << prefix << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace bmir
