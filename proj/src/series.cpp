#include "bmir/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bmir {

namespace {

ZRat::Laurent laurent_mul(const ZRat::Laurent& a, const ZRat::Laurent& b) {
  ZRat::Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      CohClass prod = ca * cb;
      if (prod.is_zero()) continue;
      auto it = out.find(ea + eb);
      if (it == out.end()) {
        out.emplace(ea + eb, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

void laurent_add(ZRat::Laurent& a, const ZRat::Laurent& b) {
  for (const auto& [e, c] : b) {
    auto it = a.find(e);
    if (it == a.end()) {
      a.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

// (c + z)^n for n >= 0
ZRat::Laurent binomial_power(const CohClass& c, int n) {
  ZRat::Laurent out{{0, CohClass(c.ring(), Scalar(1))}};
  ZRat::Laurent lin;
  if (!c.is_zero()) lin.emplace(0, c);
  lin.emplace(1, CohClass(c.ring(), Scalar(1)));
  for (int i = 0; i < n; ++i) out = laurent_mul(out, lin);
  return out;
}

CohClass power(const CohClass& x, int e) {
  if (e >= 0) return x.pow(static_cast<unsigned>(e));
  return x.inverse().pow(static_cast<unsigned>(-e));
}

}  // namespace

ZRat::ZRat(Ring ring, const CohClass& c) : ring_(std::move(ring)) {
  if (!c.is_zero()) poly_.emplace(0, c.ring() ? c : CohClass(ring_, c.degree0()));
}

ZRat ZRat::z_power(Ring ring, int e) {
  ZRat r(ring);
  r.poly_.emplace(e, CohClass(ring, Scalar(1)));
  return r;
}

void ZRat::adopt(const Ring& r) {
  if (!ring_) ring_ = r;
}

void ZRat::poly_mul(const Laurent& q) {
  poly_ = laurent_mul(poly_, q);
  if (poly_.empty()) factors_.clear();
}

void ZRat::add_factor(const CohClass& c, int e) {
  auto it = factors_.find(c);
  if (it == factors_.end()) {
    factors_.emplace(c, e);
  } else {
    it->second += e;
    if (it->second == 0) factors_.erase(it);
  }
}

ZRat& ZRat::mul_linear(const CohClass& c, const Rational& m) {
  adopt(c.ring());
  if (m == 0) return *this *= c;
  if (is_zero()) return *this;
  if (c.is_invertible()) {
    Scalar inv_m(Rational(1) / m);
    for (auto& [e, coef] : poly_) coef *= Scalar(m);
    add_factor(c * inv_m, 1);
    return *this;
  }
  Laurent lin;
  if (!c.is_zero()) lin.emplace(0, c);
  lin.emplace(1, CohClass(ring_, Scalar(m)));
  poly_mul(lin);
  return *this;
}

ZRat& ZRat::div_linear(const CohClass& c, const Rational& m) {
  adopt(c.ring());
  if (m == 0) return *this *= c.inverse();
  if (is_zero()) return *this;
  Scalar inv_m(Rational(1) / m);
  if (c.is_invertible()) {
    for (auto& [e, coef] : poly_) coef *= inv_m;
    add_factor(c * inv_m, -1);
    return *this;
  }
  // 1/(c + mz) = sum_k (-c)^k (mz)^{-k-1}, finite since c is nilpotent
  Laurent series;
  CohClass term(ring_, inv_m);
  CohClass step = (-c) * inv_m;
  for (int k = 0; !term.is_zero(); ++k) {
    series.emplace(-k - 1, term);
    term = term * step;
  }
  poly_mul(series);
  return *this;
}

ZRat& ZRat::operator*=(const ZRat& o) {
  adopt(o.ring_);
  if (is_zero()) return *this;
  if (o.is_zero()) {
    poly_.clear();
    factors_.clear();
    return *this;
  }
  poly_mul(o.poly_);
  if (is_zero()) return *this;
  for (const auto& [c, e] : o.factors_) add_factor(c, e);
  return *this;
}

ZRat& ZRat::operator*=(const CohClass& c) {
  adopt(c.ring());
  if (c.is_zero()) {
    poly_.clear();
    factors_.clear();
    return *this;
  }
  for (auto it = poly_.begin(); it != poly_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? poly_.erase(it) : std::next(it);
  }
  if (poly_.empty()) factors_.clear();
  return *this;
}

ZRat& ZRat::operator+=(const ZRat& o) {
  adopt(o.ring_);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  Factors common;
  std::map<CohClass, int, ClassLess> keys;
  for (const auto& [c, e] : factors_) keys[c];
  for (const auto& [c, e] : o.factors_) keys[c];
  Laurent a = poly_, b = o.poly_;
  for (const auto& [c, unused] : keys) {
    auto ia = factors_.find(c);
    auto ib = o.factors_.find(c);
    int ea = ia == factors_.end() ? 0 : ia->second;
    int eb = ib == o.factors_.end() ? 0 : ib->second;
    int g = std::min(ea, eb);
    if (g != 0) common.emplace(c, g);
    if (ea > g) a = laurent_mul(a, binomial_power(c, ea - g));
    if (eb > g) b = laurent_mul(b, binomial_power(c, eb - g));
  }
  laurent_add(a, b);
  poly_ = std::move(a);
  factors_ = poly_.empty() ? Factors{} : std::move(common);
  return *this;
}

ZRat ZRat::operator-() const {
  ZRat r = *this;
  for (auto& [e, c] : r.poly_) c = -c;
  return r;
}

ZRat& ZRat::operator-=(const ZRat& o) { return *this += -o; }

CohClass ZRat::evaluate(const CohClass& z0) const {
  CohClass out(ring_);
  if (is_zero()) return out;
  bool need_inv = !poly_.empty() && poly_.begin()->first < 0;
  if (need_inv && !z0.is_invertible()) throw PoleOrderError("Laurent pole at the evaluation point");
  CohClass zinv = need_inv ? z0.inverse() : CohClass(ring_);
  for (const auto& [e, c] : poly_) out += c * (e >= 0 ? z0.pow(e) : zinv.pow(-e));
  for (const auto& [c, e] : factors_) {
    CohClass v = c + z0;
    if (e < 0 && !v.is_invertible()) throw PoleOrderError("factor vanishes at the evaluation point");
    out = out * power(v, e);
  }
  return out;
}

CohClass ZRat::residue(const CohClass& c, long k) const {
  CohClass z0 = -c;
  CohClass rest(ring_, Scalar(1));
  int order = 0;
  for (const auto& [key, e] : factors_) {
    if (key == c) {
      order = e;
      continue;
    }
    CohClass v = key + z0;
    if (!v.is_invertible()) {
      if (e < 0) throw DegenerateCollisionError("pole " + key.to_string() + " collides with " + c.to_string());
    }
    rest = rest * power(v, e);
  }
  if (order >= 0 || is_zero()) return CohClass(ring_);
  if (order < -1) throw PoleOrderError("pole of order " + std::to_string(-order));
  CohClass val(ring_);
  CohClass zinv = z0.inverse();
  for (const auto& [e, coef] : poly_) val += coef * (e >= 0 ? z0.pow(e) : zinv.pow(-e));
  return val * rest * Scalar(k);
}

int ZRat::pole_order_at_zero() const {
  if (is_zero()) throw std::domain_error("pole order of zero");
  return -poly_.begin()->first;
}

ZRat::Laurent ZRat::expand_at_zero(int max_power) const {
  Laurent out;
  if (is_zero()) return out;
  out = poly_;
  int lo = poly_.begin()->first;
  int span = max_power - lo;
  if (span < 0) return {};
  for (const auto& [c, e] : factors_) {
    // (c + z)^e = c^e sum_j binom(e, j) (z/c)^j
    Laurent s;
    CohClass cinv = c.inverse();
    CohClass term = power(c, e);
    Rational b = 1;
    for (int j = 0; j <= span; ++j) {
      if (j > 0) {
        b = b * Rational(e - j + 1) / Rational(j);
        term = term * cinv;
      }
      if (b == 0) break;
      CohClass t = term * Scalar(b);
      if (!t.is_zero()) s.emplace(j, t);
    }
    out = laurent_mul(out, s);
    for (auto it = out.begin(); it != out.end();) it = it->first > max_power ? out.erase(it) : std::next(it);
  }
  for (auto it = out.begin(); it != out.end();) it = it->first > max_power ? out.erase(it) : std::next(it);
  return out;
}

namespace {

template <typename F>
ZRat rebuild(const ZRat& f, const Ring& target, F map) {
  ZRat out(target);
  for (const auto& [e, c] : f.poly()) {
    CohClass m = map(c);
    if (m.is_zero()) continue;
    ZRat t = ZRat::z_power(target, e);
    t *= m;
    out += t;
  }
  for (const auto& [c, e] : f.factors()) {
    CohClass m = map(c);
    for (int i = 0; i < std::abs(e); ++i) {
      if (e > 0)
        out.mul_linear(m, 1);
      else
        out.div_linear(m, 1);
    }
  }
  return out;
}

}  // namespace

ZRat ZRat::map_to(const Ring& target) const {
  return rebuild(*this, target, [&](const CohClass& c) { return c.map_to(target); });
}

ZRat ZRat::specialize(const std::vector<Rational>& point) const {
  return rebuild(*this, ring_, [&](const CohClass& c) { return c.specialize(point); });
}

ZRat ZRat::substitute_minus_z() const {
  ZRat out(ring_);
  for (const auto& [e, c] : poly_) out.poly_.emplace(e, (e % 2 == 0) ? c : -c);
  int sign_flips = 0;
  for (const auto& [c, e] : factors_) {
    out.add_factor(-c, e);
    sign_flips += e;
  }
  if (sign_flips % 2 != 0) out = -out;
  return out;
}

std::string laurent_text(const ZRat::Laurent& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : p) {
    if (!out.empty()) out += " + ";
    std::string ct = c.to_string();
    if (e == 0) {
      out += ct;
      continue;
    }
    if (ct.find(' ') != std::string::npos) ct = "(" + ct + ")";
    out += ct + "*z^" + std::to_string(e);
  }
  return out;
}

std::string ZRat::to_string() const {
  if (factors_.empty()) return laurent_text(poly_);
  std::string out = "(" + laurent_text(poly_) + ")";
  for (const auto& [c, e] : factors_) out += "*(" + c.to_string() + " + z)^" + std::to_string(e);
  return out;
}

ZRat gamma_product(const CohClass& U, long n) {
  ZRat r(U.ring(), CohClass(U.ring(), Scalar(1)));
  if (n >= 0) {
    for (long m = 1; m <= n; ++m) r.mul_linear(U, Rational(m));
  } else {
    for (long m = n + 1; m <= 0; ++m) r.div_linear(U, Rational(m));
  }
  return r;
}

ZRat inverse_gamma_product(const CohClass& U, long n) {
  ZRat r(U.ring(), CohClass(U.ring(), Scalar(1)));
  if (n >= 0) {
    for (long m = 1; m <= n; ++m) r.div_linear(U, Rational(m));
  } else {
    for (long m = n + 1; m <= 0; ++m) r.mul_linear(U, Rational(m));
  }
  return r;
}

CohClass gamma_value(const CohClass& U, long n, const CohClass& z) {
  CohClass prod(U.ring(), Scalar(1));
  if (n >= 0) {
    for (long m = 1; m <= n; ++m) prod = prod * (U + z * Scalar(m));
    return prod;
  }
  for (long m = n + 1; m <= 0; ++m) prod = prod * (U + z * Scalar(m));
  return prod.inverse();
}

CohClass residue_at(const ZRat& f, const CohClass& chi, long k) {
  return f.residue(chi * Scalar(Rational(1, k)), k);
}

std::string Degree::to_string() const {
  std::ostringstream os;
  auto vec = [&](const std::vector<long>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << '(';
  vec(D);
  os << ',';
  vec(d);
  os << ',' << dt << ')';
  return os.str();
}

bool SeriesBounds::contains(const Degree& g) const {
  if (g.D.size() != Dmax.size()) return false;
  for (std::size_t i = 0; i < g.D.size(); ++i)
    if (g.D[i] < 0 || g.D[i] > Dmax[i]) return false;
  for (long v : g.d)
    if (std::labs(v) > dmax) return false;
  return std::labs(g.dt) <= dtmax;
}

bool NovikovSeries::set(const Degree& g, const ZRat& v) {
  if (!bounds_.contains(g)) return false;
  if (v.is_zero())
    terms_.erase(g);
  else
    terms_[g] = v;
  return true;
}

void NovikovSeries::add(const Degree& g, const ZRat& v) {
  if (v.is_zero() || !bounds_.contains(g)) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) terms_.erase(it);
}

const ZRat* NovikovSeries::get(const Degree& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? nullptr : &it->second;
}

NovikovSeries series_mul(const NovikovSeries& x, const NovikovSeries& y) {
  NovikovSeries out(x.ring(), x.bounds());
  for (const auto& [gx, vx] : x.terms())
    for (const auto& [gy, vy] : y.terms()) {
      Degree g;
      g.D.resize(gx.D.size());
      g.d.resize(gx.d.size());
      for (std::size_t i = 0; i < g.D.size(); ++i) g.D[i] = gx.D[i] + gy.D[i];
      for (std::size_t i = 0; i < g.d.size(); ++i) g.d[i] = gx.d[i] + gy.d[i];
      g.dt = gx.dt + gy.dt;
      if (!out.bounds().contains(g)) continue;
      out.add(g, vx * vy);
    }
  out.extension_truncated = x.extension_truncated || y.extension_truncated;
  return out;
}

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> B(n + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    Rational binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += binom * B[k];
      binom = binom * Rational(m + 1 - k) / Rational(k + 1);
    }
    B[m] = -s / Rational(m + 1);
  }
  return B;
}

GammaHatTail gamma_hat_log_tail(int M) {
  GammaHatTail t;
  t.order = M;
  auto B = bernoulli_numbers(2 * M);
  for (int m = 1; m <= M; ++m) t.coefficients.push_back(B[2 * m] / Rational(2 * m * (2 * m - 1)));
  return t;
}

}  // namespace bmir

namespace bmir {

namespace {

class ZRatParser {
 public:
  ZRatParser(const std::string& t, const Ring& r) : s_(t), ring_(r) {}

  ZRat parse() {
    ZRat v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
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
  ZRat constant(const Scalar& c) { return ZRat(ring_, CohClass(ring_, c)); }

  ZRat expr() {
    ZRat v = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  ZRat term() {
    ZRat v = power();
    for (;;) {
      if (eat('*')) {
        v *= power();
      } else if (eat('/')) {
        std::size_t at = pos_;
        v = divide(v, power(), at);
      } else {
        return v;
      }
    }
  }
  ZRat power() {
    ZRat base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t at = pos_;
    long e = integer();
    ZRat out = constant(Scalar(1));
    if (base.factors().empty() && base.poly().size() == 1 && base.poly().begin()->second == CohClass(ring_, Scalar(1))) {
      return ZRat::z_power(ring_, static_cast<int>((neg ? -e : e) * base.poly().begin()->first));
    }
    for (long i = 0; i < e; ++i) out = neg ? divide(out, base, at) : out * base;
    return out;
  }
  ZRat divide(ZRat num, const ZRat& den, std::size_t at) {
    if (den.is_zero()) throw ParseError("division by zero", at);
    if (!den.factors().empty()) {
      // invert the factored form directly
      if (den.poly().size() != 1 || den.poly().begin()->first != 0) throw ParseError("unsupported divisor", at);
      ZRat inv(ring_, den.poly().begin()->second.inverse());
      for (const auto& [c, e] : den.factors())
        for (int i = 0; i < std::abs(e); ++i) {
          if (e > 0)
            inv.div_linear(c, 1);
          else
            inv.mul_linear(c, 1);
        }
      return num * inv;
    }
    CohClass c0(ring_), c1(ring_);
    for (const auto& [e, c] : den.poly()) {
      if (e == 0)
        c0 = c;
      else if (e == 1)
        c1 = c;
      else if (den.poly().size() == 1)
        return num * ZRat::z_power(ring_, -e) * ZRat(ring_, c.inverse());
      else
        throw ParseError("divisor is not linear in z", at);
    }
    if (c1.is_zero()) return num * ZRat(ring_, c0.inverse());
    if (!c1.is_scalar() || !c1.degree0().is_constant()) throw ParseError("z coefficient of a divisor must be rational", at);
    num.div_linear(c0, c1.degree0().constant_value());
    return num;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return std::stol(s_.substr(start, pos_ - start));
  }
  ZRat atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (c == '(') {
      ++pos_;
      ZRat v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Scalar(Rational(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "z") return ZRat::z_power(ring_, 1);
      try {
        return ZRat(ring_, parse_class(name, ring_));
      } catch (const ParseError&) {
        throw ParseError("unknown name '" + name + "'", start);
      }
    }
    throw ParseError("unexpected character", pos_);
  }

  const std::string& s_;
  Ring ring_;
  std::size_t pos_ = 0;
};

}  // namespace

ZRat parse_zrat(const std::string& text, const Ring& ring) { return ZRatParser(text, ring).parse(); }

}  // namespace bmir
