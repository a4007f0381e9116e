#include "xprim/poly/qexpr.hpp"

#include <cctype>

namespace xprim {

namespace {

Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

std::string exponent_text(const Rational& e) {
  if (e.get_den() == 1 && e > 0) return to_string(e);
  return "(" + to_string(e) + ")";
}

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  QExpr parse() {
    QExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression: " + what + " at position " + std::to_string(pos_ + 1) + " in '" +
                     std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  BigInt integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  QExpr expr() {
    QExpr e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  QExpr term() {
    QExpr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        QExpr d = unary();
        try {
          e = e.divided_by(d);
        } catch (const InputError& err) {
          pos_ = at;
          fail(err.what());
        }
      } else {
        return e;
      }
    }
  }

  QExpr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Rational exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      Rational r(integer());
      if (accept('/')) {
        BigInt d = integer();
        if (d == 0) fail("zero denominator");
        r /= Rational(d);
      }
      expect(')');
      r.canonicalize();
      return neg ? Rational(-r) : r;
    }
    if (accept('-')) return Rational(-integer());
    return Rational(integer());
  }

  QExpr power() {
    QExpr base = atom();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    Rational r = exponent();
    try {
      if (r.get_den() == 1 && r >= 0) {
        if (r.get_num() > 100000) fail("exponent too large");
        return base.pow(static_cast<unsigned>(r.get_num().get_ui()));
      }
      return base.pow_rational(r);
    } catch (const InputError& err) {
      pos_ = at;
      fail(err.what());
    }
  }

  QExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QExpr e = expr();
      expect(')');
      return e;
    }
    if (c == 'q') {
      ++pos_;
      return QExpr::q();
    }
    if (c == 'L') {
      ++pos_;
      return QExpr::L();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QExpr(Rational(integer()));
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

BigInt pow2(unsigned long k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

BigInt ipow(const BigInt& b, unsigned long k) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
  return r;
}

// q^(a/b) for a >= 0 with `bits` fractional bits.
Interval root_interval(const BigInt& q, const BigInt& a, const BigInt& b, unsigned bits) {
  BigInt x = ipow(q, a.get_ui());
  if (b == 1) return {Rational(x), Rational(x)};
  unsigned long bb = b.get_ui();
  BigInt y = x * pow2(bb * bits);
  BigInt r;
  int exact = mpz_root(r.get_mpz_t(), y.get_mpz_t(), bb);
  Rational scale(pow2(bits));
  Rational lo = Rational(r) / scale;
  lo.canonicalize();
  if (exact) return {lo, lo};
  Rational hi = Rational(r + 1) / scale;
  hi.canonicalize();
  return {lo, hi};
}

Interval qpow_interval(const BigInt& q, const Rational& e, unsigned bits) {
  if (e >= 0) return root_interval(q, e.get_num(), e.get_den(), bits);
  Interval p = root_interval(q, BigInt(-e.get_num()), e.get_den(), bits + 8);
  Rational lo = 1 / p.hi, hi = 1 / p.lo;
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

Interval mul_pos(const Interval& a, const Interval& b) { return {a.lo * b.lo, a.hi * b.hi}; }

}  // namespace

QExpr::QExpr(const Rational& c) {
  Rational v = c;
  v.canonicalize();
  if (v != 0) terms_[{Rational(0), 0}] = v;
}

QExpr QExpr::monomial(const Rational& coeff, const Rational& exponent, unsigned log_degree) {
  QExpr e;
  Rational c = coeff, x = exponent;
  c.canonicalize();
  x.canonicalize();
  if (c != 0) e.terms_[{x, log_degree}] = c;
  return e;
}

bool QExpr::has_log() const {
  for (const auto& [k, c] : terms_)
    if (k.second != 0) return true;
  return false;
}

std::pair<QExpr::Key, Rational> QExpr::leading() const {
  if (terms_.empty()) throw InputError("leading term of zero expression");
  return *terms_.rbegin();
}

void QExpr::add_term(const Key& k, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) it->second += c;
  if (it->second == 0) terms_.erase(it);
}

QExpr& QExpr::operator+=(const QExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

QExpr& QExpr::operator-=(const QExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

QExpr& QExpr::operator*=(const QExpr& o) {
  QExpr r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      Rational e = ka.first + kb.first;
      e.canonicalize();
      r.add_term({e, ka.second + kb.second}, ca * cb);
    }
  *this = std::move(r);
  return *this;
}

QExpr QExpr::operator-() const {
  QExpr r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

QExpr QExpr::pow(unsigned n) const {
  QExpr r(Rational(1)), b = *this;
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

QExpr QExpr::divided_by(const QExpr& m) const {
  if (!m.is_monomial() || m.has_log()) throw InputError("division only by a monomial c*q^e");
  const auto& [k, c] = *m.terms_.begin();
  QExpr r;
  for (const auto& [kk, cc] : terms_) {
    Rational e = kk.first - k.first;
    e.canonicalize();
    Rational v = cc / c;
    v.canonicalize();
    r.terms_[{e, kk.second}] = v;
  }
  return r;
}

QExpr QExpr::pow_rational(const Rational& r) const {
  if (r.get_den() == 1 && r >= 0) return pow(static_cast<unsigned>(r.get_num().get_ui()));
  if (!is_monomial() || has_log()) throw InputError("fractional or negative power of a non-monomial");
  const auto& [k, c] = *terms_.begin();
  Rational e = k.first * r;
  e.canonicalize();
  if (r.get_den() == 1) {
    // negative integer power
    unsigned long n = BigInt(-r.get_num()).get_ui();
    Rational cp(ipow(c.get_den(), n), ipow(c.get_num(), n));
    cp.canonicalize();
    return monomial(cp, e);
  }
  if (c != 1) throw InputError("fractional power needs coefficient 1");
  return monomial(1, e);
}

QExpr QExpr::scale_log(const Rational& factor) const {
  QExpr r;
  for (const auto& [k, c] : terms_) {
    Rational f = 1;
    for (unsigned i = 0; i < k.second; ++i) f *= factor;
    r.add_term(k, c * f);
  }
  return r;
}

std::string QExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    const bool neg = c < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    Rational a = abs_q(c);
    std::vector<std::string> factors;
    if (k.first != 0) factors.push_back(k.first == 1 ? "q" : "q^" + exponent_text(k.first));
    if (k.second == 1)
      factors.push_back("L");
    else if (k.second > 1)
      factors.push_back("L^" + std::to_string(k.second));
    std::string body;
    if (factors.empty() || a != 1) body = to_string(a);
    for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
    out += body;
  }
  return out;
}

QExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

Interval log2_interval(const BigInt& q, unsigned bits) {
  if (q < 2) throw InputError("log2 of q < 2");
  const unsigned long k = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
  if (q == pow2(k)) return {Rational(k), Rational(k)};
  // q = 2^k * y with y in (1, 2); extract bits of log2 y by repeated squaring
  // of a fixed-point enclosure.
  const unsigned long w = bits + 32;
  const BigInt one = pow2(w), two = pow2(w + 1);
  BigInt ylo, yhi;
  {
    BigInt num = q * one;
    BigInt den = pow2(k);
    mpz_fdiv_q(ylo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_cdiv_q(yhi.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  BigInt frac = 0;
  unsigned got = 0;
  for (; got < bits; ++got) {
    BigInt t = ylo * ylo;
    mpz_fdiv_q_2exp(ylo.get_mpz_t(), t.get_mpz_t(), w);
    t = yhi * yhi;
    mpz_cdiv_q_2exp(yhi.get_mpz_t(), t.get_mpz_t(), w);
    if (ylo >= two) {
      frac = 2 * frac + 1;
      mpz_fdiv_q_2exp(ylo.get_mpz_t(), ylo.get_mpz_t(), 1);
      mpz_cdiv_q_2exp(yhi.get_mpz_t(), yhi.get_mpz_t(), 1);
    } else if (yhi < two) {
      frac = 2 * frac;
    } else {
      break;
    }
  }
  Rational scale(pow2(got));
  Rational lo = Rational(k) + Rational(frac) / scale;
  Rational hi = Rational(k) + Rational(frac + 1) / scale;
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

Interval eval_at(const QExpr& e, const BigInt& q, unsigned bits) {
  if (q < 2) throw InputError("evaluation needs q >= 2");
  Interval total{0, 0};
  std::optional<Interval> lg;
  std::vector<Interval> lpow;
  for (const auto& [k, c] : e.terms()) {
    Interval v = qpow_interval(q, k.first, bits);
    if (k.second > 0) {
      if (!lg) lg = log2_interval(q, bits);
      Interval lp{1, 1};
      for (unsigned i = 0; i < k.second; ++i) lp = mul_pos(lp, *lg);
      v = mul_pos(v, lp);
    }
    if (c >= 0) {
      total.lo += c * v.lo;
      total.hi += c * v.hi;
    } else {
      total.lo += c * v.hi;
      total.hi += c * v.lo;
    }
  }
  total.lo.canonicalize();
  total.hi.canonicalize();
  return total;
}

Interval eval_at(const QExpr& e, const BigInt& q, const Rational& eps) {
  Interval v;
  for (unsigned bits = 64; bits <= 65536; bits *= 2) {
    v = eval_at(e, q, bits);
    if (v.width() <= eps) break;
  }
  return v;
}

std::optional<int> sign_at(const QExpr& e, const BigInt& q) {
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    Interval v = eval_at(e, q, bits);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    if (v.exact()) return 0;
  }
  return std::nullopt;
}

}  // namespace xprim
