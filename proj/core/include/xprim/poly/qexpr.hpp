#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "xprim/common.hpp"

namespace xprim {

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

/// Finite sum of terms c * q^e * L^m with rational c and e, integer m >= 0,
/// where L stands for log2(q). Always normalized: one term per (e, m) and
/// no zero coefficients.
class QExpr {
public:
  using Key = std::pair<Rational, unsigned>;  // (exponent of q, power of L)
  using Terms = std::map<Key, Rational>;

  QExpr() = default;
  QExpr(long c) : QExpr(Rational(c)) {}  // NOLINT: integer literals read naturally
  explicit QExpr(const Rational& c);

  static QExpr monomial(const Rational& coeff, const Rational& exponent, unsigned log_degree = 0);
  static QExpr q() { return monomial(1, 1); }
  static QExpr L() { return monomial(1, 0, 1); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool has_log() const;
  /// Term with the largest (exponent, log power); throws on zero.
  std::pair<Key, Rational> leading() const;

  QExpr& operator+=(const QExpr& o);
  QExpr& operator-=(const QExpr& o);
  QExpr& operator*=(const QExpr& o);
  friend QExpr operator+(QExpr a, const QExpr& b) { return a += b; }
  friend QExpr operator-(QExpr a, const QExpr& b) { return a -= b; }
  friend QExpr operator*(QExpr a, const QExpr& b) { return a *= b; }
  QExpr operator-() const;
  friend bool operator==(const QExpr&, const QExpr&) = default;

  QExpr pow(unsigned n) const;
  /// Division by a nonzero monomial c * q^e (no L factor).
  QExpr divided_by(const QExpr& monomial) const;
  /// Rational power of a monomial q^e (coefficient 1, no L), or of a
  /// monomial c*q^e when the power is an integer.
  QExpr pow_rational(const Rational& r) const;
  /// Replaces L by (factor * L); used for encoding log_b q = L / log2 b.
  QExpr scale_log(const Rational& factor) const;

  /// Canonical text that parse_expr reads back to an equal expression.
  std::string str() const;

private:
  void add_term(const Key& k, const Rational& c);
  Terms terms_;
};

/// Grammar: sums, products, quotients by monomials, unary minus, integers,
/// q, L, parentheses, and powers `^n`, `^(a/b)`, `^(-a/b)`. Rational
/// powers apply only to monomials. Throws InputError with the position.
QExpr parse_expr(std::string_view text);

/// Bracketing interval of e(q) for an integer q >= 2. Roots and logarithms
/// are computed to about `bits` binary digits; the result is a point
/// interval when every term is rational at q.
Interval eval_at(const QExpr& e, const BigInt& q, unsigned bits = 64);

/// Refines until the width is at most eps (or precision reaches 2^16 bits).
Interval eval_at(const QExpr& e, const BigInt& q, const Rational& eps);

/// Sign of e(q): -1, 0 or 1, or nullopt when intervals up to 4096 bits do
/// not separate the value from zero.
std::optional<int> sign_at(const QExpr& e, const BigInt& q);

/// Interval for log2(q) with `bits` fractional bits.
Interval log2_interval(const BigInt& q, unsigned bits);

}  // namespace xprim
