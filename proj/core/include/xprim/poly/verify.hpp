#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xprim/poly/qexpr.hpp"

namespace xprim {

/// Restriction on the admissible field sizes q = p^k.
struct PrimeRestriction {
  enum class Kind { none, characteristic, odd_power_of, min_characteristic, odd_characteristic };
  Kind kind = Kind::none;
  unsigned long p = 0;  // characteristic, base of the odd power, or lower bound

  /// Accepts "", "none", "p=P", "q=P^(2m+1)", "p>=N", "p odd".
  static PrimeRestriction parse(const std::string& text);
  bool admits(const BigInt& q) const;
  std::string str() const;
};

/// Admissible prime powers q with lo <= q < hi, ascending.
std::vector<BigInt> admissible_prime_powers(const BigInt& lo, const BigInt& hi,
                                            const PrimeRestriction& r);

struct PositivityResult {
  enum class Kind { proven, checked_up_to, counterexample };
  Kind kind = Kind::counterexample;
  /// checked_up_to: the last q tested; counterexample: the failing q.
  BigInt q = 0;
  /// How positivity was established (proven only).
  std::string method;
};

struct VerifyOptions {
  PrimeRestriction restriction;
  /// Exhaustive exact checks run up to this q when the symbolic argument fails.
  BigInt fallback_limit = BigInt(1) << 20;
};

/// Decides e(q) > 0 for all admissible prime powers q >= q0.
///
/// Exact evaluation covers small q; beyond a threshold T, log terms are
/// bounded (L <= q^(1/2) for T >= 16, L <= q^(1/4) for T >= 65536 in
/// negative terms, L >= floor(log2 T) in positive terms), q is replaced by
/// s^d with d clearing exponent denominators, and the resulting polynomial
/// is shown to have nonnegative coefficients after a shift s -> s + s0.
/// Zero values count as failures.
PositivityResult verify_positive(const QExpr& e, const BigInt& q0, const VerifyOptions& opts = {});

/// Bound certificate: claim(q) - sum_i A_i(q)^2 / B_i(q) > 0 for q >= q0.
struct BoundCertificate {
  std::string label;
  BigInt q0 = 2;
  PrimeRestriction restriction;
  std::vector<std::pair<QExpr, QExpr>> pairs;
  QExpr claim;
  std::string anchor;
  std::vector<std::string> notes;
};

/// Format: one `key: value` per line (`label`, `q0`, `prime_restriction`,
/// `pair: A ; B` repeated, `claim`, `anchor`, `note` repeated), # comments.
BoundCertificate parse_certificate_text(const std::string& text);
BoundCertificate parse_certificate_file(const std::filesystem::path& path);
std::string write_certificate_text(const BoundCertificate& c);

struct CertificateResult {
  enum class Kind { proven, checked_up_to, refuted };
  Kind kind = Kind::refuted;
  BigInt q = 0;
  std::string method;
  /// claim * prod B - sum A_i^2 prod_{j != i} B_j
  QExpr numerator;
};

/// Verifies positivity of every B_i (InputError if that fails), then of the
/// cleared numerator.
CertificateResult verify_certificate(const BoundCertificate& c, const VerifyOptions& base_opts = {});

/// Interval of claim - sum A_i^2 / B_i at q, for spot checks and reports.
Interval certificate_value(const BoundCertificate& c, const BigInt& q, unsigned bits = 128);

std::string to_string(PositivityResult::Kind k);
std::string to_string(CertificateResult::Kind k);

}  // namespace xprim
