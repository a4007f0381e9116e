#pragma once

#include <cstdint>
#include <vector>

#include "xprim/common.hpp"

namespace xprim {

/// GF(p^k) with elements encoded as integers 0..q-1 whose base-p digits are
/// the polynomial coefficients (least significant digit = constant term).
/// Arithmetic is table driven, so q is limited to 1024.
class FiniteField {
public:
  using Elem = std::uint32_t;
  static constexpr std::uint32_t kMaxOrder = 1024;

  /// `modulus` lists coefficients from the constant term up, monic of
  /// degree k. Throws InputError if p is not prime or the modulus is
  /// reducible.
  FiniteField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

  /// Field of order q with the fixed default modulus (x^2+x+1 for 4,
  /// x^3+x+1 for 8, x^2+1 for 9, x^4+x+1 for 16, x^2+x+2 for 25; otherwise
  /// the least irreducible monic polynomial in base-p order).
  static FiniteField of_order(std::uint32_t q);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  /// Throws InputError for zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Least element (in integer encoding) generating the multiplicative group.
  Elem primitive_element() const noexcept { return primitive_; }
  std::uint64_t multiplicative_order(Elem a) const;
  bool is_square(Elem a) const;
  /// x -> x^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Additive basis 1, x, ..., x^{k-1}.
  std::vector<Elem> additive_basis() const;

  /// Polynomial arithmetic helpers over GF(p) used for irreducibility.
  static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

private:
  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem primitive_ = 1;
};

bool is_prime_u64(std::uint64_t n);

/// (p, k) with q = p^k, or nullopt-like {0,0} when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

}  // namespace xprim
