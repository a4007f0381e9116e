#include "xprim/catalog/finite_field.hpp"

#include <map>
#include <stdexcept>

namespace xprim {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), k};
}

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo a nonzero b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * b[i]) % p);
    trim(a);
  }
  return a;
}

}  // namespace

bool FiniteField::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t k = f.size() - 1;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!is_prime_u64(p)) throw InputError("finite field: characteristic is not prime");
  if (k == 0) throw InputError("finite field: degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw ResourceError("finite field: order exceeds table limit");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (modulus_.size() != k + 1 || modulus_.back() != 1) throw InputError("finite field: modulus must be monic of degree k");
  for (auto c : modulus_)
    if (c >= p) throw InputError("finite field: modulus coefficient out of range");
  if (!is_irreducible(p, modulus_)) throw InputError("finite field: modulus is reducible");

  auto digits = [&](Elem a) {
    Poly v(k_);
    for (std::uint32_t i = 0; i < k_; ++i, a /= p_) v[i] = a % p_;
    return v;
  };
  auto encode = [&](const Poly& v) {
    Elem a = 0;
    for (std::uint32_t i = k_; i-- > 0;) a = a * p_ + (i < v.size() ? v[i] : 0);
    return a;
  };
  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a) {
    Poly da = digits(a);
    Poly na(k_);
    for (std::uint32_t i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = encode(na);
    for (Elem b = 0; b < q_; ++b) {
      Poly db = digits(b);
      Poly s(k_);
      for (std::uint32_t i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = encode(s);
      Poly prod(2 * k_, 0);
      for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j)
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
      mul_[a * q_ + b] = encode(poly_mod(prod, modulus_, p_));
    }
  }
  for (Elem a = 1; a < q_; ++a)
    for (Elem b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
  for (Elem a = 1; a < q_; ++a)
    if (multiplicative_order(a) == q_ - 1) {
      primitive_ = a;
      break;
    }
  // Lagrange spot check: every nonzero element satisfies a^(q-1) = 1.
  if (pow(q_ > 2 ? 2 % q_ : 1, q_ - 1) != 1 || multiplicative_order(primitive_) != q_ - 1)
    throw std::logic_error("finite field: multiplicative group check failed");
}

FiniteField FiniteField::of_order(std::uint32_t q) {
  static const std::map<std::uint32_t, std::vector<std::uint32_t>> kDefaults = {
      {4, {1, 1, 1}}, {8, {1, 1, 0, 1}}, {9, {1, 0, 1}}, {16, {1, 1, 0, 0, 1}}, {25, {2, 1, 1}}};
  auto [p, k] = prime_power(q);
  if (p == 0) throw InputError("finite field: " + std::to_string(q) + " is not a prime power");
  if (auto it = kDefaults.find(q); it != kDefaults.end()) return FiniteField(p, k, it->second);
  if (k == 1) return FiniteField(p, 1, {0, 1});
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> m(k + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i, c /= p) m[i] = static_cast<std::uint32_t>(c % p);
    m[k] = 1;
    if (is_irreducible(p, m)) return FiniteField(p, k, m);
  }
  throw std::logic_error("finite field: no irreducible polynomial found");
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw InputError("finite field: inverse of zero");
  return inv_[a];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

std::uint64_t FiniteField::multiplicative_order(Elem a) const {
  if (a == 0) return 0;
  std::uint64_t n = 1;
  for (Elem x = a; x != 1; x = mul(x, a)) ++n;
  return n;
}

bool FiniteField::is_square(Elem a) const {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

std::vector<FiniteField::Elem> FiniteField::additive_basis() const {
  std::vector<Elem> b;
  Elem x = 1;
  for (std::uint32_t i = 0; i < k_; ++i, x *= p_) b.push_back(x);
  return b;
}

}  // namespace xprim
