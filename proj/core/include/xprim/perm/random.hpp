#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "xprim/perm/permutation.hpp"

namespace xprim {

/// Explicitly seeded random stream. Worker streams are derived from a master
/// seed and a worker index so parallel searches stay reproducible.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t worker);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound).
  std::size_t below(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// Product-replacement generator of pseudo-random group elements with an
/// accumulator slot ("rattle" variant).
///
/// Uses max(10, 2 * #gens) slots and 200 burn-in steps; each call to
/// `next()` performs one replacement step and returns the accumulator.
class ProductReplacement {
public:
  static constexpr std::size_t kMinSlots = 10;
  static constexpr std::size_t kBurnIn = 200;

  ProductReplacement(std::span<const Permutation> gens, std::size_t degree, RandomStream& rng);

  Permutation next();

private:
  void step();

  RandomStream& rng_;
  std::vector<Permutation> slots_;
  Permutation accumulator_;
  bool trivial_ = false;
};

}  // namespace xprim
