#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xprim/perm/permutation.hpp"

namespace xprim {

struct ChainOptions {
  /// Base points to place first, in order (levels are kept even if trivial).
  std::vector<Point> base_hint;
  /// When the group order is already known the randomized phase stops as soon
  /// as the product of basic orbit lengths reaches it; this is a complete
  /// verification because that product never exceeds the true order.
  std::optional<BigInt> known_order;
  /// Abort the randomized phase (and the whole build) once the orbit-length
  /// product exceeds this value. The chain is then incomplete; see
  /// `StabilizerChain::aborted()`.
  std::optional<BigInt> abort_above;
  std::size_t max_degree = std::size_t{1} << 20;
  std::size_t max_strong_generators = 1u << 16;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  /// Consecutive random elements sifting to the identity before the
  /// deterministic Schreier-generator pass takes over.
  std::size_t random_quiet_rounds = 24;
  bool randomized = true;
};

/// Base and strong generating set with Schreier vectors per level.
///
/// Level i has base point b_i, a generating set S_i of the pointwise
/// stabilizer of b_0..b_{i-1}, and the Schreier vector of b_i's orbit under
/// S_i. Every returned chain has passed the deterministic Schreier-generator
/// test, or matched a known group order.
class StabilizerChain {
public:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> gens;
    std::vector<Permutation> inverses;
    std::vector<int> label;  // generator index, kRoot or kAbsent per point
    std::vector<Point> orbit;
  };

  static constexpr int kRoot = -1;
  static constexpr int kAbsent = -2;

  StabilizerChain() = default;

  /// Runs (randomized, then deterministic) Schreier-Sims. Throws
  /// ResourceError when the degree or strong-generator cap is exceeded.
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> gens,
                               const ChainOptions& opts = {});

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_[i]; }
  std::vector<Point> base() const;
  const BigInt& order() const noexcept { return order_; }
  bool aborted() const noexcept { return aborted_; }

  /// Residue after sifting from `start`, and the level where sifting stopped
  /// (depth() if it passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start = 0) const;

  bool contains(const Permutation& g) const;

  /// Transversal element at level i mapping the base point to x.
  Permutation transversal(std::size_t i, Point x) const;

  /// Generators of the pointwise stabilizer of b_0..b_{i-1} (identity if none).
  std::vector<Permutation> stabilizer_generators(std::size_t i) const;

  /// The chain of the pointwise stabilizer of b_0..b_{i-1}: levels i.. of
  /// this chain, already verified.
  StabilizerChain tail(std::size_t i) const;

  /// Invariant check used by tests: every level's generators fix earlier
  /// base points and the order equals the product of orbit lengths.
  bool self_check() const;

private:
  void add_level(Point b);
  void recompute_orbit(std::size_t i);
  void add_strong_generator(const Permutation& h, std::size_t from, std::size_t to);
  void refresh_order();
  bool schreier_pass(std::size_t cap);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  BigInt order_ = 1;
  bool aborted_ = false;
};

}  // namespace xprim
