#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xprim/perm/perm_group.hpp"
#include "xprim/structure/blocks.hpp"

namespace xprim {

struct Suborbit {
  Point representative = 0;
  std::size_t size = 0;
  /// Order of the two-point stabilizer G_{alpha, representative}.
  BigInt stabilizer_order;
  bool faithful = true;
  bool primitive = true;
  /// Blocks of H on this suborbit, in original point labels.
  std::optional<BlockSystem> witness;
};

enum class EPVerdict { extremely_primitive, not_ep };

struct EPReport {
  std::size_t degree = 0;
  Point alpha = 0;
  BigInt group_order;
  BigInt stabilizer_order;
  bool g_primitive = false;
  std::size_t rank = 0;
  /// Ordered by least point; the trivial suborbit {alpha} comes first.
  std::vector<Suborbit> suborbits;
  EPVerdict verdict = EPVerdict::not_ep;
  /// Empty for extremely primitive; otherwise "group-imprimitive",
  /// "suborbit-imprimitive" or "regular".
  std::string reason;
  /// Representative of the first failing suborbit, if any.
  std::optional<Point> failing_suborbit;
  std::vector<Point> manning_violations;

  std::vector<std::size_t> subdegrees() const;
};

struct EPOptions {
  std::size_t threads = 1;
};

/// Extreme-primitivity analysis of G with H = G_alpha.
///
/// A nontrivial suborbit of size 1 counts as not primitive, and as not
/// faithful when H is nontrivial. Analysis continues when G itself is
/// imprimitive; the verdict is then not_ep with reason "group-imprimitive".
/// Throws InputError for intransitive G or degree < 2.
EPReport ep_analyze(const PermGroup& g, Point alpha, const EPOptions& opts = {});

/// Stable JSON form; big integers are decimal strings, points are 0-based.
nlohmann::json to_json(const EPReport& r);
nlohmann::json to_json(const BlockSystem& b);

enum class IntersectionVerdict { maximal, non_maximal, x_in_h };

/// Whether G_alpha ∩ G_{alpha^x} is maximal in G_alpha. Throws InputError
/// if x is not in G.
IntersectionVerdict intersection_maximality(const PermGroup& g, Point alpha, const Permutation& x);

struct EParameterCaps {
  std::size_t max_degree_multi = 60;
  std::size_t max_subsets_per_level = 1000000;
};

struct EParameterResult {
  std::size_t value = 0;
  /// True when every level up to kmax passed, so e(G) may exceed `value`.
  bool truncated = false;
};

/// Largest k <= kmax such that for every Delta with |Delta| <= k the
/// pointwise stabilizer G_Delta is nontrivial and primitive on each of its
/// orbits outside Delta. Only sets containing point 0 are examined, which
/// suffices because G is transitive. Throws ResourceError past the caps and
/// InputError if g is not primitive.
EParameterResult e_parameter(const PermGroup& g, std::size_t kmax, const EParameterCaps& caps = {});

struct Feasibility {
  bool feasible = false;
  /// Multiplicity of each index in the witness (same order as the input).
  std::vector<std::size_t> counts;
};

/// Decides whether non-negative a_i exist with sum a_i = rank - 1 and
/// sum a_i n_i = degree - 1.
Feasibility char_feasibility(std::size_t rank, const std::vector<BigInt>& indices, const BigInt& degree);

/// |Z(H)| by enumeration, or nullopt when |H| exceeds the cap.
std::optional<BigInt> center_order(const PermGroup& h, const BigInt& cap = BigInt(1000000));

}  // namespace xprim
