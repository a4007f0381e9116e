#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xprim/perm/perm_group.hpp"

namespace xprim {

/// Random search for a subgroup <a, b> of a given order, with a of order
/// `order_a`, b of order `order_b` and (optionally) ab of order `order_ab`.
struct SubgroupSearchOptions {
  std::size_t max_trials = 200000;
  std::uint64_t seed = 1;
  unsigned order_a = 2;
  unsigned order_b = 3;
  std::optional<unsigned> order_ab;
};

/// Returns the first candidate whose generated subgroup has exactly the
/// target order, or nullopt after max_trials candidates.
std::optional<PermGroup> find_two_generated_subgroup(const PermGroup& g, const BigInt& target_order,
                                                     const SubgroupSearchOptions& opts = {});

/// Smallest subgroup of `h` containing the given elements and normalized by h.
PermGroup normal_closure(const PermGroup& h, const std::vector<Permutation>& xs);

/// Checks that every nontrivial conjugacy class of h generates h as a normal
/// subgroup (and h is nonabelian or of prime order). Enumerates h, so
/// ResourceError beyond `cap` elements.
bool is_simple(const PermGroup& h, const BigInt& cap = BigInt(200000));

}  // namespace xprim
