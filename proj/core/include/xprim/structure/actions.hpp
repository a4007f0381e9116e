#pragma once

#include <optional>
#include <span>
#include <vector>

#include "xprim/perm/perm_group.hpp"
#include "xprim/structure/blocks.hpp"

namespace xprim {

struct ActionResult {
  PermGroup image;
  BigInt kernel_order;
  bool faithful = true;
  /// Source point for each image point.
  std::vector<Point> domain;
};

/// Action on an invariant subset, re-indexed in ascending point order.
/// The kernel is the pointwise stabilizer of the subset.
/// Throws InputError if the subset is not invariant.
ActionResult induced_action(const PermGroup& g, std::span<const Point> domain);

struct CosetActionOptions {
  std::size_t index_cap = 1000000;
};

/// Action of g on the right cosets of h, Hr -> Hrg. Point 0 is the coset h.
/// Throws InputError if h is not contained in g, ResourceError if
/// |g : h| exceeds the cap.
PermGroup coset_action(const PermGroup& g, const PermGroup& h, CosetActionOptions opts = {});

/// Same, also returning one representative per coset.
struct CosetTable {
  PermGroup action;
  std::vector<Permutation> representatives;
};
CosetTable coset_table(const PermGroup& g, const PermGroup& h, CosetActionOptions opts = {});

enum class Maximality { maximal, non_maximal, resource };

struct MaximalityVerdict {
  Maximality kind = Maximality::maximal;
  /// Blocks of the coset action; the block through point 0 lists the
  /// cosets making up an intermediate subgroup.
  std::optional<BlockSystem> witness;
};

/// Maximality of h in g via primitivity of the coset action.
/// Throws InputError when h is not a proper subgroup.
MaximalityVerdict is_maximal(const PermGroup& g, const PermGroup& h, CosetActionOptions opts = {});

}  // namespace xprim
