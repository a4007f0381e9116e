#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xprim/perm/perm_group.hpp"

namespace xprim {

/// A nontrivial block system of a transitive group.
struct BlockSystem {
  std::size_t block_size = 0;
  /// Cells sorted internally, ordered by least point.
  std::vector<std::vector<Point>> blocks;
  std::pair<Point, Point> seed{0, 0};

  /// Normalizes the cells and checks that they form a nontrivial
  /// equal-size partition permuted setwise by every generator.
  /// Throws std::logic_error otherwise.
  static BlockSystem verified(std::vector<std::vector<Point>> cells, std::span<const Permutation> gens,
                              std::pair<Point, Point> seed);

  /// Index of the cell containing each point.
  std::vector<std::size_t> cell_of(std::size_t degree) const;
};

/// True iff every generator maps each cell onto a cell.
bool permutes_cells(std::span<const Permutation> gens, const std::vector<std::vector<Point>>& cells);

bool is_transitive(const PermGroup& g);

/// Finest block system whose block contains {a, b}; nullopt when that block
/// is the whole domain. Throws InputError if a == b or g is intransitive.
std::optional<BlockSystem> minimal_block(const PermGroup& g, Point a, Point b);

enum class Primitivity { primitive, imprimitive, intransitive };

struct PrimitivityVerdict {
  Primitivity kind = Primitivity::primitive;
  std::optional<BlockSystem> witness;
};

PrimitivityVerdict is_primitive(const PermGroup& g);

}  // namespace xprim
