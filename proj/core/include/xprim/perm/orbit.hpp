#pragma once

#include <span>
#include <vector>

#include "xprim/perm/permutation.hpp"

namespace xprim {

/// An orbit together with its Schreier vector.
///
/// For every orbit point x other than the seed, `label(x)` is the index of
/// a generator s with s(pred(x)) = x. Following predecessors from any point
/// reaches the seed.
class OrbitRecord {
public:
  static constexpr int kRoot = -1;
  static constexpr int kAbsent = -2;

  Point seed() const noexcept { return seed_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(Point x) const noexcept { return x < label_.size() && label_[x] != kAbsent; }
  int label(Point x) const noexcept { return label_[x]; }
  Point pred(Point x) const noexcept { return pred_[x]; }

  /// An element of <gens> mapping the seed to `x`.
  Permutation transversal(Point x, std::span<const Permutation> gens) const;

private:
  friend OrbitRecord orbit(std::span<const Permutation>, Point, std::size_t);
  Point seed_ = 0;
  std::vector<Point> points_;
  std::vector<int> label_;
  std::vector<Point> pred_;
};

/// Breadth-first orbit of `seed` under `gens`. `degree` is only consulted
/// when `gens` is empty. Throws InputError if the seed is out of range.
OrbitRecord orbit(std::span<const Permutation> gens, Point seed, std::size_t degree = 0);

/// Orbit partition of the domain under `gens`; orbits ordered by least point,
/// points within an orbit ascending.
std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens, std::size_t degree);

}  // namespace xprim
