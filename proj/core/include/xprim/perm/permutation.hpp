#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xprim/common.hpp"

namespace xprim {

/// A bijection of {0, ..., n-1}, stored as its image list.
///
/// Products follow the "left factor acts first" convention used throughout
/// the library: (p * q)(i) = q(p(i)).
class Permutation {
public:
  Permutation() = default;

  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree);

  /// Throws InputError unless `images` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds from disjoint 0-based cycles; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point i) const noexcept { return images_[i]; }
  Point image(Point i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Smallest moved point, or degree() when this is the identity.
  Point first_moved() const noexcept;

  /// Order as an element (lcm of cycle lengths).
  BigInt order() const;

  /// Disjoint cycles of length > 1, each starting at its least point.
  std::vector<std::vector<Point>> cycles() const;

  /// 1-based cycle notation, e.g. "(1,2,3)(4,5)"; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  std::size_t hash() const noexcept;

private:
  std::vector<Point> images_;
  friend Permutation compose(const Permutation&, const Permutation&);
  friend void compose_into(Permutation&, const Permutation&, const Permutation&);
};

/// The product applying `p` first and then `q`. Throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);

/// out = p * q without reallocating `out` when its degree already matches.
void compose_into(Permutation& out, const Permutation& p, const Permutation& q);

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// x^{-1} g x, i.e. conjugation with the right-action convention.
Permutation conjugate(const Permutation& g, const Permutation& x);

Permutation power(const Permutation& p, long long e);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

}  // namespace xprim
