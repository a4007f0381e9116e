#include "xprim/perm/orbit.hpp"

#include <algorithm>

namespace xprim {

Permutation OrbitRecord::transversal(Point x, std::span<const Permutation> gens) const {
  if (!contains(x)) throw InputError("transversal: point not in orbit");
  std::size_t n = label_.size();
  // Collect the word from x back to the seed, then apply it forwards.
  std::vector<int> word;
  for (Point y = x; label_[y] != kRoot; y = pred_[y]) word.push_back(label_[y]);
  Permutation t(n);
  for (auto it = word.rbegin(); it != word.rend(); ++it) compose_into(t, t, gens[*it]);
  return t;
}

OrbitRecord orbit(std::span<const Permutation> gens, Point seed, std::size_t degree) {
  std::size_t n = gens.empty() ? degree : gens.front().degree();
  if (seed >= n) throw InputError("orbit: seed out of range");
  for (const auto& g : gens)
    if (g.degree() != n) throw DegreeMismatch("orbit: generators of different degree");
  OrbitRecord rec;
  rec.seed_ = seed;
  rec.label_.assign(n, OrbitRecord::kAbsent);
  rec.pred_.assign(n, 0);
  rec.label_[seed] = OrbitRecord::kRoot;
  rec.pred_[seed] = seed;
  rec.points_.push_back(seed);
  for (std::size_t head = 0; head < rec.points_.size(); ++head) {
    Point x = rec.points_[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Point y = gens[k][x];
      if (rec.label_[y] == OrbitRecord::kAbsent) {
        rec.label_[y] = static_cast<int>(k);
        rec.pred_[y] = x;
        rec.points_.push_back(y);
      }
    }
  }
  return rec;
}

std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens, std::size_t degree) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree, false);
  for (Point s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb{s};
    seen[s] = true;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      Point x = orb[head];
      for (const auto& g : gens) {
        Point y = g[x];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace xprim
