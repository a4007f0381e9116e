#include "xprim/structure/blocks.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "xprim/perm/orbit.hpp"

namespace xprim {

namespace {

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Point{0}); }

  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller root so representatives are deterministic.
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<Point> parent_;
};

}  // namespace

bool permutes_cells(std::span<const Permutation> gens, const std::vector<std::vector<Point>>& cells) {
  if (gens.empty() || cells.empty()) return true;
  std::size_t n = gens.front().degree();
  std::vector<std::size_t> cell(n, cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (Point x : cells[i]) cell[x] = i;
  for (const auto& s : gens)
    for (const auto& c : cells) {
      std::size_t target = cell[s[c.front()]];
      for (Point x : c)
        if (cell[s[x]] != target) return false;
    }
  return true;
}

BlockSystem BlockSystem::verified(std::vector<std::vector<Point>> cells, std::span<const Permutation> gens,
                                  std::pair<Point, Point> seed) {
  if (cells.size() < 2) throw std::logic_error("block system needs at least two cells");
  std::size_t n = 0;
  for (auto& c : cells) {
    std::sort(c.begin(), c.end());
    n += c.size();
  }
  std::sort(cells.begin(), cells.end());
  std::size_t size = cells.front().size();
  if (size < 2) throw std::logic_error("block system with singleton cells");
  std::vector<bool> seen(n, false);
  for (const auto& c : cells) {
    if (c.size() != size) throw std::logic_error("block system cells of unequal size");
    for (Point x : c) {
      if (x >= n || seen[x]) throw std::logic_error("block system is not a partition");
      seen[x] = true;
    }
  }
  if (!permutes_cells(gens, cells)) throw std::logic_error("block system not invariant");
  BlockSystem bs;
  bs.block_size = size;
  bs.blocks = std::move(cells);
  bs.seed = seed;
  return bs;
}

std::vector<std::size_t> BlockSystem::cell_of(std::size_t degree) const {
  std::vector<std::size_t> out(degree, blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Point x : blocks[i]) out[x] = i;
  return out;
}

bool is_transitive(const PermGroup& g) { return orbit(g.generators(), 0).size() == g.degree(); }

std::optional<BlockSystem> minimal_block(const PermGroup& g, Point a, Point b) {
  const std::size_t n = g.degree();
  if (a == b) throw InputError("minimal_block: seed points must differ");
  if (a >= n || b >= n) throw InputError("minimal_block: seed point out of range");
  if (!is_transitive(g)) throw InputError("minimal_block: group is not transitive");
  UnionFind uf(n);
  std::deque<std::pair<Point, Point>> queue;
  uf.unite(a, b);
  queue.emplace_back(a, b);
  std::size_t classes = n - 1;
  while (!queue.empty() && classes > 1) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators()) {
      Point u = uf.find(s[x]);
      Point v = uf.find(s[y]);
      if (u != v) {
        uf.unite(u, v);
        --classes;
        queue.emplace_back(u, v);
      }
    }
  }
  if (classes == 1) return std::nullopt;
  std::vector<std::vector<Point>> cells;
  std::vector<std::size_t> index(n, n);
  for (Point x = 0; x < n; ++x) {
    Point r = uf.find(x);
    if (index[r] == n) {
      index[r] = cells.size();
      cells.emplace_back();
    }
    cells[index[r]].push_back(x);
  }
  return BlockSystem::verified(std::move(cells), g.generators(), {a, b});
}

PrimitivityVerdict is_primitive(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n < 2) throw InputError("is_primitive: degree must be at least 2");
  if (!is_transitive(g)) return {Primitivity::intransitive, std::nullopt};
  if (is_prime(n)) return {Primitivity::primitive, std::nullopt};
  // A block through 0 is a union of orbits of the point stabilizer, so one
  // seed per stabilizer orbit suffices.
  const Point zero = 0;
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&zero, 1));
  for (const auto& orb : orbits(h.generators(), n)) {
    if (orb.front() == 0) continue;
    if (auto bs = minimal_block(g, 0, orb.front())) return {Primitivity::imprimitive, std::move(bs)};
  }
  return {Primitivity::primitive, std::nullopt};
}

}  // namespace xprim
