#include "xprim/perm/stabilizer_chain.hpp"

#include <algorithm>

#include "xprim/perm/random.hpp"

namespace xprim {

namespace {

bool fixes_all(const Permutation& g, std::span<const Point> pts) {
  return std::all_of(pts.begin(), pts.end(), [&](Point b) { return g[b] == b; });
}

}  // namespace

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& l : levels_) b.push_back(l.base_point);
  return b;
}

void StabilizerChain::add_level(Point b) {
  Level l;
  l.base_point = b;
  l.label.assign(degree_, kAbsent);
  l.label[b] = kRoot;
  l.orbit.push_back(b);
  levels_.push_back(std::move(l));
}

void StabilizerChain::recompute_orbit(std::size_t i) {
  Level& l = levels_[i];
  std::fill(l.label.begin(), l.label.end(), kAbsent);
  l.orbit.clear();
  l.label[l.base_point] = kRoot;
  l.orbit.push_back(l.base_point);
  for (std::size_t head = 0; head < l.orbit.size(); ++head) {
    Point x = l.orbit[head];
    for (std::size_t k = 0; k < l.gens.size(); ++k) {
      Point y = l.gens[k][x];
      if (l.label[y] == kAbsent) {
        l.label[y] = static_cast<int>(k);
        l.orbit.push_back(y);
      }
    }
  }
}

void StabilizerChain::refresh_order() {
  order_ = 1;
  for (const auto& l : levels_) order_ *= static_cast<unsigned long>(l.orbit.size());
}

void StabilizerChain::add_strong_generator(const Permutation& h, std::size_t from, std::size_t to) {
  if (to == levels_.size()) add_level(h.first_moved());
  Permutation inv = h.inverse();
  from = std::min(from, to);
  for (std::size_t k = from; k <= to; ++k) {
    levels_[k].gens.push_back(h);
    levels_[k].inverses.push_back(inv);
    recompute_orbit(k);
  }
  refresh_order();
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t start) const {
  if (g.degree() != degree_) throw DegreeMismatch("sift: degree mismatch");
  Permutation tmp;
  for (std::size_t i = start; i < levels_.size(); ++i) {
    const Level& l = levels_[i];
    Point x = g[l.base_point];
    if (l.label[x] == kAbsent) return {std::move(g), i};
    while (l.label[x] != kRoot) {
      const Permutation& inv = l.inverses[static_cast<std::size_t>(l.label[x])];
      compose_into(tmp, g, inv);
      std::swap(tmp, g);
      x = inv[x];
    }
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw DegreeMismatch("contains: degree mismatch");
  auto [res, lvl] = sift(g);
  return lvl == levels_.size() && res.is_identity();
}

Permutation StabilizerChain::transversal(std::size_t i, Point x) const {
  const Level& l = levels_.at(i);
  if (l.label[x] == kAbsent) throw InputError("transversal: point not in basic orbit");
  std::vector<int> word;
  for (Point y = x; l.label[y] != kRoot;) {
    int k = l.label[y];
    word.push_back(k);
    y = l.inverses[static_cast<std::size_t>(k)][y];
  }
  Permutation t(degree_);
  for (auto it = word.rbegin(); it != word.rend(); ++it) compose_into(t, t, l.gens[static_cast<std::size_t>(*it)]);
  return t;
}

std::vector<Permutation> StabilizerChain::stabilizer_generators(std::size_t i) const {
  if (i < levels_.size() && !levels_[i].gens.empty()) return levels_[i].gens;
  return {Permutation(degree_)};
}

StabilizerChain StabilizerChain::tail(std::size_t i) const {
  StabilizerChain c;
  c.degree_ = degree_;
  for (std::size_t k = i; k < levels_.size(); ++k) c.levels_.push_back(levels_[k]);
  c.refresh_order();
  return c;
}

bool StabilizerChain::schreier_pass(std::size_t cap) {
  long i = static_cast<long>(levels_.size()) - 1;
  while (i >= 0) {
    bool changed = false;
    const std::size_t li = static_cast<std::size_t>(i);
    for (std::size_t oi = 0; oi < levels_[li].orbit.size() && !changed; ++oi) {
      const Point x = levels_[li].orbit[oi];
      const Permutation ux = transversal(li, x);
      for (std::size_t s = 0; s < levels_[li].gens.size(); ++s) {
        const Level& l = levels_[li];
        Point y = l.gens[s][x];
        if (l.label[y] == static_cast<int>(s) && l.inverses[s][y] == x) continue;
        auto [res, j] = sift(compose(ux, l.gens[s]), li);
        if (j == levels_.size() && res.is_identity()) continue;
        std::size_t to = j;
        add_strong_generator(res, li + 1, to);
        if (levels_.back().gens.size() > cap)
          throw ResourceError("stabilizer chain: strong generator cap exceeded");
        i = static_cast<long>(to);
        changed = true;
        break;
      }
    }
    if (!changed) --i;
  }
  return true;
}

StabilizerChain StabilizerChain::build(std::size_t degree, std::span<const Permutation> gens,
                                       const ChainOptions& opts) {
  if (degree > opts.max_degree) throw ResourceError("stabilizer chain: degree cap exceeded");
  StabilizerChain c;
  c.degree_ = degree;
  std::vector<bool> used(degree, false);
  for (Point b : opts.base_hint) {
    if (b >= degree) throw InputError("base hint point out of range");
    if (used[b]) throw InputError("base hint points must be distinct");
    used[b] = true;
    c.add_level(b);
  }
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DegreeMismatch("build_chain: generator degree mismatch");
    if (!g.is_identity() && std::find(nontrivial.begin(), nontrivial.end(), g) == nontrivial.end())
      nontrivial.push_back(g);
  }
  if (nontrivial.empty()) {
    c.refresh_order();
    if (opts.known_order && *opts.known_order != 1)
      throw InputError("build_chain: known order does not match generators");
    return c;
  }
  for (const auto& g : nontrivial) {
    if (!fixes_all(g, c.base())) continue;
    c.add_level(g.first_moved());
  }
  for (std::size_t i = 0; i < c.levels_.size(); ++i) {
    auto prefix = c.base();
    prefix.resize(i);
    for (const auto& g : nontrivial) {
      if (!fixes_all(g, prefix)) continue;
      c.levels_[i].gens.push_back(g);
      c.levels_[i].inverses.push_back(g.inverse());
    }
    c.recompute_orbit(i);
  }
  c.refresh_order();

  auto done = [&] { return opts.known_order && c.order_ == *opts.known_order; };
  auto over = [&] { return opts.abort_above && c.order_ > *opts.abort_above; };

  if (opts.randomized && !done()) {
    RandomStream rng(opts.seed);
    ProductReplacement pr(nontrivial, degree, rng);
    std::size_t quiet = 0;
    while (quiet < opts.random_quiet_rounds && !done()) {
      if (opts.known_order && c.order_ > *opts.known_order)
        throw InputError("build_chain: generators exceed the stated group order");
      if (over()) {
        c.aborted_ = true;
        return c;
      }
      auto [res, j] = c.sift(pr.next());
      if (j == c.levels_.size() && res.is_identity()) {
        ++quiet;
        continue;
      }
      quiet = 0;
      c.add_strong_generator(res, 1, j);
      if (c.levels_.back().gens.size() > opts.max_strong_generators)
        throw ResourceError("stabilizer chain: strong generator cap exceeded");
    }
  }
  if (over()) {
    c.aborted_ = true;
    return c;
  }
  if (!done()) c.schreier_pass(opts.max_strong_generators);
  if (opts.known_order && c.order_ != *opts.known_order)
    throw InputError("build_chain: known order does not match generators");
  return c;
}

bool StabilizerChain::self_check() const {
  BigInt prod = 1;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& l = levels_[i];
    for (const auto& g : l.gens)
      for (std::size_t k = 0; k < i; ++k)
        if (g[levels_[k].base_point] != levels_[k].base_point) return false;
    for (Point x : l.orbit) {
      if (transversal(i, x)[l.base_point] != x) return false;
    }
    prod *= static_cast<unsigned long>(l.orbit.size());
  }
  return prod == order_;
}

}  // namespace xprim
