#include "xprim/perm/perm_group.hpp"

#include <algorithm>

namespace xprim {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens,
                     std::optional<BigInt> known_order)
    : degree_(degree), gens_(std::move(gens)), known_order_(std::move(known_order)),
      cache_(std::make_shared<Cache>()) {
  if (degree_ == 0) throw InputError("permutation group of degree 0");
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DegreeMismatch("generator degree differs from group degree");
  if (gens_.empty()) gens_.emplace_back(degree_);
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens, StabilizerChain chain)
    : PermGroup(degree, std::move(gens)) {
  if (chain.degree() != degree_) throw DegreeMismatch("chain degree differs from group degree");
  known_order_ = chain.order();
  cache_->chain = std::move(chain);
}

const StabilizerChain& PermGroup::chain() const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->chain) {
    ChainOptions opts;
    opts.known_order = known_order_;
    cache_->chain = StabilizerChain::build(degree_, gens_, opts);
  }
  return *cache_->chain;
}

bool PermGroup::contains(const Permutation& p) const { return chain().contains(p); }

bool PermGroup::is_trivial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Permutation& g) { return g.is_identity(); });
}

StabilizerChain build_chain(const PermGroup& g, std::span<const Point> base_hint) {
  ChainOptions opts;
  opts.base_hint.assign(base_hint.begin(), base_hint.end());
  opts.known_order = g.known_order();
  return StabilizerChain::build(g.degree(), g.generators(), opts);
}

bool contains(const StabilizerChain& chain, const Permutation& p) { return chain.contains(p); }

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> pts) {
  for (Point p : pts)
    if (p >= g.degree()) throw InputError("pointwise_stabilizer: point out of range");
  ChainOptions opts;
  opts.base_hint.assign(pts.begin(), pts.end());
  opts.known_order = g.order();
  StabilizerChain full = StabilizerChain::build(g.degree(), g.generators(), opts);
  StabilizerChain sub = full.tail(pts.size());
  std::vector<Permutation> gens;
  if (pts.size() < full.depth()) gens = full.level(pts.size()).gens;
  return PermGroup(g.degree(), std::move(gens), std::move(sub));
}

Permutation random_element(const PermGroup& g, RandomStream& rng) {
  ProductReplacement pr(g.generators(), g.degree(), rng);
  return pr.next();
}

PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens) {
  for (const auto& s : gens)
    if (!g.contains(s)) throw InputError("subgroup generator is not contained in the group");
  return PermGroup(g.degree(), std::move(gens));
}

}  // namespace xprim
