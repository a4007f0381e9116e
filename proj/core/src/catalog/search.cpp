#include "xprim/catalog/search.hpp"

#include <unordered_set>

#include "xprim/perm/enumerate.hpp"
#include "xprim/perm/random.hpp"

namespace xprim {

namespace {

std::optional<Permutation> element_of_order(const Permutation& x, unsigned k) {
  BigInt o = x.order();
  if (o % k != 0) return std::nullopt;
  BigInt e = o / k;
  if (!e.fits_slong_p()) return std::nullopt;
  return power(x, e.get_si());
}

}  // namespace

std::optional<PermGroup> find_two_generated_subgroup(const PermGroup& g, const BigInt& target_order,
                                                     const SubgroupSearchOptions& opts) {
  RandomStream rng(opts.seed);
  ProductReplacement pr(g.generators(), g.degree(), rng);
  for (std::size_t t = 0; t < opts.max_trials; ++t) {
    auto a = element_of_order(pr.next(), opts.order_a);
    if (!a) continue;
    std::optional<Permutation> b;
    for (int tries = 0; tries < 16 && !b; ++tries) b = element_of_order(pr.next(), opts.order_b);
    if (!b) continue;
    if (opts.order_ab && compose(*a, *b).order() != *opts.order_ab) continue;
    std::vector<Permutation> gens{*a, *b};
    ChainOptions co;
    co.abort_above = target_order;
    co.seed = opts.seed + t;
    auto chain = StabilizerChain::build(g.degree(), gens, co);
    if (chain.aborted() || chain.order() != target_order) continue;
    return PermGroup(g.degree(), std::move(gens), std::move(chain));
  }
  return std::nullopt;
}

PermGroup normal_closure(const PermGroup& h, const std::vector<Permutation>& xs) {
  std::vector<Permutation> gens;
  for (const auto& x : xs)
    if (!x.is_identity()) gens.push_back(x);
  if (gens.empty()) return PermGroup(h.degree(), {});
  for (;;) {
    PermGroup n(h.degree(), gens);
    const auto& chain = n.chain();
    bool grew = false;
    const std::size_t count = gens.size();
    for (std::size_t i = 0; i < count && !grew; ++i)
      for (const auto& s : h.generators()) {
        Permutation c = conjugate(gens[i], s);
        if (!chain.contains(c)) {
          gens.push_back(std::move(c));
          grew = true;
          break;
        }
      }
    if (!grew) return n;
  }
}

bool is_simple(const PermGroup& h, const BigInt& cap) {
  const BigInt order = h.order();
  if (order == 1) return false;
  auto elems = all_elements(h, cap);
  std::unordered_set<Permutation, PermutationHash> seen;
  for (const auto& x : elems) {
    if (x.is_identity() || seen.count(x)) continue;
    // mark the conjugacy class of x
    std::vector<Permutation> cls{x};
    seen.insert(x);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (const auto& s : h.generators()) {
        Permutation c = conjugate(cls[i], s);
        if (seen.insert(c).second) cls.push_back(std::move(c));
      }
    if (normal_closure(h, {x}).order() != order) return false;
  }
  return true;
}

}  // namespace xprim
