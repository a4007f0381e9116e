#include "xprim/structure/actions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "xprim/perm/orbit.hpp"

namespace xprim {

ActionResult induced_action(const PermGroup& g, std::span<const Point> domain) {
  const std::size_t n = g.degree();
  std::vector<Point> dom(domain.begin(), domain.end());
  std::sort(dom.begin(), dom.end());
  if (dom.empty()) throw InputError("induced_action: empty domain");
  if (std::adjacent_find(dom.begin(), dom.end()) != dom.end())
    throw InputError("induced_action: repeated domain point");
  if (dom.back() >= n) throw InputError("induced_action: domain point out of range");
  std::vector<std::size_t> index(n, n);
  for (std::size_t i = 0; i < dom.size(); ++i) index[dom[i]] = i;
  std::vector<Permutation> images;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      std::size_t j = index[s[dom[i]]];
      if (j == n) throw InputError("induced_action: domain is not invariant");
      img[i] = static_cast<Point>(j);
    }
    images.emplace_back(std::move(img));
  }
  PermGroup kernel = pointwise_stabilizer(g, dom);
  BigInt kernel_order = kernel.order();
  BigInt image_order = g.order() / kernel_order;
  PermGroup image(dom.size(), std::move(images), image_order);
  return ActionResult{std::move(image), kernel_order, kernel_order == 1, std::move(dom)};
}

namespace {

std::uint64_t fingerprint(const Permutation& t, const std::vector<std::uint32_t>& orbit_index,
                          std::vector<std::uint32_t>& scratch) {
  const std::size_t n = t.degree();
  for (Point x = 0; x < n; ++x) scratch[t[x]] = orbit_index[x];
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : scratch) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

CosetTable coset_table(const PermGroup& g, const PermGroup& h, CosetActionOptions opts) {
  if (g.degree() != h.degree()) throw DegreeMismatch("coset_action: degrees differ");
  for (const auto& s : h.generators())
    if (!g.contains(s)) throw InputError("coset_action: subgroup generator not in group");
  const BigInt& ho = h.order();
  if (g.order() % ho != 0) throw InputError("coset_action: subgroup order does not divide group order");
  BigInt idx = g.order() / ho;
  if (idx > opts.index_cap) throw ResourceError("coset_action: index " + to_string(idx) + " exceeds cap");
  const std::size_t index = idx.get_ui();
  const std::size_t n = g.degree();

  // Cosets Hr and Hr' with different images of H's orbit partition under
  // r and r' are distinct; equal fingerprints are resolved by sifting.
  std::vector<std::uint32_t> orbit_index(n);
  {
    auto parts = orbits(h.generators(), n);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (Point x : parts[i]) orbit_index[x] = static_cast<std::uint32_t>(i);
  }
  const StabilizerChain& hc = h.chain();
  std::vector<std::uint32_t> scratch(n);
  std::vector<Permutation> reps{Permutation(n)};
  std::vector<Permutation> rep_inv{Permutation(n)};
  std::unordered_multimap<std::uint64_t, std::uint32_t> buckets;
  buckets.emplace(fingerprint(reps[0], orbit_index, scratch), 0);

  const auto& gens = g.generators();
  std::vector<std::vector<Point>> images(gens.size(), std::vector<Point>(index));
  Permutation t, test;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      compose_into(t, reps[i], gens[k]);
      std::uint64_t fp = fingerprint(t, orbit_index, scratch);
      std::uint32_t found = static_cast<std::uint32_t>(index);
      auto [lo, hi] = buckets.equal_range(fp);
      for (auto it = lo; it != hi; ++it) {
        compose_into(test, t, rep_inv[it->second]);
        if (hc.contains(test)) {
          found = it->second;
          break;
        }
      }
      if (found == index) {
        if (reps.size() == index) throw std::logic_error("coset_action: more cosets than the index");
        found = static_cast<std::uint32_t>(reps.size());
        reps.push_back(t);
        rep_inv.push_back(t.inverse());
        buckets.emplace(fp, found);
      }
      images[k][i] = found;
    }
  }
  if (reps.size() != index) throw std::logic_error("coset_action: coset count differs from index");
  std::vector<Permutation> action;
  action.reserve(gens.size());
  for (auto& img : images) action.emplace_back(std::move(img));
  return CosetTable{PermGroup(index, std::move(action)), std::move(reps)};
}

PermGroup coset_action(const PermGroup& g, const PermGroup& h, CosetActionOptions opts) {
  return coset_table(g, h, opts).action;
}

MaximalityVerdict is_maximal(const PermGroup& g, const PermGroup& h, CosetActionOptions opts) {
  if (g.degree() != h.degree()) throw DegreeMismatch("is_maximal: degrees differ");
  for (const auto& s : h.generators())
    if (!g.contains(s)) throw InputError("is_maximal: subgroup generator not in group");
  if (h.order() == g.order()) throw InputError("is_maximal: subgroup equals the group");
  PermGroup action(1, {});
  try {
    action = coset_action(g, h, opts);
  } catch (const ResourceError&) {
    return {Maximality::resource, std::nullopt};
  }
  if (action.degree() < 2) return {Maximality::maximal, std::nullopt};
  auto v = is_primitive(action);
  if (v.kind == Primitivity::primitive) return {Maximality::maximal, std::nullopt};
  return {Maximality::non_maximal, std::move(v.witness)};
}

}  // namespace xprim
