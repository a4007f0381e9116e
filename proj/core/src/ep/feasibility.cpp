#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "xprim/ep/ep_analysis.hpp"
#include "xprim/perm/enumerate.hpp"

namespace xprim {

namespace {

constexpr std::size_t kMaxStates = std::size_t{1} << 30;

// Layer t maps each reachable sum (using t picks) to (previous sum, index).
template <class Sum, class Map>
Feasibility solve(std::size_t picks, const std::vector<Sum>& idx, const Sum& target) {
  std::vector<Map> layers(picks + 1);
  layers[0].emplace(Sum(0), std::pair<Sum, std::size_t>{Sum(0), 0});
  std::size_t states = 1;
  for (std::size_t t = 0; t < picks; ++t) {
    std::vector<Sum> keys;
    keys.reserve(layers[t].size());
    for (const auto& kv : layers[t]) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (const Sum& s : keys)
      for (std::size_t i = 0; i < idx.size(); ++i) {
        Sum next = s + idx[i];
        if (next > target) continue;
        if (layers[t + 1].emplace(next, std::pair<Sum, std::size_t>{s, i}).second && ++states > kMaxStates)
          throw ResourceError("char_feasibility: state cap exceeded");
      }
  }
  Feasibility f;
  f.counts.assign(idx.size(), 0);
  auto it = layers[picks].find(target);
  if (it == layers[picks].end()) return f;
  f.feasible = true;
  Sum s = target;
  for (std::size_t t = picks; t > 0; --t) {
    const auto& [prev, i] = layers[t].at(s);
    ++f.counts[i];
    s = prev;
  }
  return f;
}

}  // namespace

Feasibility char_feasibility(std::size_t rank, const std::vector<BigInt>& indices, const BigInt& degree) {
  if (rank < 2) throw InputError("char_feasibility: rank must be at least 2");
  if (indices.empty()) throw InputError("char_feasibility: no indices");
  for (const auto& n : indices)
    if (n <= 1) throw InputError("char_feasibility: every index must exceed 1");
  if (degree < 2) throw InputError("char_feasibility: degree must be at least 2");
  const BigInt target = degree - 1;
  const std::size_t picks = rank - 1;
  if (target.fits_ulong_p() && target < BigInt(std::numeric_limits<unsigned long>::max() / 2)) {
    std::vector<unsigned long> idx;
    for (const auto& n : indices) idx.push_back(n > target ? target.get_ui() + 1 : n.get_ui());
    return solve<unsigned long, std::unordered_map<unsigned long, std::pair<unsigned long, std::size_t>>>(
        picks, idx, target.get_ui());
  }
  return solve<BigInt, std::map<BigInt, std::pair<BigInt, std::size_t>>>(picks, indices, target);
}

std::optional<BigInt> center_order(const PermGroup& h, const BigInt& cap) {
  if (h.order() > cap) return std::nullopt;
  BigInt count = 0;
  const auto& gens = h.generators();
  Permutation a, b;
  for_each_element(
      h.chain(),
      [&](const Permutation& x) {
        for (const auto& s : gens) {
          compose_into(a, x, s);
          compose_into(b, s, x);
          if (a != b) return;
        }
        ++count;
      },
      cap);
  return count;
}

}  // namespace xprim
