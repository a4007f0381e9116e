#include "xprim/perm/enumerate.hpp"

namespace xprim {

void for_each_element(const StabilizerChain& chain, const std::function<void(const Permutation&)>& visit,
                      const BigInt& cap) {
  if (chain.order() > cap) throw ResourceError("element enumeration: group order exceeds cap");
  const std::size_t d = chain.depth();
  std::vector<std::vector<Permutation>> trans(d);
  for (std::size_t i = 0; i < d; ++i)
    for (Point x : chain.level(i).orbit) trans[i].push_back(chain.transversal(i, x));
  // partial[i] = u_{d-1} * ... * u_i
  std::vector<Permutation> partial(d + 1, Permutation(chain.degree()));
  std::vector<std::size_t> pick(d, 0);
  auto rebuild = [&](std::size_t from) {
    for (std::size_t i = from + 1; i-- > 0;) {
      if (i >= d) continue;
      compose_into(partial[i], partial[i + 1], trans[i][pick[i]]);
    }
  };
  if (d == 0) {
    visit(partial[0]);
    return;
  }
  rebuild(d - 1);
  while (true) {
    visit(partial[0]);
    std::size_t i = 0;
    while (i < d && ++pick[i] == trans[i].size()) pick[i++] = 0;
    if (i == d) break;
    rebuild(i);
  }
}

std::vector<Permutation> all_elements(const PermGroup& g, const BigInt& cap) {
  std::vector<Permutation> out;
  for_each_element(g.chain(), [&](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

}  // namespace xprim
