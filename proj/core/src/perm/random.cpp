#include "xprim/perm/random.hpp"

#include <algorithm>

namespace xprim {

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
  engine_.seed(seq);
}

ProductReplacement::ProductReplacement(std::span<const Permutation> gens, std::size_t degree,
                                       RandomStream& rng)
    : rng_(rng), accumulator_(degree) {
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens)
    if (!g.is_identity()) nontrivial.push_back(g);
  if (nontrivial.empty()) {
    trivial_ = true;
    return;
  }
  std::size_t slots = std::max(kMinSlots, 2 * nontrivial.size());
  slots_.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) slots_.push_back(nontrivial[i % nontrivial.size()]);
  for (std::size_t i = 0; i < kBurnIn; ++i) step();
}

void ProductReplacement::step() {
  std::size_t n = slots_.size();
  std::size_t i = rng_.below(n);
  std::size_t j = rng_.below(n - 1);
  if (j >= i) ++j;
  bool left = rng_.below(2) == 0;
  bool inv = rng_.below(2) == 0;
  const Permutation other = inv ? slots_[j].inverse() : slots_[j];
  if (left)
    slots_[i] = compose(other, slots_[i]);
  else
    slots_[i] = compose(slots_[i], other);
  compose_into(accumulator_, accumulator_, slots_[i]);
}

Permutation ProductReplacement::next() {
  if (trivial_) return accumulator_;
  step();
  return accumulator_;
}

}  // namespace xprim
