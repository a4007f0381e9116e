#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "xprim/perm/permutation.hpp"
#include "xprim/perm/random.hpp"
#include "xprim/perm/stabilizer_chain.hpp"

namespace xprim {

/// A permutation group given by generators, with a lazily built chain.
///
/// Copies share the cached chain. Once the chain exists the group is
/// immutable and may be used from several threads.
class PermGroup {
public:
  PermGroup() : PermGroup(1, {}) {}

  /// An empty generating set is replaced by the identity.
  PermGroup(std::size_t degree, std::vector<Permutation> gens,
            std::optional<BigInt> known_order = std::nullopt);

  /// Wraps generators together with an already verified chain.
  PermGroup(std::size_t degree, std::vector<Permutation> gens, StabilizerChain chain);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  const std::optional<BigInt>& known_order() const noexcept { return known_order_; }

  const StabilizerChain& chain() const;
  const BigInt& order() const { return chain().order(); }
  bool contains(const Permutation& p) const;
  bool is_trivial() const;

private:
  struct Cache {
    std::mutex mutex;
    std::optional<StabilizerChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::optional<BigInt> known_order_;
  std::shared_ptr<Cache> cache_;
};

/// Chain for `g`, with base starting at `base_hint`.
StabilizerChain build_chain(const PermGroup& g, std::span<const Point> base_hint = {});

/// True iff `p` sifts to the identity. Throws DegreeMismatch.
bool contains(const StabilizerChain& chain, const Permutation& p);

/// Subgroup fixing every point of `pts`. The result carries its own chain.
PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> pts);

/// One product-replacement sample. For many samples keep a
/// ProductReplacement object instead.
Permutation random_element(const PermGroup& g, RandomStream& rng);

/// The subgroup generated by `gens` (must lie in `g`); inherits g's degree.
PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens);

}  // namespace xprim
