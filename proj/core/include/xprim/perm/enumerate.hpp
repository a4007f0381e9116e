#pragma once

#include <functional>

#include "xprim/perm/perm_group.hpp"

namespace xprim {

/// Visits every element of the group exactly once as a product of
/// transversal elements u_{d-1} * ... * u_0. Throws ResourceError when the
/// order exceeds `cap`.
void for_each_element(const StabilizerChain& chain, const std::function<void(const Permutation&)>& visit,
                      const BigInt& cap = BigInt(10000000));

std::vector<Permutation> all_elements(const PermGroup& g, const BigInt& cap = BigInt(10000000));

}  // namespace xprim
