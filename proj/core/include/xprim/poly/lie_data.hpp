#pragma once

#include <string>
#include <string_view>

#include "xprim/poly/qexpr.hpp"

namespace xprim {

/// Exceptional groups of Lie type, by socle family.
enum class LieFamily { E8, E7, E6, E6_twisted, F4, G2, D4_triality, F4_twisted, G2_twisted, B2_twisted };

inline constexpr LieFamily kAllLieFamilies[] = {
    LieFamily::E8, LieFamily::E7,          LieFamily::E6,         LieFamily::E6_twisted, LieFamily::F4,
    LieFamily::G2, LieFamily::D4_triality, LieFamily::F4_twisted, LieFamily::G2_twisted, LieFamily::B2_twisted};

/// Names as used on the command line: E8, E7, E6, 2E6, F4, G2, 3D4, 2F4, 2G2, 2B2.
std::string to_string(LieFamily f);
LieFamily parse_lie_family(std::string_view name);

/// gcd factors appearing in the class-size table: beta = (2, q-1),
/// gamma = (3, q-1), delta = (3, q+1). They depend on q, so callers choose
/// the value valid for the q range at hand.
struct BoundParams {
  int beta = 2;
  int gamma = 3;
  int delta = 3;
};

/// Lower bound l_i (i = 1..5) for the class sizes of the five kinds of
/// prime-order elements, with alpha = 1 - q^(-1). Throws InputError for
/// entries that do not occur (2F4 index 3, 2B2 indices 2 and 3).
QExpr class_bound_table(LieFamily f, int index, const BoundParams& params = {});

/// Least q for which the table row is stated (8 for 2F4, 27 for 2G2, 8 for
/// 2B2, 2 otherwise).
int class_bound_min_q(LieFamily f);

struct LieData {
  int dimension;
  int positive_roots;
  int alpha;  // 2 for 2B2, 2G2, 2F4; 1 otherwise
};

LieData lie_data(LieFamily f);

/// Upper bound 2(q+1) q^(N_r - 1) on the number of elements of order r in
/// Aut(G0), where N_2 = (dim - N)/alpha and N_3 = (dim - 2N/3)/alpha.
QExpr i_r_bound(LieFamily f, int r);

/// Number of unipotent elements, q^(2N/alpha).
QExpr unipotent_count(LieFamily f);

}  // namespace xprim
