#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "xprim/catalog/named.hpp"
#include "xprim/perm/orbit.hpp"
#include "xprim/structure/actions.hpp"
#include "xprim/structure/blocks.hpp"

using namespace xprim;
using oracle::cyc;

namespace {

PermGroup d10_in_alt5() { return PermGroup(5, {cyc(5, {{0, 1, 2, 3, 4}}), cyc(5, {{1, 4}, {2, 3}})}); }

PermGroup s5_on_pairs() {
  PermGroup s5 = sym_group(5);
  PermGroup h(5, {cyc(5, {{0, 1}}), cyc(5, {{2, 3}}), cyc(5, {{2, 3, 4}})});
  return coset_action(s5, h);
}

std::vector<std::size_t> subdegrees(const PermGroup& g) {
  const Point zero = 0;
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&zero, 1));
  std::vector<std::size_t> out;
  for (const auto& o : orbits(h.generators(), g.degree())) out.push_back(o.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("transitivity") {
  CHECK(is_transitive(sym_group(4)));
  CHECK_FALSE(is_transitive(PermGroup(3, {cyc(3, {{0, 1}})})));
  CHECK(is_transitive(sp2m2_forms(3, false)));
  CHECK(is_transitive(sp2m2_forms(3, true)));
}

TEST_CASE("minimal blocks") {
  auto bs = minimal_block(dihedral_group(4), 0, 2);
  REQUIRE(bs);
  CHECK(bs->blocks == std::vector<std::vector<Point>>{{0, 2}, {1, 3}});
  CHECK(bs->seed == std::pair<Point, Point>{0, 2});
  for (Point b = 1; b < 4; ++b) CHECK_FALSE(minimal_block(sym_group(4), 0, b));
  auto c6 = minimal_block(cyclic_group(6), 0, 3);
  REQUIRE(c6);
  CHECK(c6->block_size == 2);
  CHECK(oracle::invariant(cyclic_group(6).generators(), c6->blocks, 6));
  CHECK_THROWS_AS(minimal_block(sym_group(4), 1, 1), InputError);
  CHECK_THROWS_AS(minimal_block(PermGroup(3, {cyc(3, {{0, 1}})}), 0, 1), InputError);
}

TEST_CASE("primitivity verdicts") {
  PermGroup a5_on_6 = coset_action(alt_group(5), d10_in_alt5());
  CHECK(a5_on_6.degree() == 6);
  CHECK(is_primitive(a5_on_6).kind == Primitivity::primitive);
  CHECK_FALSE(oracle::has_nontrivial_blocks(a5_on_6.generators(), 6));

  auto d6 = is_primitive(dihedral_group(6));
  CHECK(d6.kind == Primitivity::imprimitive);
  REQUIRE(d6.witness);
  CHECK(oracle::invariant(dihedral_group(6).generators(), d6.witness->blocks, 6));

  PermGroup s3_regular = coset_action(sym_group(3), PermGroup(3, {}));
  CHECK(s3_regular.degree() == 6);
  CHECK(is_primitive(s3_regular).kind == Primitivity::imprimitive);
  CHECK(is_primitive(cyclic_group(7)).kind == Primitivity::primitive);
  CHECK(is_primitive(PermGroup(3, {cyc(3, {{0, 1}})})).kind == Primitivity::intransitive);
}

TEST_CASE("primitivity agrees with exhaustive partition search") {
  std::vector<PermGroup> groups{sym_group(4), alt_group(4), dihedral_group(4), dihedral_group(5), dihedral_group(6),
                                cyclic_group(6), cyclic_group(8), dihedral_group(8), psl2_group(5), pgl2_group(5),
                                psl2_group(7), pgl2_group(7), psl2_group(9), pgl2_group(8), psl2_group(11),
                                sp2m2_forms(2, true), sp2m2_forms(2, false), s5_on_pairs(),
                                coset_action(alt_group(5), d10_in_alt5())};
  for (const auto& g : groups) {
    CAPTURE(g.degree());
    bool prim = is_primitive(g).kind == Primitivity::primitive;
    CHECK(prim == !oracle::has_nontrivial_blocks(g.generators(), g.degree()));
  }
}

TEST_CASE("induced actions and kernels") {
  std::vector<Point> all{0, 1, 2, 3};
  auto full = induced_action(sym_group(4), all);
  CHECK(full.faithful);
  CHECK(full.kernel_order == 1);

  PermGroup v(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}})});
  std::vector<Point> two{0, 1};
  auto r = induced_action(v, two);
  CHECK(r.kernel_order == 2);
  CHECK(r.image.order() * r.kernel_order == v.order());
  std::vector<Point> bad{0, 2};
  CHECK_THROWS_AS(induced_action(v, bad), InputError);

  PermGroup g = s5_on_pairs();
  const Point zero = 0;
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&zero, 1));
  CHECK(h.order() == 12);
  for (const auto& o : orbits(h.generators(), 10)) {
    if (o.size() != 3) continue;
    auto res = induced_action(h, o);
    // Brute-force kernel: elements of H fixing each point of the orbit.
    auto elems = oracle::closure(h.generators(), 10);
    std::size_t kernel = std::count_if(elems.begin(), elems.end(), [&](const Permutation& x) {
      return std::all_of(o.begin(), o.end(), [&](Point p) { return x[p] == p; });
    });
    CHECK(kernel == 2);
    CHECK(res.kernel_order == 2);
    CHECK_FALSE(res.faithful);
  }
}

TEST_CASE("coset actions") {
  PermGroup s4 = sym_group(4);
  const Point zero = 0;
  PermGroup stab = pointwise_stabilizer(s4, std::span<const Point>(&zero, 1));
  PermGroup ca = coset_action(s4, stab);
  CHECK(ca.degree() == 4);
  CHECK(ca.order() == 24);
  CHECK(subdegrees(ca) == subdegrees(s4));

  CHECK(coset_action(alt_group(5), d10_in_alt5()).degree() == 6);

  PermGroup sp = sp2m2_forms(3, false);
  PermGroup o6 = pointwise_stabilizer(sp, std::span<const Point>(&zero, 1));
  CHECK(o6.order() == 51840);
  PermGroup sp_on_cosets = coset_action(sp, o6);
  CHECK(sp_on_cosets.degree() == 28);
  CHECK(sp_on_cosets.order() == 1451520);
  CHECK(subdegrees(sp_on_cosets) == subdegrees(sp));

  PermGroup not_sub(5, {cyc(5, {{0, 1}})});
  CHECK_THROWS_AS(coset_action(alt_group(5), not_sub), InputError);
  CHECK_THROWS_AS(coset_action(sym_group(8), PermGroup(8, {}), {.index_cap = 1000}), ResourceError);
}

TEST_CASE("coset action of a point stabilizer matches the natural action") {
  std::vector<PermGroup> groups{pgl2_group(7), psl2_group(8), sp2m2_forms(2, false), dihedral_group(7),
                                s5_on_pairs()};
  const Point zero = 0;
  for (const auto& g : groups) {
    PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&zero, 1));
    PermGroup ca = coset_action(g, h);
    CHECK(ca.degree() == g.degree());
    CHECK(subdegrees(ca) == subdegrees(g));
  }
}

TEST_CASE("coset action kernel is the core") {
  // Core of V4 in S4 is V4 itself.
  PermGroup v4(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  PermGroup ca = coset_action(sym_group(4), v4);
  CHECK(ca.degree() == 6);
  CHECK(ca.order() * 4 == 24);
}

TEST_CASE("maximality") {
  CHECK(is_maximal(alt_group(5), d10_in_alt5()).kind == Maximality::maximal);
  CHECK(is_maximal(sym_group(3), PermGroup(3, {cyc(3, {{0, 1, 2}})})).kind == Maximality::maximal);
  PermGroup v4(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  auto v = is_maximal(sym_group(4), v4);
  CHECK(v.kind == Maximality::non_maximal);
  REQUIRE(v.witness);
  CHECK_THROWS_AS(is_maximal(sym_group(4), sym_group(4)), InputError);
  CHECK(is_maximal(sym_group(8), PermGroup(8, {cyc(8, {{0, 1}})}), {.index_cap = 100}).kind == Maximality::resource);
}
