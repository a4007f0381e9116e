#include <doctest.h>

#include <map>
#include <set>

#include "xprim/perm/group_file.hpp"
#include "xprim/perm/orbit.hpp"
#include "xprim/perm/perm_group.hpp"

using namespace xprim;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(n, c); }

PermGroup sym(std::size_t n) {
  std::vector<Point> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
  return PermGroup(n, {cyc(n, {{0, 1}}), cyc(n, {all})});
}

PermGroup alt4() { return PermGroup(4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})}); }

// Brute-force closure, independent of the chain code.
std::set<Permutation> closure(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation(gens.front().degree())};
  std::vector<Permutation> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    Permutation x = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      Permutation y = x * s;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("compose applies the left factor first") {
  Permutation p(std::vector<Point>{1, 2, 0});
  CHECK(compose(p, Permutation(3)) == p);
  CHECK(compose(p, Permutation(std::vector<Point>{1, 0, 2})) == Permutation(std::vector<Point>{0, 2, 1}));
  Permutation t(std::vector<Point>{1, 0});
  CHECK(compose(t, t).is_identity());
  CHECK_THROWS_AS(compose(t, p), DegreeMismatch);
}

TEST_CASE("permutation validation and cycle strings") {
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0, 1}), InputError);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 3, 1}), InputError);
  Permutation p = cyc(5, {{0, 1, 2}, {3, 4}});
  CHECK(p.to_cycle_string() == "(1,2,3)(4,5)");
  CHECK(p.order() == 6);
  CHECK(Permutation(4).to_cycle_string() == "()");
  CHECK(power(p, 6).is_identity());
  CHECK(power(p, -1) == p.inverse());
}

TEST_CASE("compose is associative and inverse cancels") {
  RandomStream rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Permutation> ps;
    for (int k = 0; k < 3; ++k) {
      std::vector<Point> img(9);
      for (Point i = 0; i < 9; ++i) img[i] = i;
      std::shuffle(img.begin(), img.end(), rng.engine());
      ps.emplace_back(img);
    }
    CHECK((ps[0] * ps[1]) * ps[2] == ps[0] * (ps[1] * ps[2]));
    CHECK((ps[0] * ps[0].inverse()).is_identity());
  }
}

TEST_CASE("orbits and Schreier vectors") {
  std::vector<Permutation> g1{cyc(4, {{0, 1, 2, 3}})};
  CHECK(orbit(g1, 0).size() == 4);
  std::vector<Permutation> g2{cyc(4, {{0, 1}}), cyc(4, {{2, 3}})};
  auto o = orbit(g2, 0);
  CHECK(o.points() == std::vector<Point>{0, 1});
  CHECK_THROWS_AS(orbit(g2, 4), InputError);
  auto parts = orbits(g2, 4);
  CHECK(parts.size() == 2);

  std::vector<Permutation> g3{cyc(7, {{0, 1, 2, 3, 4, 5, 6}}), cyc(7, {{1, 2, 4}, {3, 6, 5}})};
  auto rec = orbit(g3, 3);
  CHECK(rec.points().front() == 3);
  for (Point x : rec.points()) CHECK(rec.transversal(x, g3)[3] == x);
}

TEST_CASE("chain orders") {
  CHECK(sym(5).order() == 120);
  CHECK(sym(8).order() == 40320);
  CHECK(alt4().order() == 12);
  CHECK(sym(5).chain().self_check());
  PermGroup trivial(3, {});
  CHECK(trivial.order() == 1);
  CHECK(trivial.contains(Permutation(3)));
}

TEST_CASE("chain order does not depend on the base") {
  PermGroup g = sym(6);
  std::vector<Point> b1{5, 3, 1};
  std::vector<Point> b2{2, 0};
  CHECK(build_chain(g, b1).order() == 720);
  CHECK(build_chain(g, b2).order() == 720);
  CHECK(build_chain(g, b1).base().front() == 5);
}

TEST_CASE("membership") {
  auto c = alt4().chain();
  CHECK_FALSE(contains(c, cyc(4, {{0, 1}})));
  CHECK(contains(c, cyc(4, {{0, 1, 2}})));
  CHECK_THROWS_AS(contains(c, Permutation(5)), DegreeMismatch);
}

TEST_CASE("chain membership agrees with brute-force closure") {
  RandomStream rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) {
      std::vector<Point> img(6);
      for (Point i = 0; i < 6; ++i) img[i] = i;
      std::shuffle(img.begin(), img.end(), rng.engine());
      gens.emplace_back(img);
    }
    auto elements = closure(gens);
    PermGroup g(6, gens);
    CHECK(g.order() == elements.size());
    std::vector<Point> img{0, 1, 2, 3, 4, 5};
    do {
      Permutation p(img);
      CHECK(g.contains(p) == (elements.count(p) == 1));
    } while (std::next_permutation(img.begin(), img.end()));
  }
}

TEST_CASE("pointwise stabilizers") {
  std::vector<Point> one{0}, three{0, 1, 2};
  auto s1 = pointwise_stabilizer(sym(4), one);
  CHECK(s1.order() == 6);
  for (const auto& g : s1.generators()) CHECK(g[0] == 0);
  CHECK(pointwise_stabilizer(sym(4), three).order() == 1);
  std::vector<Point> bad{4};
  CHECK_THROWS_AS(pointwise_stabilizer(sym(4), bad), InputError);
}

TEST_CASE("orbit-stabilizer identity") {
  PermGroup g(8, {cyc(8, {{0, 1, 2, 3}, {4, 5}}), cyc(8, {{0, 4}, {6, 7}}), cyc(8, {{1, 6}})});
  for (Point b = 0; b < 8; ++b) {
    std::vector<Point> pt{b};
    CHECK(pointwise_stabilizer(g, pt).order() * orbit(g.generators(), b).size() == g.order());
  }
}

TEST_CASE("random elements") {
  RandomStream rng(1);
  PermGroup trivial(3, {});
  CHECK(random_element(trivial, rng).is_identity());

  PermGroup g = sym(4);
  ProductReplacement pr(g.generators(), 4, rng);
  std::map<Permutation, int> freq;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Permutation x = pr.next();
    CHECK(g.contains(x));
    ++freq[x];
  }
  CHECK(freq.size() == 24);
  const double mean = n / 24.0;
  const double sigma = std::sqrt(n * (1.0 / 24) * (23.0 / 24));
  for (const auto& [x, c] : freq) CHECK(std::abs(c - mean) < 5 * sigma);
}

TEST_CASE("group file format") {
  auto g = parse_group_text("# alt4\npermgroup degree=4\n\ngen (1,2)(3,4)\ngen (1,2,3) # 3-cycle\n");
  CHECK(g.degree() == 4);
  CHECK(g.order() == 12);
  auto back = parse_group_text(write_group_text(g, "round trip"));
  CHECK(back.generators() == g.generators());
  CHECK_THROWS_WITH_AS(parse_group_text("permgroup degree=4\ngen (1,2\n"), doctest::Contains("line 2"), InputError);
  CHECK_THROWS_AS(parse_group_text("permgroup degree=4\ngen (1,2)(2,3)\n"), InputError);
  CHECK_THROWS_AS(parse_group_text("permgroup degree=4\ngen (1,5)\n"), InputError);
  CHECK_THROWS_AS(parse_group_text("gen (1,2)\n"), InputError);
  CHECK(parse_cycles("()", 3).is_identity());
}
