// Regenerates the shipped group data files under data/groups.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "xprim/catalog/named.hpp"
#include "xprim/catalog/search.hpp"
#include "xprim/perm/group_file.hpp"
#include "xprim/perm/orbit.hpp"
#include "xprim/perm/random.hpp"
#include "xprim/structure/actions.hpp"

using namespace xprim;
namespace fs = std::filesystem;

namespace {

using Elem = FiniteField::Elem;
using Mat = std::vector<Elem>;  // row-major

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "xprim-datagen: " << msg << "\n";
  std::exit(1);
}

void check(bool ok, const std::string& msg) {
  if (!ok) die(msg);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  check(static_cast<bool>(out), "cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

PermGroup require_order(PermGroup g, const BigInt& order, const std::string& what) {
  check(g.order() == order, what + ": order " + g.order().get_str() + ", expected " + order.get_str());
  return g;
}

PermGroup search(const PermGroup& g, long order, SubgroupSearchOptions o, const std::string& what) {
  auto h = find_two_generated_subgroup(g, BigInt(order), o);
  check(h.has_value(), what + ": search failed");
  return *h;
}

void require_maximal(const PermGroup& g, const PermGroup& h, const std::string& what) {
  check(is_maximal(g, h).kind == Maximality::maximal, what + ": subgroup is not maximal");
}

// ---------------------------------------------------------------------------
// M11 and M11 on the cosets of L2(11).

void gen_m11(const fs::path& out) {
  PermGroup m11(11, {parse_cycles("(2,10)(4,11)(5,7)(8,9)", 11), parse_cycles("(1,4,3,8)(2,5,6,9)", 11)});
  require_order(m11, BigInt(7920), "M11");
  write_file(out / "m11.group",
             write_group_text(m11, "M11 on 11 points, standard generators a, b (a in 2A, b in 4A, ab of order 11)"));

  SubgroupSearchOptions o;
  o.seed = 11;
  o.order_ab = 11;
  PermGroup l211 = search(m11, 660, o, "L2(11) < M11");
  require_maximal(m11, l211, "L2(11) < M11");
  PermGroup act = coset_action(m11, l211);
  require_order(act, BigInt(7920), "M11 on 12 points");
  write_file(out / "m11_12.group",
             write_group_text(act, "M11 on the 12 cosets of L2(11); L2(11) found by random (2,3,11)-generation"));
}

// ---------------------------------------------------------------------------
// U3(3) on the 28 isotropic points of a Hermitian form over GF(9), and
// L2(7) inside it.

void gen_u3_3(const fs::path& out) {
  FiniteField f = FiniteField::of_order(9);
  auto bar = [&](Elem x) { return f.pow(x, 3); };
  // h(x, y) = x1 y3^3 + x2 y2^3 + x3 y1^3
  auto h = [&](const std::array<Elem, 3>& x, const std::array<Elem, 3>& y) {
    Elem s = f.mul(x[0], bar(y[2]));
    s = f.add(s, f.mul(x[1], bar(y[1])));
    return f.add(s, f.mul(x[2], bar(y[0])));
  };
  auto apply = [&](const Mat& m, const std::array<Elem, 3>& x) {
    std::array<Elem, 3> y{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) y[r] = f.add(y[r], f.mul(m[r * 3 + c], x[c]));
    return y;
  };
  auto unitary = [&](const Mat& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::array<Elem, 3> x{}, y{};
        x[i] = 1;
        y[j] = 1;
        if (h(apply(m, x), apply(m, y)) != h(x, y)) return false;
      }
    return true;
  };
  std::vector<Mat> gens;
  for (Elem a = 0; a < 9; ++a)
    for (Elem b = 0; b < 9; ++b)
      for (Elem c = 0; c < 9; ++c) {
        Mat up{1, a, b, 0, 1, c, 0, 0, 1};
        Mat lo{1, 0, 0, a, 1, 0, b, c, 1};
        if ((a || b || c) && unitary(up)) gens.push_back(up);
        if ((a || b || c) && unitary(lo)) gens.push_back(lo);
      }
  check(gens.size() == 52, "U3(3): expected 26 + 26 unitriangular isometries");
  MatrixGroup mg{f, 3, {}};
  for (const auto& m : gens) {
    Mat t(9);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t[c * 3 + r] = m[r * 3 + c];
    mg.gens.push_back(t);
  }
  auto pa = projective_action(mg);
  check(pa.group.degree() == 28, "U3(3): expected 28 isotropic points");
  PermGroup u33 = require_order(pa.group, BigInt(6048), "U3(3)");
  // Two random generators suffice; keep the file small.
  RandomStream rng(33);
  ProductReplacement pr(u33.generators(), 28, rng);
  std::optional<PermGroup> small;
  for (int t = 0; t < 200 && !small; ++t) {
    PermGroup c(28, {pr.next(), pr.next()});
    if (c.order() == 6048) small = c;
  }
  check(small.has_value(), "U3(3): no 2-generator set found");
  write_file(out / "u3_3_28.group",
             write_group_text(*small, "U3(3) on the 28 isotropic points of the Hermitian form x1y3^3+x2y2^3+x3y1^3 "
                                      "over GF(9) (modulus x^2+1)"));

  SubgroupSearchOptions o;
  o.seed = 7;
  o.order_ab = 7;
  PermGroup l27 = search(*small, 168, o, "L2(7) < U3(3)");
  check(is_simple(l27), "L2(7) < U3(3): subgroup of order 168 is not simple");
  require_maximal(*small, l27, "L2(7) < U3(3)");
  write_file(out / "l2_7_in_u3_3.group",
             write_group_text(l27, "simple maximal subgroup L2(7) of U3(3) on 28 points, found by random "
                                   "(2,3,7)-generation"));
}

// ---------------------------------------------------------------------------
// Split octonions over Z in the vector-matrix form
//   (a, u, v, b)(a', u', v', b') =
//     (aa' + u.v', a u' + b' u + s v x v', a' v + b v' - s u x u', bb' + v.u')
// with basis e1, e2, u1..u3, v1..v3. Root elements of G2 are exp(t E) for
// integral root-space derivations E.

constexpr int kDim = 8;
using IMat = std::array<std::array<BigInt, kDim>, kDim>;
using Table = std::array<std::array<std::array<long, kDim>, kDim>, kDim>;  // c[i][j][k]

std::array<long, kDim> zorn_product(const std::array<long, kDim>& x, const std::array<long, kDim>& y, long s) {
  auto cross = [](const long* p, const long* q) {
    return std::array<long, 3>{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  };
  const long *u = &x[2], *v = &x[5], *u2 = &y[2], *v2 = &y[5];
  std::array<long, kDim> r{};
  r[0] = x[0] * y[0] + u[0] * v2[0] + u[1] * v2[1] + u[2] * v2[2];
  r[1] = x[1] * y[1] + v[0] * u2[0] + v[1] * u2[1] + v[2] * u2[2];
  auto vv = cross(v, v2), uu = cross(u, u2);
  for (int i = 0; i < 3; ++i) {
    r[2 + i] = x[0] * u2[i] + y[1] * u[i] + s * vv[i];
    r[5 + i] = y[0] * v[i] + x[1] * v2[i] - s * uu[i];
  }
  return r;
}

Table zorn_table(long s) {
  Table c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      std::array<long, kDim> x{}, y{};
      x[i] = 1;
      y[j] = 1;
      c[i][j] = zorn_product(x, y, s);
    }
  return c;
}

bool alternative(long s) {
  RandomStream rng(5);
  for (int t = 0; t < 200; ++t) {
    std::array<long, kDim> x{}, y{};
    for (int i = 0; i < kDim; ++i) {
      x[i] = static_cast<long>(rng.below(7)) - 3;
      y[i] = static_cast<long>(rng.below(7)) - 3;
    }
    if (zorn_product(zorn_product(x, x, s), y, s) != zorn_product(x, zorn_product(x, y, s), s)) return false;
    if (zorn_product(zorn_product(y, x, s), x, s) != zorn_product(y, zorn_product(x, x, s), s)) return false;
  }
  return true;
}

using Weight = std::array<int, 3>;

Weight weight_of(int i) {
  Weight w{0, 0, 0};
  if (i >= 2 && i < 5) w[i - 2] = 1;
  if (i >= 5) w[i - 5] = -1;
  return w;
}

bool same_weight(const Weight& a, const Weight& b) {
  int d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
  return d0 == d1 && d1 == d2;
}

// Nullspace of an integer system over Q; rows are equations.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t n) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (k != r && rows[k][c] != 0) {
        Rational m = rows[k][c];
        for (std::size_t j = 0; j < n; ++j) rows[k][j] -= m * rows[r][j];
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Rational> v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[static_cast<std::size_t>(pivot_col[k])] = -rows[k][free];
    basis.push_back(v);
  }
  return basis;
}

// Derivations D (D[k][m] = coefficient of b_k in D(b_m)) supported on the
// positions allowed by `allowed`.
std::vector<IMat> derivations(const Table& c, const std::function<bool(int, int)>& allowed) {
  std::vector<std::pair<int, int>> pos;
  for (int k = 0; k < kDim; ++k)
    for (int m = 0; m < kDim; ++m)
      if (allowed(k, m)) pos.emplace_back(k, m);
  std::map<std::pair<int, int>, std::size_t> col;
  for (std::size_t i = 0; i < pos.size(); ++i) col[pos[i]] = i;
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        std::vector<Rational> row(pos.size(), 0);
        bool any = false;
        auto add = [&](int r, int m, long coeff) {
          if (!coeff) return;
          auto it = col.find({r, m});
          if (it == col.end()) return;
          row[it->second] += coeff;
          any = true;
        };
        for (int m = 0; m < kDim; ++m) {
          add(k, m, c[i][j][m]);    // D(b_i b_j)
          add(m, i, -c[m][j][k]);   // D(b_i) b_j
          add(m, j, -c[i][m][k]);   // b_i D(b_j)
        }
        if (any) rows.push_back(row);
      }
  auto ns = nullspace(rows, pos.size());
  std::vector<IMat> out;
  for (auto& v : ns) {
    BigInt den = 1, g = 0;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    IMat m{};
    for (std::size_t i = 0; i < pos.size(); ++i) {
      Rational x = v[i] * den;
      x.canonicalize();
      m[pos[i].first][pos[i].second] = x.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    }
    for (auto& row : m)
      for (auto& x : row) x /= g;
    out.push_back(m);
  }
  return out;
}

IMat imul(const IMat& a, const IMat& b) {
  IMat r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      BigInt s = 0;
      for (int k = 0; k < kDim; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

bool izero(const IMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

void gen_g2_4(const fs::path& out) {
  long s = 0;
  for (long cand : {1L, -1L})
    if (alternative(cand)) s = cand;
  check(s != 0, "octonions: no sign convention gives an alternative algebra");
  const Table c = zorn_table(s);

  auto all = derivations(c, [](int, int) { return true; });
  check(all.size() == 14, "octonions: derivation algebra has dimension " + std::to_string(all.size()));

  std::vector<Weight> roots;
  for (int i = 0; i < 3; ++i) {
    Weight w{0, 0, 0};
    w[i] = 1;
    roots.push_back(w);
    w[i] = -1;
    roots.push_back(w);
    for (int j = 0; j < 3; ++j)
      if (j != i) {
        Weight l{0, 0, 0};
        l[i] = 1;
        l[j] = -1;
        roots.push_back(l);
      }
  }

  FiniteField f = FiniteField::of_order(4);
  const Elem omega = 2;  // x, a root of x^2 + x + 1
  MatrixGroup mg{f, kDim, {}};
  for (const auto& root : roots) {
    auto ds = derivations(c, [&](int k, int m) {
      Weight a = weight_of(k), b = weight_of(m);
      return same_weight({a[0] - b[0], a[1] - b[1], a[2] - b[2]}, root);
    });
    check(ds.size() == 1, "octonions: root space is not one-dimensional");
    // Divided powers E^k / k!, integral for a Chevalley generator.
    std::vector<IMat> divided;
    IMat id{};
    for (int i = 0; i < kDim; ++i) id[i][i] = 1;
    divided.push_back(id);
    IMat p = id;
    for (long k = 1; k < 8; ++k) {
      p = imul(p, ds[0]);
      if (izero(p)) break;
      IMat d = p;
      BigInt fact = 1;
      for (long j = 2; j <= k; ++j) fact *= j;
      for (auto& row : d)
        for (auto& x : row) {
          check(x % fact == 0, "octonions: divided power not integral");
          x /= fact;
        }
      divided.push_back(d);
    }
    for (Elem t : {Elem{1}, omega}) {
      Mat m(kDim * kDim, 0);
      for (std::size_t k = 0; k < divided.size(); ++k) {
        Elem tk = f.pow(t, k);
        for (int i = 0; i < kDim; ++i)
          for (int j = 0; j < kDim; ++j) {
            BigInt r = divided[k][i][j] % 2;
            if (r != 0) m[j * kDim + i] = f.add(m[j * kDim + i], tk);  // transposed: row-vector action
          }
      }
      mg.gens.push_back(m);
    }
  }

  // Each generator must be an algebra automorphism mod 2.
  for (const auto& m : mg.gens) {
    auto image = [&](int i) {  // row i of m = image of b_i
      return std::vector<Elem>(m.begin() + i * kDim, m.begin() + (i + 1) * kDim);
    };
    auto mult = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
      std::vector<Elem> r(kDim, 0);
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          Elem xy = f.mul(x[i], y[j]);
          if (!xy) continue;
          for (int k = 0; k < kDim; ++k)
            if (c[i][j][k] % 2) r[k] = f.add(r[k], xy);
        }
      return r;
    };
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        std::vector<Elem> lhs(kDim, 0);
        for (int k = 0; k < kDim; ++k)
          if (c[i][j][k] % 2)
            for (int l = 0; l < kDim; ++l) lhs[l] = f.add(lhs[l], m[k * kDim + l]);
        check(lhs == mult(image(i), image(j)), "octonions: generator is not an automorphism");
      }
  }
  write_file(out / "g2_4.matrices", write_matrix_text(mg));

  std::vector<Elem> start(kDim, 0);
  start[2] = 1;  // u1: trace 0, norm 0
  auto pa = projective_action(mg, start);
  check(pa.group.degree() == 1365, "G2(4): expected 1365 singular points, got " + std::to_string(pa.group.degree()));
  const BigInt g2order("251596800");
  PermGroup g2 = require_order(pa.group, g2order, "G2(4)");

  RandomStream rng(24);
  ProductReplacement pr(g2.generators(), g2.degree(), rng);
  std::optional<PermGroup> small;
  for (int t = 0; t < 100 && !small; ++t) {
    PermGroup cand(g2.degree(), {pr.next(), pr.next()});
    ChainOptions co;
    co.abort_above = g2order;
    auto ch = StabilizerChain::build(g2.degree(), cand.generators(), co);
    if (!ch.aborted() && ch.order() == g2order) small = PermGroup(g2.degree(), cand.generators(), std::move(ch));
  }
  check(small.has_value(), "G2(4): no 2-generator set found");
  write_file(out / "g2_4_1365.group",
             write_group_text(*small, "G2(4) on the 1365 singular points of the trace-zero split octonions over GF(4)"));

  SubgroupSearchOptions o;
  o.seed = 2;
  o.order_ab = 7;
  o.max_trials = 2000000;
  PermGroup j2 = search(*small, 604800, o, "J2 < G2(4)");
  auto table = coset_table(*small, j2);
  check(table.action.degree() == 416, "J2 < G2(4): index is not 416");
  write_file(out / "j2_in_g2_4.group",
             write_group_text(j2, "J2 inside G2(4) on 1365 points, found by random (2,3,7)-generation"));

  // J2 on its suborbit of length 100 in the action on 416 cosets.
  Point zero = 0;
  PermGroup stab = pointwise_stabilizer(table.action, std::span<const Point>(&zero, 1));
  for (const auto& orb : orbits(stab.generators(), table.action.degree())) {
    if (orb.size() != 100) continue;
    auto induced = induced_action(stab, orb);
    check(induced.faithful, "J2 on 100 points: action not faithful");
    write_file(out / "j2_100.group",
               write_group_text(induced.image, "J2 on 100 points: the stabilizer of a coset of J2 in G2(4) on its "
                                               "suborbit of length 100"));
    return;
  }
  die("J2 < G2(4): no suborbit of length 100");
}

// ---------------------------------------------------------------------------
// Small subgroups used by coset scenarios.

void gen_small(const fs::path& out) {
  {
    PermGroup g = psl2_group(11);
    SubgroupSearchOptions o;
    o.seed = 5;
    o.order_ab = 5;
    PermGroup a5 = search(g, 60, o, "Alt5 < L2(11)");
    require_maximal(g, a5, "Alt5 < L2(11)");
    write_file(out / "a5_in_l2_11.group", write_group_text(a5, "Alt5 inside L2(11) on the projective line"));
  }
  {
    PermGroup g = psl2_group(16);
    SubgroupSearchOptions o;
    o.seed = 17;
    o.order_b = 17;
    PermGroup d34 = search(g, 34, o, "D34 < L2(16)");
    require_maximal(g, d34, "D34 < L2(16)");
    write_file(out / "d34_in_l2_16.group", write_group_text(d34, "dihedral group of order 34 inside L2(16)"));
  }
  {
    PermGroup a6 = alt_group(6);
    PermGroup l25 = psl2_group(5);
    PermGroup h = subgroup(a6, l25.generators());
    require_order(h, BigInt(60), "L2(5) < Alt6");
    require_maximal(a6, h, "L2(5) < Alt6");
    write_file(out / "l2_5_in_a6.group", write_group_text(h, "L2(5) acting on the projective line over GF(5), inside Alt6"));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerates xprim group data files"};
  std::string out = "data/groups";
  std::vector<std::string> only;
  app.add_option("--out", out, "Output directory");
  app.add_option("--only", only, "Subset to generate: m11, u3_3, g2_4, small");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out);
  auto want = [&](const std::string& n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };
  try {
    if (want("m11")) gen_m11(out);
    if (want("u3_3")) gen_u3_3(out);
    if (want("small")) gen_small(out);
    if (want("g2_4")) gen_g2_4(out);
  } catch (const std::exception& e) {
    die(e.what());
  }
  return 0;
}
