#include "xprim/catalog/named.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "xprim/perm/orbit.hpp"

namespace xprim {

namespace {

BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

Permutation cycle_of(std::size_t n, std::vector<Point> c) { return Permutation::from_cycles(n, {std::move(c)}); }

std::vector<Point> range(Point lo, Point hi) {
  std::vector<Point> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

PermGroup sym_group(std::size_t n) {
  if (n == 0) throw InputError("sym: degree must be positive");
  if (n < 2) return PermGroup(n, {});
  return PermGroup(n, {cycle_of(n, {0, 1}), cycle_of(n, range(0, static_cast<Point>(n)))}, factorial(n));
}

PermGroup alt_group(std::size_t n) {
  if (n == 0) throw InputError("alt: degree must be positive");
  if (n < 3) return PermGroup(n, {});
  if (n == 3) return PermGroup(3, {cycle_of(3, {0, 1, 2})}, BigInt(3));
  Permutation long_cycle = n % 2 == 1 ? cycle_of(n, range(0, static_cast<Point>(n)))
                                      : cycle_of(n, range(1, static_cast<Point>(n)));
  return PermGroup(n, {cycle_of(n, {0, 1, 2}), long_cycle}, factorial(n) / 2);
}

PermGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("cyclic: order must be positive");
  if (n == 1) return PermGroup(1, {});
  return PermGroup(n, {cycle_of(n, range(0, static_cast<Point>(n)))}, BigInt(static_cast<unsigned long>(n)));
}

PermGroup dihedral_group(std::size_t n) {
  if (n < 3) throw InputError("dihedral: need at least 3 vertices");
  std::vector<Point> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
  return PermGroup(n, {cycle_of(n, range(0, static_cast<Point>(n))), Permutation(refl)},
                   BigInt(static_cast<unsigned long>(2 * n)));
}

namespace {

PermGroup projective_line_group(std::uint32_t q, bool full) {
  FiniteField f = FiniteField::of_order(q);
  const std::size_t n = q + 1;
  const Point inf = q;
  std::vector<Permutation> gens;
  for (auto b : f.additive_basis()) {
    std::vector<Point> img(n);
    for (Point x = 0; x < q; ++x) img[x] = f.add(x, b);
    img[inf] = inf;
    gens.emplace_back(img);
  }
  FiniteField::Elem a = f.primitive_element();
  if (!full) a = f.mul(a, a);
  {
    std::vector<Point> img(n);
    for (Point x = 0; x < q; ++x) img[x] = f.mul(a, x);
    img[inf] = inf;
    gens.emplace_back(img);
  }
  {
    std::vector<Point> img(n);
    img[0] = inf;
    img[inf] = 0;
    for (Point x = 1; x < q; ++x) img[x] = f.neg(f.inv(x));
    gens.emplace_back(img);
  }
  BigInt order = BigInt(q) * (BigInt(q) * q - 1);
  if (!full && q % 2 == 1) order /= 2;
  return PermGroup(n, std::move(gens), order);
}

}  // namespace

PermGroup psl2_group(std::uint32_t q) { return projective_line_group(q, false); }
PermGroup pgl2_group(std::uint32_t q) { return projective_line_group(q, true); }

BigInt sp2m2_order(std::size_t m) {
  BigInt r = 1;
  r <<= static_cast<mp_bitcnt_t>(m * m);
  for (std::size_t i = 1; i <= m; ++i) {
    BigInt t = 1;
    t <<= static_cast<mp_bitcnt_t>(2 * i);
    r *= t - 1;
  }
  return r;
}

PermGroup sp2m2_forms(std::size_t m, bool plus) {
  if (m < 1 || m > 3) throw InputError("sp2m2_forms: m must be 1, 2 or 3");
  const std::uint32_t dim = static_cast<std::uint32_t>(2 * m);
  const std::uint32_t nvec = 1u << dim;
  const std::uint32_t emask = (1u << m) - 1;
  auto form = [&](std::uint32_t x, std::uint32_t y) {
    std::uint32_t a = (x & emask) & (y >> m);
    std::uint32_t b = (x >> m) & (y & emask);
    return static_cast<std::uint32_t>(std::popcount(a ^ b) & 1);
  };
  // Transvections x -> x + B(x,v) v for e_i, f_i, e_1 + f_1 and e_i + e_{i+1}.
  // The last family links the hyperbolic planes; without it the group is
  // Sp_2(2)^m rather than Sp_{2m}(2).
  std::vector<std::uint32_t> vs;
  for (std::uint32_t i = 0; i < m; ++i) vs.push_back(1u << i);
  for (std::uint32_t i = 0; i < m; ++i) vs.push_back(1u << (m + i));
  vs.push_back(1u | (1u << m));
  for (std::uint32_t i = 0; i + 1 < m; ++i) vs.push_back((1u << i) | (1u << (i + 1)));
  std::vector<std::vector<std::uint32_t>> maps;
  std::vector<Permutation> on_vectors;
  for (auto v : vs) {
    std::vector<std::uint32_t> t(nvec);
    for (std::uint32_t x = 0; x < nvec; ++x) t[x] = form(x, v) ? (x ^ v) : x;
    on_vectors.emplace_back(std::vector<Point>(t.begin(), t.end()));
    maps.push_back(std::move(t));
  }
  if (PermGroup(nvec, on_vectors).order() != sp2m2_order(m))
    throw std::logic_error("sp2m2_forms: transvections do not generate Sp_2m(2)");

  auto q_eval = [&](std::uint32_t x) {
    std::uint32_t v = static_cast<std::uint32_t>(std::popcount((x & emask) & (x >> m)) & 1);
    if (!plus) v ^= (x & 1u) ^ ((x >> m) & 1u);
    return v;
  };
  std::uint64_t start = 0;
  for (std::uint32_t x = 0; x < nvec; ++x)
    if (q_eval(x)) start |= std::uint64_t{1} << x;

  // Q o g^{-1}; transvections are involutions so g^{-1} = g.
  auto act = [&](std::uint64_t mask, const std::vector<std::uint32_t>& g) {
    std::uint64_t out = 0;
    for (std::uint32_t x = 0; x < nvec; ++x)
      if ((mask >> g[x]) & 1u) out |= std::uint64_t{1} << x;
    return out;
  };
  std::vector<std::uint64_t> forms{start};
  std::unordered_map<std::uint64_t, Point> index{{start, 0}};
  std::vector<std::vector<Point>> images(maps.size());
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::uint64_t y = act(forms[i], maps[k]);
      auto [it, fresh] = index.emplace(y, static_cast<Point>(forms.size()));
      if (fresh) forms.push_back(y);
      images[k].push_back(it->second);
    }
  std::vector<Permutation> gens;
  for (auto& img : images) gens.emplace_back(std::move(img));
  std::size_t expect = (std::size_t{1} << (m - 1)) * (plus ? (std::size_t{1} << m) + 1 : (std::size_t{1} << m) - 1);
  if (forms.size() != expect) throw std::logic_error("sp2m2_forms: unexpected orbit size");
  if (m == 1) return PermGroup(forms.size(), std::move(gens));
  return PermGroup(forms.size(), std::move(gens), sp2m2_order(m));
}

MatrixGroup parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<MatrixGroup> out;
  std::vector<std::uint32_t> pending;
  bool in_gen = false;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  auto flush = [&] {
    if (!in_gen) return;
    if (pending.size() != out->dim * out->dim) throw InputError(where() + "matrix has wrong number of entries");
    out->gens.push_back(pending);
    pending.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!out) {
      if (tok != "matrices") throw InputError(where() + "expected 'matrices q=Q dim=D'");
      std::uint32_t q = 0;
      std::size_t dim = 0;
      std::vector<std::uint32_t> modulus;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw InputError(where() + "expected key=value");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "q") q = static_cast<std::uint32_t>(parse_uint(val, "q"));
        else if (key == "dim") dim = parse_uint(val, "dim");
        else if (key == "modulus") {
          std::istringstream vs(val);
          for (std::string c; std::getline(vs, c, ',');) modulus.push_back(static_cast<std::uint32_t>(parse_uint(c, "modulus")));
        } else throw InputError(where() + "unknown key '" + key + "'");
      }
      if (q == 0 || dim == 0) throw InputError(where() + "q and dim are required");
      FiniteField f = FiniteField::of_order(q);
      if (!modulus.empty()) f = FiniteField(f.characteristic(), f.degree(), modulus);
      out = MatrixGroup{std::move(f), dim, {}};
      continue;
    }
    if (tok == "gen") {
      flush();
      in_gen = true;
      continue;
    }
    if (!in_gen) throw InputError(where() + "expected 'gen'");
    for (std::istringstream row(line); row >> tok;) {
      auto v = parse_uint(tok, "matrix entry");
      if (v >= out->field.order()) throw InputError(where() + "matrix entry outside the field");
      pending.push_back(static_cast<std::uint32_t>(v));
    }
  }
  if (!out) throw InputError("missing 'matrices' header");
  flush();
  return std::move(*out);
}

MatrixGroup parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

std::string write_matrix_text(const MatrixGroup& g) {
  std::ostringstream out;
  out << "matrices q=" << g.field.order() << " dim=" << g.dim << " modulus=";
  for (std::size_t i = 0; i < g.field.modulus().size(); ++i) out << (i ? "," : "") << g.field.modulus()[i];
  out << '\n';
  for (const auto& m : g.gens) {
    out << "gen\n";
    for (std::size_t r = 0; r < g.dim; ++r) {
      for (std::size_t c = 0; c < g.dim; ++c) out << (c ? " " : "") << m[r * g.dim + c];
      out << '\n';
    }
  }
  return out.str();
}

ProjectiveAction projective_action(const MatrixGroup& m, std::vector<FiniteField::Elem> start) {
  const auto& f = m.field;
  const std::size_t d = m.dim;
  if (start.empty()) {
    start.assign(d, 0);
    start[0] = 1;
  }
  if (start.size() != d) throw InputError("projective_action: start vector has wrong length");
  auto normalize = [&](std::vector<FiniteField::Elem>& v) {
    std::size_t i = 0;
    while (i < d && v[i] == 0) ++i;
    if (i == d) throw InputError("projective_action: zero vector");
    auto s = f.inv(v[i]);
    for (auto& x : v) x = f.mul(x, s);
  };
  auto code = [&](const std::vector<FiniteField::Elem>& v) {
    std::uint64_t c = 0;
    for (auto x : v) c = c * f.order() + x;
    return c;
  };
  normalize(start);
  std::vector<std::vector<FiniteField::Elem>> pts{start};
  std::unordered_map<std::uint64_t, Point> index{{code(start), 0}};
  std::vector<std::vector<Point>> images(m.gens.size());
  std::vector<FiniteField::Elem> w(d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts.size() > (std::size_t{1} << 22)) throw ResourceError("projective_action: orbit too large");
    for (std::size_t k = 0; k < m.gens.size(); ++k) {
      const auto& g = m.gens[k];
      for (std::size_t c = 0; c < d; ++c) {
        FiniteField::Elem s = 0;
        for (std::size_t r = 0; r < d; ++r) s = f.add(s, f.mul(pts[i][r], g[r * d + c]));
        w[c] = s;
      }
      normalize(w);
      auto [it, fresh] = index.emplace(code(w), static_cast<Point>(pts.size()));
      if (fresh) pts.push_back(w);
      images[k].push_back(it->second);
    }
  }
  std::vector<Permutation> gens;
  for (auto& img : images) gens.emplace_back(std::move(img));
  return ProjectiveAction{PermGroup(pts.size(), std::move(gens)), std::move(pts)};
}

PermGroup build_named(std::string_view name, const std::vector<std::string>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw InputError(std::string(name) + " expects " + std::to_string(k) + " parameter(s)");
  };
  auto num = [&](std::size_t i) { return parse_uint(params[i], "parameter"); };
  if (name == "sym") return need(1), sym_group(num(0));
  if (name == "alt") return need(1), alt_group(num(0));
  if (name == "cyclic") return need(1), cyclic_group(num(0));
  if (name == "dihedral") return need(1), dihedral_group(num(0));
  if (name == "psl2" || name == "pgl2") {
    need(1);
    auto q = num(0);
    if (prime_power(q).first == 0) throw InputError(std::string(name) + ": q must be a prime power");
    if (q > FiniteField::kMaxOrder) throw ResourceError(std::string(name) + ": q too large");
    return name == "psl2" ? psl2_group(static_cast<std::uint32_t>(q)) : pgl2_group(static_cast<std::uint32_t>(q));
  }
  if (name == "sp2m2_forms") {
    need(2);
    const std::string& t = params[1];
    bool plus;
    if (t == "+" || t == "plus") plus = true;
    else if (t == "-" || t == "minus") plus = false;
    else throw InputError("sp2m2_forms: type must be plus or minus");
    return sp2m2_forms(num(0), plus);
  }
  if (name == "matrix_action") {
    need(1);
    return projective_action(parse_matrix_file(params[0])).group;
  }
  throw InputError("unknown group name '" + std::string(name) + "'");
}

PermGroup build_named(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::vector<std::string> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    if (name == "matrix_action") {
      params.emplace_back(rest);
    } else {
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string_view::npos) comma = rest.size();
        params.emplace_back(rest.substr(pos, comma - pos));
        pos = comma + 1;
      }
    }
  }
  return build_named(name, params);
}

}  // namespace xprim
