#include "xprim/base/base_size.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "xprim/parallel.hpp"
#include "xprim/perm/enumerate.hpp"
#include "xprim/perm/orbit.hpp"
#include "xprim/structure/blocks.hpp"

namespace xprim {

void ClassRecord::validate() const {
  if (size_in_g < 1) throw InputError("class record '" + label + "': size_in_g must be positive");
  if (size_in_h < 0 || size_in_h > size_in_g)
    throw InputError("class record '" + label + "': size_in_h must lie in [0, size_in_g]");
}

BaseTwoResult base_two_search(const PermGroup& g, Point alpha, std::size_t trials, RandomStream& rng,
                              const BaseTwoOptions& opts) {
  if (trials < 1) throw InputError("base_two_search: trials must be positive");
  const std::size_t n = g.degree();
  if (alpha >= n) throw InputError("base_two_search: alpha out of range");
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&alpha, 1));
  auto orbs = orbits(h.generators(), n);
  std::vector<std::size_t> suborbit_of(n);
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (Point x : orbs[i]) suborbit_of[x] = i;
  const std::size_t nontrivial = orbs.size() - 1;

  BaseTwoResult out;
  auto test = [&](Point beta) {
    ++out.candidates_tested;
    const Point pair[2] = {alpha, beta};
    return pointwise_stabilizer(g, pair).order() == 1;
  };
  if (orbs.size() <= opts.exhaustive_rank) {
    for (const auto& o : orbs) {
      if (o.front() == alpha && o.size() == 1) continue;
      if (test(o.front())) {
        out.witness = o.front();
        break;
      }
    }
    out.exhaustive = true;
    return out;
  }
  std::vector<bool> tested(orbs.size(), false);
  tested[suborbit_of[alpha]] = true;
  std::size_t covered = 0;
  ProductReplacement pr(g.generators(), n, rng);
  for (std::size_t t = 0; t < trials && covered < nontrivial; ++t) {
    Point beta = pr.next()[alpha];
    std::size_t s = suborbit_of[beta];
    if (tested[s]) continue;
    tested[s] = true;
    ++covered;
    if (test(beta)) {
      out.witness = beta;
      return out;
    }
  }
  out.exhaustive = covered == nontrivial;
  return out;
}

bool verify_base(const PermGroup& g, const std::vector<Point>& pts) {
  for (std::size_t k = 0; k <= pts.size(); ++k) {
    std::span<const Point> prefix(pts.data(), k);
    bool trivial = pointwise_stabilizer(g, prefix).order() == 1;
    if (trivial != (k == pts.size())) return false;
  }
  return true;
}

namespace {

struct Search {
  const PermGroup& g;
  const BaseCaps& caps;
  std::atomic<std::size_t> nodes{0};

  // Depth-first search for a base of exactly `depth` points extending
  // `prefix`, whose pointwise stabilizer is `s`.
  bool dfs(std::vector<Point>& prefix, const PermGroup& s, std::size_t depth) {
    if (++nodes > caps.max_nodes) throw ResourceError("exact_base_size: node cap exceeded");
    if (s.order() == 1) return true;
    if (prefix.size() == depth) return false;
    const std::size_t left = depth - prefix.size();
    auto orbs = orbits(s.generators(), g.degree());
    std::size_t longest = 0;
    for (const auto& o : orbs) longest = std::max(longest, o.size());
    // |S| is a product of at most `left` orbit lengths, each <= longest.
    BigInt bound = 1;
    for (std::size_t i = 0; i < left; ++i) bound *= static_cast<unsigned long>(longest);
    if (s.order() > bound) return false;
    for (const auto& o : orbs) {
      if (o.size() == 1) continue;
      prefix.push_back(o.front());
      PermGroup next = pointwise_stabilizer(g, prefix);
      if (dfs(prefix, next, depth)) return true;
      prefix.pop_back();
    }
    return false;
  }
};

}  // namespace

BaseResult exact_base_size(const PermGroup& g, const BaseCaps& caps) {
  const std::size_t n = g.degree();
  if (n > caps.max_degree) throw ResourceError("exact_base_size: degree cap exceeded");
  if (!is_transitive(g)) throw InputError("exact_base_size: group is not transitive");
  if (g.order() == 1) return {0, {}, true};
  Search search{g, caps};
  // By transitivity the first base point can be 0.
  const Point zero = 0;
  PermGroup s0 = pointwise_stabilizer(g, std::span<const Point>(&zero, 1));
  for (std::size_t depth = 1; depth <= n; ++depth) {
    if (s0.order() == 1) return {1, {0}, true};
    if (depth == 1) continue;
    auto orbs = orbits(s0.generators(), n);
    std::vector<std::vector<Point>> found(orbs.size());
    std::vector<char> ok(orbs.size(), 0);
    parallel_for(orbs.size(), caps.threads, [&](std::size_t i) {
      if (orbs[i].size() == 1) return;
      std::vector<Point> prefix{0, orbs[i].front()};
      PermGroup s = pointwise_stabilizer(g, prefix);
      if (search.dfs(prefix, s, depth)) {
        ok[i] = 1;
        found[i] = prefix;
      }
    });
    for (std::size_t i = 0; i < orbs.size(); ++i)
      if (ok[i]) {
        if (!verify_base(g, found[i])) throw std::logic_error("exact_base_size: witness failed verification");
        return {found[i].size(), found[i], true};
      }
  }
  throw std::logic_error("exact_base_size: no base found");
}

Rational q_sum(const std::vector<ClassRecord>& records) {
  Rational sum = 0;
  for (const auto& r : records) {
    r.validate();
    sum += Rational(r.size_in_h * r.size_in_h, r.size_in_g);
  }
  sum.canonicalize();
  return sum;
}

Rational calc_aggregate(const std::vector<std::pair<Rational, Rational>>& groups) {
  Rational sum = 0;
  for (const auto& [a, b] : groups) {
    if (b <= 0) throw InputError("calc_aggregate: B must be positive");
    if (a < 0) throw InputError("calc_aggregate: A must be non-negative");
    sum += a * a / b;
  }
  return sum;
}

std::vector<ClassRecord> derive_class_records(const PermGroup& g, Point alpha, const BigInt& cap) {
  if (g.order() > cap) throw ResourceError("derive_class_records: group order exceeds cap");
  if (alpha >= g.degree()) throw InputError("derive_class_records: alpha out of range");
  std::vector<Permutation> candidates;
  for_each_element(g.chain(), [&](const Permutation& x) {
    BigInt o = x.order();
    if (o > 1 && mpz_probab_prime_p(o.get_mpz_t(), 30)) candidates.push_back(x);
  }, cap);
  std::sort(candidates.begin(), candidates.end());
  std::unordered_set<Permutation, PermutationHash> done;
  std::vector<ClassRecord> out;
  std::vector<Permutation> inv;
  for (const auto& s : g.generators()) inv.push_back(s.inverse());
  for (const auto& x : candidates) {
    if (done.count(x)) continue;
    std::vector<Permutation> cls{x};
    done.insert(x);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t k = 0; k < inv.size(); ++k) {
        Permutation y = inv[k] * cls[i] * g.generators()[k];
        if (done.insert(y).second) cls.push_back(y);
      }
    std::size_t fixing = std::count_if(cls.begin(), cls.end(), [&](const Permutation& y) { return y[alpha] == alpha; });
    ClassRecord r;
    r.label = to_string(x.order()) + "_" + std::to_string(out.size() + 1);
    r.size_in_g = static_cast<unsigned long>(cls.size());
    r.size_in_h = static_cast<unsigned long>(fixing);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ClassRecord> parse_class_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<ClassRecord> out;
  auto is_int = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) {
      auto b = c.find_first_not_of(" \t"), e = c.find_last_not_of(" \t");
      f.push_back(b == std::string::npos ? "" : c.substr(b, e - b + 1));
    }
    auto where = "line " + std::to_string(lineno) + ": ";
    if (!header) {
      if (f != std::vector<std::string>{"label", "size_in_g", "size_in_h"})
        throw InputError(where + "expected header 'label,size_in_g,size_in_h'");
      header = true;
      continue;
    }
    if (f.size() != 3) throw InputError(where + "expected three fields");
    if (!is_int(f[1]) || !is_int(f[2])) throw InputError(where + "sizes must be non-negative integers");
    ClassRecord r{f[0], BigInt(f[1]), BigInt(f[2])};
    try {
      r.validate();
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    out.push_back(std::move(r));
  }
  if (!header) throw InputError("class file: missing header");
  return out;
}

std::vector<ClassRecord> parse_class_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open class file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_class_csv(buf.str());
}

std::string write_class_csv(const std::vector<ClassRecord>& records) {
  std::string out = "label,size_in_g,size_in_h\n";
  for (const auto& r : records) out += r.label + "," + to_string(r.size_in_g) + "," + to_string(r.size_in_h) + "\n";
  return out;
}

}  // namespace xprim
