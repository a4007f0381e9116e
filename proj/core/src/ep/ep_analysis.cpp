#include "xprim/ep/ep_analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "xprim/parallel.hpp"
#include "xprim/perm/orbit.hpp"
#include "xprim/structure/actions.hpp"

namespace xprim {

std::vector<std::size_t> EPReport::subdegrees() const {
  std::vector<std::size_t> out;
  for (const auto& s : suborbits) out.push_back(s.size);
  return out;
}

namespace {

void analyze_suborbit(const PermGroup& g, const PermGroup& h, Point alpha, const std::vector<Point>& orb,
                      Suborbit& out) {
  out.representative = orb.front();
  out.size = orb.size();
  if (orb.front() == alpha) {
    out.stabilizer_order = h.order();
    return;
  }
  const Point pair[2] = {alpha, orb.front()};
  out.stabilizer_order = pointwise_stabilizer(g, pair).order();
  if (out.stabilizer_order * static_cast<unsigned long>(out.size) != h.order())
    throw std::logic_error("ep_analyze: orbit-stabilizer check failed");
  if (orb.size() == 1) {
    out.faithful = h.order() == 1;
    out.primitive = false;
    return;
  }
  ActionResult act = induced_action(h, orb);
  out.faithful = act.faithful;
  // Independent order of the image, without the known-order shortcut.
  PermGroup image(act.image.degree(), act.image.generators());
  if (image.order() * act.kernel_order != h.order())
    throw std::logic_error("ep_analyze: image order times kernel order differs from |H|");
  auto v = is_primitive(image);
  out.primitive = v.kind == Primitivity::primitive;
  if (v.witness) {
    BlockSystem bs = *v.witness;
    for (auto& cell : bs.blocks) {
      for (auto& p : cell) p = act.domain[p];
      std::sort(cell.begin(), cell.end());
    }
    std::sort(bs.blocks.begin(), bs.blocks.end());
    bs.seed = {act.domain[bs.seed.first], act.domain[bs.seed.second]};
    if (!permutes_cells(h.generators(), bs.blocks)) throw std::logic_error("ep_analyze: witness not invariant");
    out.witness = std::move(bs);
  }
}

}  // namespace

EPReport ep_analyze(const PermGroup& g, Point alpha, const EPOptions& opts) {
  const std::size_t n = g.degree();
  if (n < 2) throw InputError("ep_analyze: degree must be at least 2");
  if (alpha >= n) throw InputError("ep_analyze: alpha out of range");
  if (!is_transitive(g)) throw InputError("ep_analyze: group is not transitive");
  EPReport r;
  r.degree = n;
  r.alpha = alpha;
  r.group_order = g.order();
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&alpha, 1));
  r.stabilizer_order = h.order();
  r.g_primitive = is_primitive(g).kind == Primitivity::primitive;

  auto orbs = orbits(h.generators(), n);
  std::stable_partition(orbs.begin(), orbs.end(), [&](const auto& o) { return o.front() == alpha; });
  // The orbit containing alpha is {alpha}; its least point is alpha.
  if (orbs.front().size() != 1 || orbs.front().front() != alpha) throw std::logic_error("ep_analyze: alpha not fixed");
  r.rank = orbs.size();
  r.suborbits.resize(orbs.size());
  parallel_for(orbs.size(), opts.threads, [&](std::size_t i) { analyze_suborbit(g, h, alpha, orbs[i], r.suborbits[i]); });

  for (std::size_t i = 1; i < r.suborbits.size(); ++i) {
    const auto& s = r.suborbits[i];
    if (!s.faithful) r.manning_violations.push_back(s.representative);
    if (!s.primitive && !r.failing_suborbit) r.failing_suborbit = s.representative;
  }
  if (!r.g_primitive) {
    r.verdict = EPVerdict::not_ep;
    r.reason = "group-imprimitive";
  } else if (r.failing_suborbit) {
    r.verdict = EPVerdict::not_ep;
    r.reason = "suborbit-imprimitive";
  } else {
    r.verdict = EPVerdict::extremely_primitive;
    if (!r.manning_violations.empty())
      throw std::logic_error("ep_analyze: extremely primitive verdict with an unfaithful suborbit");
  }
  return r;
}

nlohmann::json to_json(const BlockSystem& b) {
  return {{"block_size", b.block_size}, {"blocks", b.blocks}, {"seed", {b.seed.first, b.seed.second}}};
}

nlohmann::json to_json(const EPReport& r) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : r.suborbits) {
    subs.push_back({{"representative", s.representative},
                    {"size", s.size},
                    {"stabilizer_order", to_string(s.stabilizer_order)},
                    {"faithful", s.faithful},
                    {"primitive", s.primitive},
                    {"witness", s.witness ? to_json(*s.witness) : nlohmann::json(nullptr)}});
  }
  return {{"degree", r.degree},
          {"alpha", r.alpha},
          {"group_order", to_string(r.group_order)},
          {"stabilizer_order", to_string(r.stabilizer_order)},
          {"g_primitive", r.g_primitive},
          {"rank", r.rank},
          {"subdegrees", r.subdegrees()},
          {"suborbits", subs},
          {"verdict", r.verdict == EPVerdict::extremely_primitive ? "extremely-primitive" : "not-ep"},
          {"reason", r.reason},
          {"failing_suborbit", r.failing_suborbit ? nlohmann::json(*r.failing_suborbit) : nlohmann::json(nullptr)},
          {"manning_violations", r.manning_violations}};
}

IntersectionVerdict intersection_maximality(const PermGroup& g, Point alpha, const Permutation& x) {
  if (x.degree() != g.degree()) throw DegreeMismatch("intersection_maximality: degree mismatch");
  if (alpha >= g.degree()) throw InputError("intersection_maximality: alpha out of range");
  if (!g.contains(x)) throw InputError("intersection_maximality: x is not in the group");
  const Point beta = x[alpha];
  if (beta == alpha) return IntersectionVerdict::x_in_h;
  PermGroup h = pointwise_stabilizer(g, std::span<const Point>(&alpha, 1));
  const Point pair[2] = {alpha, beta};
  PermGroup k = pointwise_stabilizer(g, pair);
  if (k.order() == h.order()) return IntersectionVerdict::non_maximal;
  auto v = is_maximal(h, k);
  if (v.kind == Maximality::resource) throw ResourceError("intersection_maximality: index cap exceeded");
  return v.kind == Maximality::maximal ? IntersectionVerdict::maximal : IntersectionVerdict::non_maximal;
}

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// G_Delta nontrivial and primitive on each orbit outside Delta.
bool delta_ok(const PermGroup& g, const std::vector<Point>& delta) {
  PermGroup s = pointwise_stabilizer(g, delta);
  if (s.order() == 1) return false;
  std::vector<bool> in_delta(g.degree(), false);
  for (Point d : delta) in_delta[d] = true;
  for (const auto& o : orbits(s.generators(), g.degree())) {
    if (in_delta[o.front()]) continue;
    if (o.size() == 1) return false;
    ActionResult act = induced_action(s, o);
    if (is_primitive(act.image).kind != Primitivity::primitive) return false;
  }
  return true;
}

}  // namespace

EParameterResult e_parameter(const PermGroup& g, std::size_t kmax, const EParameterCaps& caps) {
  if (kmax < 1) throw InputError("e_parameter: kmax must be at least 1");
  const std::size_t n = g.degree();
  if (n < 2 || is_primitive(g).kind != Primitivity::primitive) throw InputError("e_parameter: group is not primitive");
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > n) return {k - 1, false};
    if (k >= 2 && n > caps.max_degree_multi) throw ResourceError("e_parameter: degree cap exceeded for k >= 2");
    if (binomial(n - 1, k - 1) > caps.max_subsets_per_level) throw ResourceError("e_parameter: subset cap exceeded");
    // Delta = {0} + a (k-1)-subset of {1..n-1}, in lexicographic order.
    std::vector<Point> rest(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) rest[i] = static_cast<Point>(i + 1);
    while (true) {
      std::vector<Point> delta{0};
      delta.insert(delta.end(), rest.begin(), rest.end());
      if (!delta_ok(g, delta)) return {k - 1, false};
      std::size_t i = rest.size();
      while (i > 0 && rest[i - 1] == n - (rest.size() - (i - 1))) --i;
      if (i == 0) break;
      ++rest[i - 1];
      for (std::size_t j = i; j < rest.size(); ++j) rest[j] = rest[j - 1] + 1;
    }
  }
  return {kmax, true};
}

}  // namespace xprim
