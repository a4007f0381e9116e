#include "xprim/catalog/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "xprim/catalog/named.hpp"
#include "xprim/perm/group_file.hpp"
#include "xprim/structure/actions.hpp"

namespace xprim {

namespace {

using nlohmann::json;

BigInt big_of(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return BigInt(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("scenario: '" + key + "' must be a nonnegative integer");
    return BigInt(s);
  }
  throw InputError("scenario: '" + key + "' must be a nonnegative integer");
}

std::size_t size_of(const json& v, const std::string& key) {
  BigInt b = big_of(v, key);
  if (!b.fits_ulong_p()) throw InputError("scenario: '" + key + "' too large");
  return b.get_ui();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string join(const std::vector<BigInt>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "}";
}

}  // namespace

bool ScenarioExpectation::empty() const {
  return !order && !index && !rank && !subdegrees && !ep && !base_size && !stabilizer_orders;
}

Scenario parse_scenario_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InputError("scenario: expected a JSON object");
  static const std::vector<std::string> known{"name",       "group",         "subgroup", "action",
                                              "expected",   "provenance",    "almost_simple",
                                              "stretch",    "notes"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw InputError("scenario: unknown key '" + k + "'");
  Scenario s;
  if (!j.contains("name") || !j["name"].is_string()) throw InputError("scenario: missing name");
  s.name = j["name"].get<std::string>();
  auto where = [&](const std::string& what) { return InputError("scenario " + s.name + ": " + what); };

  if (!j.contains("group") || !j["group"].is_object()) throw where("missing group");
  const json& g = j["group"];
  if (!g.contains("kind") || !g["kind"].is_string()) throw where("group needs a kind");
  s.group.kind = g["kind"].get<std::string>();
  if (g.contains("params")) {
    for (const auto& p : g["params"]) s.group.params.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  }
  if (g.contains("path")) s.group.path = base_dir / g["path"].get<std::string>();
  if (s.group.kind == "file" && s.group.path.empty()) throw where("group kind 'file' needs a path");

  if (!j.contains("subgroup")) throw where("missing subgroup");
  const json& h = j["subgroup"];
  if (h.is_string()) {
    if (h.get<std::string>() != "point-stabilizer") throw where("subgroup must be \"point-stabilizer\" or an object");
    s.subgroup.point_stabilizer = true;
  } else if (h.is_object()) {
    if (h.contains("gens"))
      for (const auto& c : h["gens"]) s.subgroup.gens.push_back(c.get<std::string>());
    if (h.contains("path")) s.subgroup.path = base_dir / h["path"].get<std::string>();
    if (s.subgroup.gens.empty() && s.subgroup.path.empty()) throw where("subgroup needs gens or path");
  } else {
    throw where("bad subgroup");
  }

  std::string action = j.value("action", std::string("natural"));
  if (action == "natural")
    s.action = ActionKind::natural;
  else if (action == "cosets")
    s.action = ActionKind::cosets;
  else
    throw where("action must be natural or cosets");
  if (s.action == ActionKind::natural && !s.subgroup.point_stabilizer)
    throw where("the natural action needs subgroup \"point-stabilizer\"");

  if (j.contains("expected")) {
    const json& e = j["expected"];
    if (!e.is_object()) throw where("expected must be an object");
    for (const auto& [k, v] : e.items()) {
      if (k == "order")
        s.expected.order = big_of(v, k);
      else if (k == "index")
        s.expected.index = big_of(v, k);
      else if (k == "rank")
        s.expected.rank = size_of(v, k);
      else if (k == "ep")
        s.expected.ep = v.get<bool>();
      else if (k == "base_size")
        s.expected.base_size = size_of(v, k);
      else if (k == "subdegrees") {
        std::vector<std::size_t> d;
        for (const auto& x : v) d.push_back(size_of(x, k));
        std::sort(d.begin(), d.end());
        s.expected.subdegrees = d;
      } else if (k == "stabilizer_orders") {
        std::vector<BigInt> d;
        for (const auto& x : v) d.push_back(big_of(x, k));
        std::sort(d.begin(), d.end());
        s.expected.stabilizer_orders = d;
      } else {
        throw where("unknown expected key '" + k + "'");
      }
    }
  }
  s.provenance = j.value("provenance", std::string());
  if (!s.expected.empty() && s.provenance.empty()) throw where("expected values need a provenance note");
  s.almost_simple = j.value("almost_simple", false);
  s.stretch = j.value("stretch", false);
  if (j.contains("notes"))
    for (const auto& n : j["notes"]) s.notes.push_back(n.get<std::string>());
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("scenario " + path.string() + ": " + e.what());
  }
  try {
    return parse_scenario_json(j, path.parent_path());
  } catch (const json::exception& e) {
    throw InputError("scenario " + path.string() + ": " + e.what());
  }
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["group"] = {{"kind", s.group.kind}};
  if (!s.group.params.empty()) j["group"]["params"] = s.group.params;
  if (!s.group.path.empty()) j["group"]["path"] = s.group.path.filename().string();
  if (s.subgroup.point_stabilizer)
    j["subgroup"] = "point-stabilizer";
  else if (!s.subgroup.path.empty())
    j["subgroup"] = {{"path", s.subgroup.path.filename().string()}};
  else
    j["subgroup"] = {{"gens", s.subgroup.gens}};
  j["action"] = s.action == ActionKind::natural ? "natural" : "cosets";
  json e = json::object();
  if (s.expected.order) e["order"] = s.expected.order->get_str();
  if (s.expected.index) e["index"] = s.expected.index->get_str();
  if (s.expected.rank) e["rank"] = *s.expected.rank;
  if (s.expected.subdegrees) e["subdegrees"] = *s.expected.subdegrees;
  if (s.expected.ep) e["ep"] = *s.expected.ep;
  if (s.expected.base_size) e["base_size"] = *s.expected.base_size;
  if (s.expected.stabilizer_orders) {
    json a = json::array();
    for (const auto& v : *s.expected.stabilizer_orders) a.push_back(v.get_str());
    e["stabilizer_orders"] = a;
  }
  j["expected"] = e;
  j["provenance"] = s.provenance;
  j["almost_simple"] = s.almost_simple;
  if (s.stretch) j["stretch"] = true;
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

std::vector<std::filesystem::path> scenario_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

ScenarioAction build_scenario_action(const Scenario& s, const ScenarioOptions& opts) {
  PermGroup parent = [&] {
    if (s.group.kind == "file") return parse_group_file(s.group.path);
    auto params = s.group.params;
    if (!s.group.path.empty()) params.push_back(s.group.path.string());
    return build_named(s.group.kind, params);
  }();
  if (s.action == ActionKind::natural) return {parent, std::nullopt, parent, 0};

  PermGroup h = [&] {
    if (s.subgroup.point_stabilizer) {
      Point zero = 0;
      return pointwise_stabilizer(parent, std::span<const Point>(&zero, 1));
    }
    std::vector<Permutation> gens;
    if (!s.subgroup.path.empty()) {
      PermGroup f = parse_group_file(s.subgroup.path);
      if (f.degree() != parent.degree()) throw DegreeMismatch("scenario " + s.name + ": subgroup degree mismatch");
      gens = f.generators();
    }
    for (const auto& c : s.subgroup.gens) gens.push_back(parse_cycles(c, parent.degree()));
    return subgroup(parent, std::move(gens));
  }();
  CosetActionOptions co;
  co.index_cap = opts.index_cap;
  PermGroup act = coset_action(parent, h, co);
  return {parent, h, act, 0};
}

ScenarioRun run_scenario(const Scenario& s, const ScenarioOptions& opts) {
  ScenarioRun run;
  run.name = s.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ScenarioAction a = build_scenario_action(s, opts);
    run.order = a.parent.order();
    run.index = a.action.degree();
    EPOptions eo;
    eo.threads = opts.threads;
    run.report = ep_analyze(a.action, a.alpha, eo);
    const EPReport& r = *run.report;
    const bool ep = r.verdict == EPVerdict::extremely_primitive;
    if (s.expected.base_size || (s.almost_simple && ep)) {
      BaseCaps caps = opts.base_caps;
      caps.threads = opts.threads;
      try {
        run.base = exact_base_size(a.action, caps);
      } catch (const ResourceError&) {
        if (s.expected.base_size) throw;
      }
    }

    auto diff = [&](const std::string& what, const std::string& want, const std::string& got) {
      if (want != got) run.diffs.push_back(what + ": expected " + want + ", got " + got);
    };
    const auto& e = s.expected;
    if (e.order) diff("order", e.order->get_str(), run.order.get_str());
    if (e.index) diff("index", e.index->get_str(), run.index.get_str());
    if (e.rank) diff("rank", std::to_string(*e.rank), std::to_string(r.rank));
    if (e.subdegrees) {
      auto got = r.subdegrees();
      std::sort(got.begin(), got.end());
      diff("subdegrees", join(*e.subdegrees), join(got));
    }
    if (e.ep) diff("ep", *e.ep ? "yes" : "no", ep ? "yes" : "no");
    if (e.stabilizer_orders) {
      std::vector<BigInt> got;
      for (std::size_t i = 1; i < r.suborbits.size(); ++i) got.push_back(r.suborbits[i].stabilizer_order);
      std::sort(got.begin(), got.end());
      diff("stabilizer_orders", join(*e.stabilizer_orders), join(got));
    }
    if (e.base_size && run.base) diff("base_size", std::to_string(*e.base_size), std::to_string(run.base->base_size));
    if (s.almost_simple && ep && run.base && run.base->base_size == 2)
      run.diffs.push_back("exclusion: almost simple, extremely primitive, and base size 2");
    run.status = run.diffs.empty() ? ScenarioRun::Status::pass : ScenarioRun::Status::fail;
  } catch (const ResourceError& err) {
    run.status = ScenarioRun::Status::skipped;
    run.skip_reason = err.what();
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

std::string to_string(ScenarioRun::Status s) {
  switch (s) {
    case ScenarioRun::Status::pass: return "pass";
    case ScenarioRun::Status::fail: return "fail";
    case ScenarioRun::Status::skipped: return "skipped";
  }
  return "?";
}

json to_json(const ScenarioRun& r) {
  json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  j["diffs"] = r.diffs;
  if (!r.skip_reason.empty()) j["skip_reason"] = r.skip_reason;
  if (r.status != ScenarioRun::Status::skipped) {
    j["order"] = r.order.get_str();
    j["index"] = r.index.get_str();
  }
  if (r.report) j["ep"] = to_json(*r.report);
  if (r.base) {
    j["base_size"] = r.base->base_size;
    j["base_witness"] = r.base->witness;
  }
  return j;
}

}  // namespace xprim
