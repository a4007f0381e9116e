#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xprim/base/base_size.hpp"
#include "xprim/catalog/named.hpp"
#include "xprim/catalog/scenario.hpp"
#include "xprim/ep/ep_analysis.hpp"
#include "xprim/perm/group_file.hpp"
#include "xprim/perm/random.hpp"
#include "xprim/poly/lie_data.hpp"
#include "xprim/poly/verify.hpp"
#include "xprim/structure/actions.hpp"

namespace xprim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
  bool json_out = false;
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  std::string expect;
};

struct GroupArgs {
  std::string group_file;
  std::string named;
  std::string subgroup_file;
  bool stabilizer = false;
  std::size_t alpha = 0;
};

struct Action {
  PermGroup group;
  Point alpha;
  std::string description;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json_out, "Print a JSON report");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--expect", c.expect, "Expected outcome; the exit code then reflects agreement");
}

void add_group(CLI::App* sub, GroupArgs& g) {
  auto* file = sub->add_option("--group", g.group_file, "Group file");
  auto* named = sub->add_option("--named", g.named, "Named construction, e.g. alt:5 or psl2:7");
  file->excludes(named);
  auto* subg = sub->add_option("--subgroup", g.subgroup_file, "Subgroup generator file; act on its cosets");
  auto* stab = sub->add_flag("--stabilizer", g.stabilizer, "Use the point stabilizer (natural action)");
  subg->excludes(stab);
  sub->add_option("--alpha", g.alpha, "Base point for the natural action (0-based)");
}

PermGroup load_parent(const GroupArgs& g) {
  if (!g.group_file.empty()) return parse_group_file(g.group_file);
  if (!g.named.empty()) return build_named(g.named);
  throw InputError("one of --group or --named is required");
}

Action load_action(const GroupArgs& g) {
  PermGroup parent = load_parent(g);
  if (g.subgroup_file.empty()) {
    if (g.alpha >= parent.degree()) throw InputError("--alpha out of range");
    return {parent, static_cast<Point>(g.alpha), "natural action"};
  }
  PermGroup hf = parse_group_file(g.subgroup_file);
  if (hf.degree() != parent.degree()) throw DegreeMismatch("subgroup file degree differs from the group's");
  PermGroup h = subgroup(parent, hf.generators());
  return {coset_action(parent, h), 0, "action on cosets of the subgroup"};
}

std::vector<BigInt> parse_big_list(const std::string& text, const std::string& what) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
      throw InputError(what + ": '" + item + "' is not a nonnegative integer");
    out.emplace_back(item);
  }
  if (out.empty()) throw InputError(what + ": empty list");
  return out;
}

BigInt parse_big(const std::string& text, const std::string& what) { return parse_big_list(text, what).at(0); }

std::string decimal(const Rational& r, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << r.get_d();
  return s.str();
}

json points_json(const std::vector<Point>& pts) { return json(pts); }

int finish(const Common& c, const std::string& outcome, const std::vector<std::string>& allowed) {
  if (c.expect.empty()) return kOk;
  if (std::find(allowed.begin(), allowed.end(), c.expect) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw InputError("--expect must be one of: " + list);
  }
  return c.expect == outcome ? kOk : kFail;
}

// ---------------------------------------------------------------------------

int cmd_ep(const Common& c, const GroupArgs& g, std::size_t e_max, std::ostream& out) {
  Action a = load_action(g);
  EPOptions eo;
  eo.threads = c.threads;
  EPReport r = ep_analyze(a.group, a.alpha, eo);
  const bool ep = r.verdict == EPVerdict::extremely_primitive;
  // Re-verify block witnesses against the generators of H.
  const Point alpha = a.alpha;
  PermGroup h = pointwise_stabilizer(a.group, std::span<const Point>(&alpha, 1));
  bool witnesses_ok = true;
  for (const auto& s : r.suborbits)
    if (s.witness && !permutes_cells(h.generators(), s.witness->blocks)) witnesses_ok = false;
  std::optional<EParameterResult> e;
  if (e_max > 0 && r.g_primitive) e = e_parameter(a.group, e_max);
  if (c.json_out) {
    json j = to_json(r);
    j["command"] = "ep";
    j["action"] = a.description;
    j["witnesses_verified"] = witnesses_ok;
    if (e) j["e_parameter"] = {{"value", e->value}, {"truncated", e->truncated}};
    out << j.dump(2) << "\n";
  } else {
    out << a.description << ": degree " << r.degree << ", |G| = " << r.group_order << ", |H| = " << r.stabilizer_order
        << ", rank " << r.rank << "\n";
    out << "G " << (r.g_primitive ? "primitive" : "imprimitive") << "\nsubdegrees:";
    for (auto d : r.subdegrees()) out << " " << d;
    out << "\n";
    for (std::size_t i = 1; i < r.suborbits.size(); ++i) {
      const auto& s = r.suborbits[i];
      out << "  suborbit at " << s.representative << ": size " << s.size << ", two-point stabilizer order "
          << s.stabilizer_order << ", " << (s.faithful ? "faithful" : "unfaithful") << ", "
          << (s.primitive ? "primitive" : "imprimitive");
      if (s.witness) out << " (block size " << s.witness->block_size << ")";
      out << "\n";
    }
    out << "verdict: " << (ep ? "extremely primitive" : "not extremely primitive");
    if (!r.reason.empty()) out << " (" << r.reason << ")";
    out << "\n";
    if (e) out << "e(G) = " << e->value << (e->truncated ? " or more" : "") << "\n";
    if (!witnesses_ok) out << "block witness failed re-verification\n";
  }
  if (!witnesses_ok) return kFail;
  return finish(c, ep ? "ep" : "not-ep", {"ep", "not-ep"});
}

int cmd_base(const Common& c, const GroupArgs& g, std::size_t trials, std::size_t cap, std::ostream& out) {
  Action a = load_action(g);
  if (trials > 0) {
    RandomStream rng(c.seed);
    BaseTwoResult r = base_two_search(a.group, a.alpha, trials, rng);
    const std::string outcome = r.witness ? "2" : (r.exhaustive ? "greater-than-2" : "unknown");
    bool verified = true;
    if (r.witness) verified = verify_base(a.group, {a.alpha, *r.witness});
    if (c.json_out) {
      json j{{"command", "base"},
             {"mode", "base-two"},
             {"alpha", a.alpha},
             {"base_two", r.witness.has_value()},
             {"exhaustive", r.exhaustive},
             {"candidates_tested", r.candidates_tested},
             {"verified", verified}};
      if (r.witness) j["witness"] = points_json({a.alpha, *r.witness});
      out << j.dump(2) << "\n";
    } else if (r.witness) {
      out << "base of size 2: " << a.alpha << " " << *r.witness << (verified ? " (verified)" : " (NOT verified)")
          << "\n";
    } else {
      out << (r.exhaustive ? "no base of size 2 (every suborbit tested)" : "no base of size 2 found") << "\n";
    }
    if (!verified) return kFail;
    return finish(c, outcome, {"2", "greater-than-2", "unknown"});
  }
  BaseCaps caps;
  caps.threads = c.threads;
  if (cap > 0) caps.max_nodes = cap;
  BaseResult r = exact_base_size(a.group, caps);
  const bool verified = verify_base(a.group, r.witness);
  if (c.json_out) {
    json j{{"command", "base"},
           {"mode", "exact"},
           {"base_size", r.base_size},
           {"witness", points_json(r.witness)},
           {"exhaustive", r.exhaustive},
           {"verified", verified}};
    out << j.dump(2) << "\n";
  } else {
    out << "base size " << r.base_size << ", witness:";
    for (auto p : r.witness) out << " " << p;
    out << (verified ? " (verified)" : " (NOT verified)") << "\n";
  }
  if (!verified) return kFail;
  if (c.expect.empty()) return kOk;
  return c.expect == std::to_string(r.base_size) ? kOk : kFail;
}

int cmd_qsum(const Common& c, const GroupArgs& g, const std::string& classes, std::ostream& out) {
  std::vector<ClassRecord> recs;
  if (!classes.empty()) {
    recs = parse_class_file(classes);
  } else {
    Action a = load_action(g);
    recs = derive_class_records(a.group, a.alpha);
  }
  Rational q = q_sum(recs);
  const bool below = q < 1;
  if (c.json_out) {
    json rows = json::array();
    for (const auto& r : recs)
      rows.push_back({{"label", r.label}, {"size_in_g", r.size_in_g.get_str()}, {"size_in_h", r.size_in_h.get_str()}});
    json j{{"command", "qsum"},
           {"classes", rows},
           {"q_sum", to_string(q)},
           {"q_sum_decimal", decimal(q)},
           {"below_one", below}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : recs) out << "  " << r.label << ": |x^G| = " << r.size_in_g << ", |x^G n H| = " << r.size_in_h << "\n";
    out << "Q = " << to_string(q) << " ~ " << decimal(q) << (below ? " < 1 (base size 2)" : " >= 1") << "\n";
  }
  return finish(c, below ? "below-1" : "at-least-1", {"below-1", "at-least-1"});
}

int cmd_feasible(const Common& c, std::size_t rank, const std::string& indices, const std::string& degree,
                 std::ostream& out) {
  auto idx = parse_big_list(indices, "--indices");
  BigInt n = parse_big(degree, "--degree");
  Feasibility f = char_feasibility(rank, idx, n);
  // Re-verify the witness.
  if (f.feasible) {
    BigInt sum = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sum += idx[i] * static_cast<unsigned long>(f.counts[i]);
      cnt += f.counts[i];
    }
    if (sum != n - 1 || cnt + 1 != rank) throw std::logic_error("feasibility witness does not verify");
  }
  if (c.json_out) {
    json ind = json::array();
    for (const auto& v : idx) ind.push_back(v.get_str());
    json j{{"command", "feasible"}, {"rank", rank}, {"indices", ind}, {"degree", n.get_str()}, {"feasible", f.feasible}};
    if (f.feasible) {
      json w = json::array();
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t k = 0; k < f.counts[i]; ++k) w.push_back(idx[i].get_str());
      j["witness"] = w;
      j["counts"] = f.counts;
    }
    out << j.dump(2) << "\n";
  } else if (f.feasible) {
    out << "feasible: " << (n - 1) << " =";
    bool first = true;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t k = 0; k < f.counts[i]; ++k) {
        out << (first ? " " : " + ") << idx[i];
        first = false;
      }
    out << "\n";
  } else {
    out << "infeasible: no " << (rank - 1) << " indices sum to " << (n - 1) << "\n";
  }
  return finish(c, f.feasible ? "feasible" : "infeasible", {"feasible", "infeasible"});
}

int cmd_bounds(const Common& c, const std::vector<std::string>& certs, const std::string& table,
               const std::string& positive, long q0, std::ostream& out) {
  json reports = json::array();
  bool all_ok = true;
  std::string outcome;
  for (const auto& path : certs) {
    BoundCertificate cert = parse_certificate_file(path);
    CertificateResult r = verify_certificate(cert);
    outcome = to_string(r.kind);
    if (r.kind != CertificateResult::Kind::proven) all_ok = false;
    json j{{"label", cert.label},
           {"q0", cert.q0.get_str()},
           {"prime_restriction", cert.restriction.str()},
           {"claim", cert.claim.str()},
           {"verdict", to_string(r.kind)},
           {"anchor", cert.anchor}};
    if (r.kind != CertificateResult::Kind::proven) j["q"] = r.q.get_str();
    if (!r.method.empty()) j["method"] = r.method;
    Interval v = certificate_value(cert, cert.q0);
    j["margin_at_q0"] = {{"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}};
    reports.push_back(j);
    if (!c.json_out) {
      out << cert.label << ": " << to_string(r.kind);
      if (r.kind == CertificateResult::Kind::refuted) out << " at q = " << r.q;
      if (r.kind == CertificateResult::Kind::checked_up_to) out << " (q <= " << r.q << ")";
      out << "\n";
      if (!r.method.empty()) out << "  " << r.method << "\n";
      out << "  claim - sum A^2/B at q0 = " << cert.q0 << ": ~" << decimal(v.lo) << "\n";
    }
  }
  if (!positive.empty()) {
    QExpr e = parse_expr(positive);
    PositivityResult r = verify_positive(e, BigInt(q0));
    outcome = to_string(r.kind);
    if (r.kind != PositivityResult::Kind::proven) all_ok = false;
    json j{{"expression", e.str()}, {"q0", std::to_string(q0)}, {"verdict", to_string(r.kind)}};
    if (r.kind != PositivityResult::Kind::proven) j["q"] = r.q.get_str();
    if (!r.method.empty()) j["method"] = r.method;
    reports.push_back(j);
    if (!c.json_out) {
      out << e.str() << " > 0: " << to_string(r.kind);
      if (r.kind != PositivityResult::Kind::proven) out << " (q = " << r.q << ")";
      out << "\n";
      if (!r.method.empty()) out << "  " << r.method << "\n";
    }
  }
  if (!table.empty()) {
    std::vector<LieFamily> fams;
    if (table == "all")
      fams.assign(std::begin(kAllLieFamilies), std::end(kAllLieFamilies));
    else
      fams.push_back(parse_lie_family(table));
    for (auto f : fams) {
      json row{{"family", to_string(f)}, {"min_q", class_bound_min_q(f)}};
      json entries = json::array();
      if (!c.json_out) out << to_string(f) << ":";
      for (int i = 1; i <= 5; ++i) {
        try {
          QExpr e = class_bound_table(f, i);
          entries.push_back(e.str());
          if (!c.json_out) out << "  l" << i << " = " << e.str();
        } catch (const InputError&) {
          entries.push_back(nullptr);
          if (!c.json_out) out << "  l" << i << " = -";
        }
      }
      row["bounds"] = entries;
      row["i2_bound"] = i_r_bound(f, 2).str();
      row["i3_bound"] = i_r_bound(f, 3).str();
      row["unipotent_count"] = unipotent_count(f).str();
      reports.push_back(row);
      if (!c.json_out) out << "\n";
    }
  }
  if (certs.empty() && positive.empty() && table.empty()) throw InputError("bounds needs --cert, --positive or --table");
  if (c.json_out) out << json{{"command", "bounds"}, {"results", reports}}.dump(2) << "\n";
  if (!c.expect.empty()) {
    if (certs.size() + (positive.empty() ? 0 : 1) != 1) throw InputError("--expect needs exactly one check");
    return finish(c, outcome, {"proven", "checked_up_to", "refuted", "counterexample"});
  }
  return all_ok ? kOk : kFail;
}

int cmd_scenario(const Common& c, const std::vector<std::string>& paths, bool stretch, std::ostream& out,
                 std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      auto more = scenario_files(p);
      files.insert(files.end(), more.begin(), more.end());
    } else {
      files.emplace_back(p);
    }
  }
  if (files.empty()) throw InputError("no scenario files given");
  std::vector<Scenario> scenarios;
  for (const auto& f : files) {
    Scenario s = parse_scenario(f);
    if (s.stretch && !stretch) {
      err << "skipping stretch scenario " << s.name << " (use --stretch)\n";
      continue;
    }
    scenarios.push_back(std::move(s));
  }
  std::vector<ScenarioRun> runs(scenarios.size());
  ScenarioOptions so;
  const std::size_t workers = std::max<std::size_t>(1, std::min(c.threads, scenarios.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < scenarios.size();) runs[i] = run_scenario(scenarios[i], so);
    }));
  for (auto& f : pool) f.get();

  bool any_fail = false, any_skip = false;
  json arr = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    any_fail |= r.status == ScenarioRun::Status::fail;
    any_skip |= r.status == ScenarioRun::Status::skipped;
    json j = to_json(r);
    j["scenario"] = to_json(scenarios[i]);
    arr.push_back(j);
    if (!c.json_out) {
      out << std::left << std::setw(24) << r.name << " " << to_string(r.status);
      if (r.report) {
        out << "  rank " << r.report->rank << ", subdegrees";
        for (auto d : r.report->subdegrees()) out << " " << d;
        out << ", " << (r.report->verdict == EPVerdict::extremely_primitive ? "EP" : "not EP");
      }
      if (r.base) out << ", base size " << r.base->base_size;
      out << "\n";
      for (const auto& d : r.diffs) out << "    " << d << "\n";
      if (!r.skip_reason.empty()) out << "    " << r.skip_reason << "\n";
      for (const auto& n : scenarios[i].notes) out << "    note: " << n << "\n";
    }
  }
  if (c.json_out) out << json{{"command", "scenario"}, {"runs", arr}}.dump(2) << "\n";
  if (any_fail) return kFail;
  if (any_skip) return kResource;
  return kOk;
}

int cmd_catalog(const Common& c, const std::string& named, const std::string& dir, std::ostream& out) {
  if (!named.empty()) {
    PermGroup g = build_named(named);
    if (c.json_out) {
      json gens = json::array();
      for (const auto& p : g.generators()) gens.push_back(p.to_cycle_string());
      out << json{{"command", "catalog"}, {"name", named}, {"degree", g.degree()}, {"order", g.order().get_str()},
                  {"generators", gens}}
                 .dump(2)
          << "\n";
    } else {
      out << write_group_text(g, named + ", order " + g.order().get_str());
    }
    return kOk;
  }
  static const char* kNames[] = {"sym:n",  "alt:n",  "cyclic:n", "dihedral:n", "psl2:q",
                                 "pgl2:q", "sp2m2_forms:m,plus|minus", "matrix_action:path"};
  json j{{"command", "catalog"}, {"constructions", kNames}};
  if (!c.json_out) {
    out << "constructions:";
    for (auto n : kNames) out << " " << n;
    out << "\n";
  }
  if (!dir.empty()) {
    json arr = json::array();
    for (const auto& f : scenario_files(dir)) {
      Scenario s = parse_scenario(f);
      arr.push_back(to_json(s));
      if (!c.json_out) out << "  " << std::left << std::setw(24) << s.name << " " << s.provenance << "\n";
    }
    j["scenarios"] = arr;
  }
  if (c.json_out) out << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"xprim: extreme primitivity, base sizes and symbolic bounds for permutation groups"};
  app.require_subcommand(1);
  Common common;
  GroupArgs group;

  auto* ep = app.add_subcommand("ep", "Extreme-primitivity analysis");
  add_common(ep, common);
  add_group(ep, group);
  std::size_t e_max = 0;
  ep->add_option("--e-max", e_max, "Also compute e(G) up to this value");

  auto* base = app.add_subcommand("base", "Base size");
  add_common(base, common);
  add_group(base, group);
  std::size_t trials = 0, cap = 0;
  base->add_option("--trials", trials, "Random base-two search with this many trials instead of the exact search");
  base->add_option("--cap", cap, "Search node cap for the exact search");

  auto* qsum = app.add_subcommand("qsum", "Fixed-point-ratio sum Q(G,H)");
  add_common(qsum, common);
  add_group(qsum, group);
  std::string classes;
  qsum->add_option("--classes", classes, "Class CSV (label,size_in_g,size_in_h)");

  auto* feas = app.add_subcommand("feasible", "Subdegree feasibility");
  add_common(feas, common);
  std::size_t rank = 0;
  std::string indices, degree;
  feas->add_option("--rank", rank, "Rank")->required();
  feas->add_option("--indices", indices, "Comma-separated candidate subdegrees")->required();
  feas->add_option("--degree", degree, "Degree")->required();

  auto* bounds = app.add_subcommand("bounds", "Symbolic bound verification");
  add_common(bounds, common);
  std::vector<std::string> certs;
  std::string table, positive;
  long q0 = 2;
  bounds->add_option("--cert", certs, "Certificate file (repeatable)");
  bounds->add_option("--table", table, "Print the class-size bounds of a family, or 'all'");
  bounds->add_option("--positive", positive, "Prove an expression positive for prime powers q >= --q0");
  bounds->add_option("--q0", q0, "Least q for --positive")->check(CLI::Range(2L, 1L << 20));

  auto* scen = app.add_subcommand("scenario", "Run scenario files or directories");
  add_common(scen, common);
  std::vector<std::string> paths;
  bool stretch = false;
  scen->add_option("paths", paths, "Scenario files or directories")->required();
  scen->add_flag("--stretch", stretch, "Include stretch scenarios");

  auto* cat = app.add_subcommand("catalog", "List or print constructions");
  add_common(cat, common);
  std::string cat_named, cat_dir;
  cat->add_option("--named", cat_named, "Print the generators of a construction");
  cat->add_option("--scenarios", cat_dir, "List the scenarios in a directory");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    for (auto* s : app.get_subcommands())
      if (s->parsed()) {
        err << "xprim " << s->get_name() << ": " << e.what() << "\n";
        return kInput;
      }
    err << "xprim: " << e.what() << "\n";
    return kInput;
  }

  try {
    if (ep->parsed()) return cmd_ep(common, group, e_max, out);
    if (base->parsed()) return cmd_base(common, group, trials, cap, out);
    if (qsum->parsed()) return cmd_qsum(common, group, classes, out);
    if (feas->parsed()) return cmd_feasible(common, rank, indices, degree, out);
    if (bounds->parsed()) return cmd_bounds(common, certs, table, positive, q0, out);
    if (scen->parsed()) return cmd_scenario(common, paths, stretch, out, err);
    if (cat->parsed()) return cmd_catalog(common, cat_named, cat_dir, out);
  } catch (const InputError& e) {
    err << "xprim: input error: " << e.what() << "\n";
    return kInput;
  } catch (const ResourceError& e) {
    err << "xprim: resource cap: " << e.what() << "\n";
    return kResource;
  }
  return kInput;
}

}  // namespace xprim::cli
