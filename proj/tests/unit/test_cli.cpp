#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

const std::string kData = XPRIM_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = xprim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("ep subcommand") {
  auto r = invoke({"ep", "--named", "pgl2:7", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["rank"] == 2);
  CHECK(j["verdict"] == "extremely-primitive");
  CHECK(invoke({"ep", "--named", "pgl2:7", "--expect", "ep"}).code == 0);
  CHECK(invoke({"ep", "--named", "pgl2:7", "--expect", "not-ep"}).code == 1);
  CHECK(invoke({"ep", "--named", "pgl2:7", "--expect", "maybe"}).code == 2);
  auto e = invoke({"ep", "--named", "sym:6", "--e-max", "6", "--json"});
  CHECK(json::parse(e.out)["e_parameter"]["value"] == 4);
  auto d10 = invoke({"ep", "--named", "alt:5", "--subgroup", kData + "/groups/d10_in_alt5.group", "--json"});
  REQUIRE(d10.code == 0);
  json dj = json::parse(d10.out);
  CHECK(dj["rank"] == 2);
  CHECK(dj["degree"] == 6);
  CHECK(dj["verdict"] == "extremely-primitive");
  auto s5 = invoke({"ep", "--named", "sym:5", "--subgroup", kData + "/groups/d10_in_alt5.group", "--json"});
  REQUIRE(s5.code == 0);
  CHECK(json::parse(s5.out)["witnesses_verified"] == true);
  auto cos = invoke({"ep", "--group", kData + "/groups/u3_3_28.group", "--subgroup",
                    kData + "/groups/l2_7_in_u3_3.group", "--expect", "not-ep"});
  CHECK(cos.code == 0);
}

TEST_CASE("output is deterministic") {
  auto a = invoke({"scenario", kData + "/scenarios", "--json"});
  auto b = invoke({"scenario", kData + "/scenarios", "--json", "--threads", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("base subcommand") {
  auto r = invoke({"base", "--named", "dihedral:5", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["base_size"] == 2);
  CHECK(j["verified"] == true);
  CHECK(invoke({"base", "--named", "pgl2:7", "--expect", "3"}).code == 0);
  CHECK(invoke({"base", "--named", "pgl2:7", "--trials", "50", "--expect", "greater-than-2"}).code == 0);
  CHECK(invoke({"base", "--named", "dihedral:7", "--trials", "50", "--expect", "2"}).code == 0);
  CHECK(invoke({"base", "--named", "sym:30", "--cap", "10"}).code == 3);
}

TEST_CASE("qsum subcommand") {
  auto r = invoke({"qsum", "--named", "dihedral:5", "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["q_sum"] == "1/5");
  CHECK(invoke({"qsum", "--named", "dihedral:5", "--expect", "below-1"}).code == 0);
  CHECK(invoke({"qsum", "--classes", "/nonexistent.csv"}).code == 2);
}

TEST_CASE("feasible subcommand") {
  auto j2 = invoke({"feasible", "--rank", "3", "--indices", "100,280,315", "--degree", "416", "--json"});
  REQUIRE(j2.code == 0);
  CHECK(json::parse(j2.out)["witness"] == json({"100", "315"}));
  auto f4 = invoke({"feasible", "--rank", "7", "--indices", "4064256,978432,179712,163072,89856,69888,17472,2457,819",
                   "--degree", "5222400", "--expect", "infeasible"});
  CHECK(f4.code == 0);
  CHECK(invoke({"feasible", "--rank", "3", "--indices", "1x", "--degree", "4"}).code == 2);
  CHECK(invoke({"feasible", "--rank", "3"}).code == 2);
}

TEST_CASE("bounds subcommand") {
  CHECK(invoke({"bounds", "--cert", kData + "/certs/e8_torus_normalizer.cert"}).code == 0);
  auto g2 = invoke({"bounds", "--cert", kData + "/certs/g2_l2.cert", "--json"});
  REQUIRE(g2.code == 0);
  CHECK(json::parse(g2.out)["results"][0]["verdict"] == "proven");
  CHECK(invoke({"bounds", "--positive", "(q^4+1)*(q^12-1)-q^16"}).code == 0);
  CHECK(invoke({"bounds", "--positive", "q-3", "--expect", "counterexample"}).code == 0);
  CHECK(invoke({"bounds", "--positive", "q-3"}).code == 1);
  CHECK(invoke({"bounds", "--positive", "q^"}).code == 2);
  auto t = invoke({"bounds", "--table", "all", "--json"});
  CHECK(t.code == 0);
  CHECK(json::parse(t.out)["results"].size() == 10);
  CHECK(invoke({"bounds"}).code == 2);
}

TEST_CASE("catalog subcommand and usage errors") {
  auto c = invoke({"catalog", "--named", "psl2:5", "--json"});
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["order"] == "60");
  CHECK(invoke({"catalog", "--scenarios", kData + "/scenarios"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"ep"}).code == 2);
  CHECK(invoke({"ep", "--named", "alt:5", "--alpha", "9"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("stretch scenarios run only on request") {
  auto dir = std::filesystem::temp_directory_path() / "xprim_stretch_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s.json") << R"({"name": "s", "group": {"kind": "alt", "params": ["5"]},
    "subgroup": "point-stabilizer", "action": "natural", "expected": {"rank": 2},
    "provenance": "test", "stretch": true})";
  auto skipped = invoke({"scenario", dir.string(), "--json"});
  CHECK(skipped.code == 0);
  CHECK(json::parse(skipped.out)["runs"].empty());
  CHECK(skipped.err.find("stretch") != std::string::npos);
  auto run = invoke({"scenario", dir.string(), "--stretch", "--json"});
  CHECK(run.code == 0);
  CHECK(json::parse(run.out)["runs"].size() == 1);
  std::filesystem::remove_all(dir);
}
