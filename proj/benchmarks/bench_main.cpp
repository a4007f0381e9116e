#include <benchmark/benchmark.h>

#include <filesystem>

#include "xprim/base/base_size.hpp"
#include "xprim/catalog/named.hpp"
#include "xprim/ep/ep_analysis.hpp"
#include "xprim/perm/group_file.hpp"
#include "xprim/poly/verify.hpp"
#include "xprim/structure/actions.hpp"

using namespace xprim;

namespace {

const std::filesystem::path kData = XPRIM_DATA_DIR;

void BM_ChainBuildSym(benchmark::State& state) {
  PermGroup s = sym_group(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    PermGroup g(s.degree(), s.generators());
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_ChainBuildSym)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ChainBuildG2(benchmark::State& state) {
  PermGroup file = parse_group_file(kData / "groups" / "g2_4_1365.group");
  for (auto _ : state) {
    PermGroup g(file.degree(), file.generators());
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_ChainBuildG2)->Unit(benchmark::kMillisecond);

void BM_CosetActionJ2(benchmark::State& state) {
  PermGroup g = parse_group_file(kData / "groups" / "g2_4_1365.group");
  PermGroup h = subgroup(g, parse_group_file(kData / "groups" / "j2_in_g2_4.group").generators());
  g.order();
  h.order();
  for (auto _ : state) benchmark::DoNotOptimize(coset_action(g, h).degree());
}
BENCHMARK(BM_CosetActionJ2)->Unit(benchmark::kMillisecond);

void BM_EPAnalyzePgl2(benchmark::State& state) {
  PermGroup g = pgl2_group(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ep_analyze(g, 0).rank);
}
BENCHMARK(BM_EPAnalyzePgl2)->Arg(13)->Arg(49)->Unit(benchmark::kMillisecond);

void BM_ExactBaseSize(benchmark::State& state) {
  PermGroup g = sp2m2_forms(3, false);
  for (auto _ : state) benchmark::DoNotOptimize(exact_base_size(g).base_size);
}
BENCHMARK(BM_ExactBaseSize)->Unit(benchmark::kMillisecond);

void BM_FeasibilityF4(benchmark::State& state) {
  std::vector<BigInt> idx;
  for (const char* s : {"4064256", "978432", "179712", "163072", "89856", "69888", "17472", "2457", "819"})
    idx.emplace_back(s);
  for (auto _ : state) benchmark::DoNotOptimize(char_feasibility(7, idx, BigInt(5222400)).feasible);
}
BENCHMARK(BM_FeasibilityF4)->Unit(benchmark::kMicrosecond);

void BM_VerifyCertificate(benchmark::State& state, const char* file) {
  BoundCertificate c = parse_certificate_file(kData / "certs" / file);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(c).kind);
}
BENCHMARK_CAPTURE(BM_VerifyCertificate, e8_torus, "e8_torus_normalizer.cert")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyCertificate, g2_l2, "g2_l2.cert")->Unit(benchmark::kMillisecond);

void BM_VerifyPositive(benchmark::State& state) {
  QExpr e = parse_expr("(q^4+1)*(q^12-1)-q^16");
  for (auto _ : state) benchmark::DoNotOptimize(verify_positive(e, 2).kind);
}
BENCHMARK(BM_VerifyPositive)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
