#include <benchmark/benchmark.h>

#include "probcf/condprop.hpp"
#include "probcf/flows.hpp"
#include "probcf/hier_sampler.hpp"
#include "probcf/parser.hpp"
#include "probcf/programs.hpp"
#include "probcf/smc.hpp"
#include "probcf/straight_line.hpp"

using namespace probcf;

namespace {

StraightLineProgram nth_flow(const std::string& spec, std::size_t n) {
  Pcfg g = load_program(spec);
  return straight_line(g, enumerate_flows(g, n + 1).at(n));
}

void BM_Parse(benchmark::State& state) {
  std::string src = builtin_source("obsLoop(3,10)");
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(src));
}
BENCHMARK(BM_Parse);

void BM_EnumerateFlows(benchmark::State& state) {
  Pcfg g = load_program("geomIt(0.5,0)");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_flows(g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateFlows)->Arg(8)->Arg(64);

void BM_Cdpg(benchmark::State& state) {
  auto s = nth_flow("unifCd(20)", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cdpg(s));
}
BENCHMARK(BM_Cdpg)->Arg(5)->Arg(20);

void BM_Smc(benchmark::State& state) {
  auto s = cdpg(nth_flow("obsLoop(3,10)", 10));
  SmcConfig cfg;
  cfg.particles = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(run_smc(s, cfg, rng));
}
BENCHMARK(BM_Smc)->Arg(100)->Arg(1000);

void BM_SamplerRounds(benchmark::State& state) {
  Pcfg g = load_program("coin(0.36)");
  RunConfig cfg;
  cfg.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(g, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplerRounds)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
