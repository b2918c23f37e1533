#include <benchmark/benchmark.h>

#include "gsc/engineering.hpp"
#include "gsc/protocols.hpp"
#include "gsc/rep.hpp"

using namespace gsc;

static void BM_CharacterTable(benchmark::State& state) {
  auto G = build_group(GroupSpec::dihedral(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(character_table(G));
}
BENCHMARK(BM_CharacterTable)->Arg(4)->Arg(16)->Arg(32);

static void BM_CodeState(benchmark::State& state) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto lat = build_lattice(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(code_state(G, lat, 1));
}
BENCHMARK(BM_CodeState)->Args({1, 2})->Args({2, 3});

static void BM_DetectionRound(benchmark::State& state) {
  auto G = build_group(GroupSpec::dihedral(4));
  auto lat = build_lattice(1, 2);
  auto base = code_state(G, lat, G->parse("a"));
  Rng rng(1);
  for (auto _ : state) {
    auto st = base;
    benchmark::DoNotOptimize(detection_round(st, rng, Policy::Sample));
  }
}
BENCHMARK(BM_DetectionRound);

static void BM_Slide(benchmark::State& state) {
  auto G = build_group(GroupSpec::dihedral(4));
  auto H = subgroup_closure(G, {G->parse("a"), G->parse("b")});
  auto K = subgroup_closure(G, {G->parse("c")});
  auto knit = knit_decompose(G, H, K);
  auto lat = build_lattice(1, 2);
  auto h = code_state(H, lat, G->parse("a"));
  auto k = code_state(K, lat, G->parse("c"));
  ProtocolConfig cfg;
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(slide(h, k, knit, cfg, rng));
}
BENCHMARK(BM_Slide)->Unit(benchmark::kMillisecond);

static void BM_GcnxOrder(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_gcnx(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GcnxOrder)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
