#include "pvforge/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace pvforge;

namespace {

struct Case {
  const char* name;
  std::vector<std::vector<std::string>> rows;
  long t0;
};

const std::vector<Case>& cases() {
  static const std::vector<Case> c = {
      {"exp", {{"1"}}, 0},
      {"sqrt", {{"1/(2*t)"}}, 1},
      {"torus", {{"0", "1"}, {"1", "0"}}, 0},
      {"airy", {{"0", "1"}, {"t", "0"}}, 0},
      {"log", {{"0", "1/t"}, {"0", "0"}}, 1},
      {"free", {{"0", "1"}, {"0", "0"}}, 0},
  };
  return c;
}

void BM_PVRing(benchmark::State& state) {
  const Case& c = cases()[state.range(0)];
  System S = parse_system(c.rows);
  PipelineConfig cfg;
  cfg.point = mpq_class(c.t0);
  for (auto _ : state) benchmark::DoNotOptimize(pv_ring(S, cfg));
  state.SetLabel(c.name);
}
BENCHMARK(BM_PVRing)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_RelationSpace(benchmark::State& state) {
  System S = parse_system({{"0", "1"}, {"t", "0"}});
  RelationConfig cfg;
  cfg.degree = static_cast<int>(state.range(0));
  cfg.point = mpq_class(0);
  for (auto _ : state) benchmark::DoNotOptimize(relation_space(S.K, S.A, cfg));
  state.SetLabel("airy");
}
BENCHMARK(BM_RelationSpace)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Groebner(benchmark::State& state) {
  PolyRing R(Field::Q(), {"x", "y", "z"});
  int k = static_cast<int>(state.range(0));
  std::string e = std::to_string(k);
  PolyList I = {parse_mpoly(R, "x^" + e + " + y^2 + z - 1"), parse_mpoly(R, "x^2 + y^" + e + " + z - 1"),
                parse_mpoly(R, "x + y^2 + z^" + e + " - 1")};
  for (auto _ : state) benchmark::DoNotOptimize(groebner(R, I));
}
BENCHMARK(BM_Groebner)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_Stabilizer(benchmark::State& state) {
  PolyRing R(Field::Qt(), matrix_vars(2, false));
  PolyList I = groebner(R, {parse_mpoly(R, "X11^2"), parse_mpoly(R, "X22^2"), parse_mpoly(R, "X12^3"),
                            parse_mpoly(R, "X21^3")});
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer(R, 2, I));
}
BENCHMARK(BM_Stabilizer)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
