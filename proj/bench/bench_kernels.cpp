// Parallel kernels against their serial references on the FlexCell inputs.
// Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "dtgraph/ingest.hpp"
#include "dtgraph/merge.hpp"
#include "dtgraph/miner.hpp"
#include "dtgraph/templates.hpp"
#include "fixtures.hpp"

using namespace dtgraph;

namespace {

struct Inputs {
  Taxonomy taxonomy = fixtures::warehouse_taxonomy();
  PositionSet positions;
  std::vector<PropertyGraph> parts = fixtures::flexcell_parts();
  PropertyGraph merged;
  MiningParams params;
  std::vector<Pattern> patterns;

  Inputs() {
    positions = parse_position_records(fixtures::flexcell_sources().position);
    merged = merge_graphs(parts, taxonomy).graph;
    params.min_support = 4;
    params.max_edges = 8;
    patterns = mine_frequent(merged, params);
  }
};

const Inputs& inputs() {
  static const Inputs in;
  return in;
}

void BM_arrangement(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(derive_arrangement(in.positions));
}

void BM_arrangement_serial(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(derive_arrangement_serial(in.positions));
}

void BM_merge(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(merge_graphs(in.parts, in.taxonomy));
}

void BM_merge_serial(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(merge_graphs_serial(in.parts, in.taxonomy));
}

void BM_mine(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(mine_frequent(in.merged, in.params));
}

void BM_mine_serial(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(mine_frequent_serial(in.merged, in.params));
}

void BM_templatize(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(templatize(in.merged, in.patterns));
}

void BM_templatize_serial(benchmark::State& state) {
  const auto& in = inputs();
  for (auto _ : state) benchmark::DoNotOptimize(templatize_serial(in.merged, in.patterns));
}

}  // namespace

BENCHMARK(BM_arrangement)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_arrangement_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_merge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_merge_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mine)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mine_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_templatize)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_templatize_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
