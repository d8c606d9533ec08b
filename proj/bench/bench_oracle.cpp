// Serial against OpenMP kernels of the oracle, and the three collection engines.

#include <benchmark/benchmark.h>

#include "pcp/collector.hpp"
#include "pcp/oracle.hpp"
#include "pcp/text_format.hpp"

using namespace pcp;

namespace {

// Abelian of order 256 with carries between the cyclic factors.
constexpr const char* kAbelian = R"(group 4
g1^4 = g2
g2^4 = g3
g3^4 = g4
g4^4 = 1
)";

// Upper unitriangular 4x4 matrices over GF(2), order 64.
constexpr const char* kUnitriangular = R"(group 6
g1^2 = 1
g2^2 = 1
g3^2 = 1
g4^2 = 1
g5^2 = 1
g6^2 = 1
g2*g1 = g1*g2*g4
g3*g2 = g2*g3*g5
g5*g1 = g1*g5*g6
g4*g3 = g3*g4*g6
)";

GroupPresentation load(const char* text) { return prepare(to_group_raw(parse_document(text))); }

const GroupPresentation& abelian() {
  static const auto p = load(kAbelian);
  return p;
}

const GroupPresentation& unitriangular() {
  static const auto p = load(kUnitriangular);
  return p;
}

void BM_TableSerial(benchmark::State& state) {
  const auto& p = state.range(0) ? unitriangular() : abelian();
  for (auto _ : state) benchmark::DoNotOptimize(build_table_serial(p));
}

void BM_TableParallel(benchmark::State& state) {
  const auto& p = state.range(0) ? unitriangular() : abelian();
  for (auto _ : state) benchmark::DoNotOptimize(build_table_parallel(p));
}

void BM_AssociativitySerial(benchmark::State& state) {
  const auto t = build_table(state.range(0) ? unitriangular() : abelian());
  for (auto _ : state) benchmark::DoNotOptimize(find_associativity_violation_serial(t));
}

void BM_AssociativityParallel(benchmark::State& state) {
  const auto t = build_table(state.range(0) ? unitriangular() : abelian());
  for (auto _ : state) benchmark::DoNotOptimize(find_associativity_violation_parallel(t));
}

void BM_Collect(benchmark::State& state) {
  const auto& p = unitriangular();
  const Word w = parse_word("g6*g5*g4*g3*g2*g1*g6*g5*g4*g3*g2*g1*g3*g2*g1*g3*g2*g1", p.size());
  const CollectOptions opt{kDefaultStepBudget, false, static_cast<CollectEngine>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(collect(p, w, opt));
}

}  // namespace

// Argument 0 is the abelian group of order 256, 1 the unitriangular group.
BENCHMARK(BM_TableSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociativitySerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociativityParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
// Argument: 0 level engine (Auto), 1 letter engine, 2 reference.
BENCHMARK(BM_Collect)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
