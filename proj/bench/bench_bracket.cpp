#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>

#include "tanglekit/bracket.hpp"
#include "tanglekit/testkit.hpp"

using namespace tanglekit;

namespace {

// First sampled link with exactly n crossings, cached per n. The counter rates 2^n, the nominal
// state space; the monocyclic DFS prunes most of it.
const Diagram& link_with(int n) {
    static std::map<int, Diagram> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    for (std::uint64_t s = 0;; ++s) {
        Diagram l = corpus_link(s, n);
        if (l.num_crossings == n) return cache.emplace(n, std::move(l)).first->second;
    }
}

template <PhiScalar (*Eval)(const Diagram&)>
void run(benchmark::State& state) {
    const Diagram& l = link_with(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Eval(l));
    state.counters["state_space"] = benchmark::Counter(static_cast<double>(1ull << l.num_crossings),
                                                  benchmark::Counter::kIsIterationInvariantRate);
}

void threads(benchmark::State& state) {
    const Diagram& l = link_with(20);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bracket_monocyclic(l));
    omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(run<bracket_monocyclic>)->Name("monocyclic_omp")->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(run<bracket_monocyclic_serial>)->Name("monocyclic_serial")->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(run<bracket_skein>)->Name("skein")->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(run<bracket_full>)->Name("full_state_sum")->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(threads)->Name("monocyclic_threads_20")->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
