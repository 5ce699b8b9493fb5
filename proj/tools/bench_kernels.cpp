// Serial reference against the OpenMP strip check, and the parallel bench
// trial loop against a plain one.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>

#include "misr/dp.hpp"

using namespace misr;

namespace {

struct Case {
    Instance inst;
    Grid grid;
    Rational rho = Rational::of(2);
};

const Case& fixture(int n) {
    static std::map<int, Case> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Case c;
    c.inst = generate(GenKind::uniform_random, n, derive_seed(7, "bench-kernels", n));
    c.grid = build_rho_accurate_grid(c.inst, FakeSet{}, c.rho);
    return cache.emplace(n, std::move(c)).first->second;
}

void check_strips(benchmark::State& st, bool parallel) {
    const auto& c = fixture(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        // fresh oracle each round so the memo does not hide the strip solves
        OptOracle orc(c.inst);
        auto rep = check_rho_accurate(c.grid, c.inst, FakeSet{}, c.rho, orc, parallel);
        benchmark::DoNotOptimize(rep.worst_strip);
    }
    st.counters["strips"] = static_cast<double>(c.grid.size());
    st.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_strips_serial(benchmark::State& st) { check_strips(st, false); }
void BM_strips_omp(benchmark::State& st) { check_strips(st, true); }

void trials(benchmark::State& st, bool parallel) {
    int n = static_cast<int>(st.range(0));
    const int count = 16;
    for (auto _ : st) {
        std::vector<int> vals(count);
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (int t = 0; t < count; ++t) {
            auto inst = generate(GenKind::uniform_random, n, derive_seed(7, "bench-trials", t));
            vals[t] = dp_solve(inst, DPConfig{}).value();
        }
        benchmark::DoNotOptimize(vals.data());
    }
}

void BM_dp_trials_serial(benchmark::State& st) { trials(st, false); }
void BM_dp_trials_omp(benchmark::State& st) { trials(st, true); }

}  // namespace

BENCHMARK(BM_strips_serial)->Arg(20)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_strips_omp)->Arg(20)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dp_trials_serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dp_trials_omp)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
