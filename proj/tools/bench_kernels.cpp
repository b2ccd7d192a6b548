#include "fmcf/graph_flow.hpp"
#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/sphere_flow.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace fmcf;

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void args(benchmark::internal::Benchmark* b) {
    for (long n : {128, 256, 512})
        for (long p : {0, 1}) b->Args({n, p});
    b->ArgNames({"N", "parallel"});
}

void BM_riesz(benchmark::State& state) {
    const auto u = random_band_limited(Domain::Circle, state.range(0), 1, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(riesz_apply(u, FractionalOrder(0.5), exec_of(state)));
}

void BM_sphere_curvature(benchmark::State& state) {
    const SphereFlowState st(random_band_limited(Domain::Circle, state.range(0), 1, 0.05), FractionalOrder(0.5));
    for (auto _ : state) benchmark::DoNotOptimize(curvature_nearly_spherical(st, exec_of(state)));
}

void BM_graph_curvature(benchmark::State& state) {
    const GraphFlowState st(random_band_limited(Domain::PeriodicLine, state.range(0), 1, 0.01), FractionalOrder(0.5));
    for (auto _ : state) benchmark::DoNotOptimize(curvature_graph(st, exec_of(state)));
}

void BM_perimeter_deficit(benchmark::State& state) {
    const SphereFlowState st(random_band_limited(Domain::Circle, state.range(0), 1, 0.05), FractionalOrder(0.5));
    for (auto _ : state) benchmark::DoNotOptimize(perimeter_s_deficit(st, exec_of(state)));
}

BENCHMARK(BM_riesz)->Apply(args);
BENCHMARK(BM_sphere_curvature)->Apply(args);
BENCHMARK(BM_graph_curvature)->Apply(args);
BENCHMARK(BM_perimeter_deficit)->Apply(args);

}  // namespace

BENCHMARK_MAIN();
