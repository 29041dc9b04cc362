#include <wienerlab/drifts.hpp>
#include <wienerlab/girsanov.hpp>
#include <wienerlab/inversion.hpp>
#include <wienerlab/malliavin.hpp>

#include <benchmark/benchmark.h>

using namespace wienerlab;

namespace {

WienerPath bench_path(std::size_t n)
{
    return sample_path(TimeGrid(n), RandomSource{1, 0});
}

void bm_sample_path(benchmark::State& state)
{
    const TimeGrid grid(static_cast<std::size_t>(state.range(0)));
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_path(grid, RandomSource{1, 0}.path(k++)));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_sample_path)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void bm_girsanov_weight(benchmark::State& state)
{
    const auto d = make_bounded_sin(1.0);
    const WienerPath w = bench_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(girsanov_weight(*d, w));
    }
}
BENCHMARK(bm_girsanov_weight)->RangeMultiplier(4)->Range(64, 4096);

void bm_malliavin_fd(benchmark::State& state)
{
    const auto d = make_bounded_sin(1.0);
    const WienerPath w = bench_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(malliavin_matrix_fd(*d, w));
    }
}
BENCHMARK(bm_malliavin_fd)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void bm_malliavin_analytic(benchmark::State& state)
{
    const auto d = make_linear_volterra(1.0, 2.0);
    const WienerPath w = bench_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(malliavin_matrix_analytic(*d, w));
    }
}
BENCHMARK(bm_malliavin_analytic)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMicrosecond);

void bm_det2(benchmark::State& state)
{
    const WienerPath w = bench_path(static_cast<std::size_t>(state.range(0)));
    const Matrix a = malliavin_matrix_analytic(*make_ou(1.0), w).operator_matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(det2(a));
    }
}
BENCHMARK(bm_det2)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMicrosecond);

void bm_carleman(benchmark::State& state)
{
    const WienerPath w = bench_path(static_cast<std::size_t>(state.range(0)));
    const Matrix a = malliavin_matrix_analytic(*make_ou(1.0), w).operator_matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(carleman_check(a));
    }
}
BENCHMARK(bm_carleman)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond);

void bm_invert_explicit(benchmark::State& state)
{
    const auto d = make_bounded_sin(1.0);
    const WienerPath y = bench_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_explicit(*d, y));
    }
}
BENCHMARK(bm_invert_explicit)->RangeMultiplier(4)->Range(64, 4096);

void bm_invert_picard(benchmark::State& state)
{
    const auto d = make_bounded_sin(1.0);
    const WienerPath y = bench_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_picard(*d, y, 100, 1e-12));
    }
}
BENCHMARK(bm_invert_picard)->RangeMultiplier(4)->Range(64, 4096);

void bm_mehler_eval(benchmark::State& state)
{
    const auto s = mehler_smooth(make_bounded_sin(1.0), 0.1,
                                 static_cast<std::size_t>(state.range(0)), RandomSource{2, 0});
    const WienerPath w = bench_path(256);
    s->eval_all(w);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s->eval_all(w));
    }
}
BENCHMARK(bm_mehler_eval)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
