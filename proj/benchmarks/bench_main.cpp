#include <sharpframe/filters.hpp>
#include <sharpframe/focus_metrics.hpp>
#include <sharpframe/restore.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace sharpframe;

namespace {

GrayImage noise(int n) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GrayImage img(n, n);
    for (double& v : img.data()) v = u(rng);
    return img;
}

void BM_Convolve(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    const Kernel k = gaussian_psf(static_cast<int>(state.range(1)), 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(convolve2d(img, k, Padding::reflect));
    state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_Convolve)->Args({128, 3})->Args({128, 9})->Args({256, 9});

template <double (*Metric)(const GrayImage&, int)>
void BM_PooledMetric(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Metric(img, 11));
}
BENCHMARK_TEMPLATE(BM_PooledMetric, mis3)->Arg(128);
BENCHMARK_TEMPLATE(BM_PooledMetric, gra7)->Arg(128);
BENCHMARK_TEMPLATE(BM_PooledMetric, lap1)->Arg(128);
BENCHMARK_TEMPLATE(BM_PooledMetric, sta3)->Arg(128);

void BM_Dct3(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dct3(img));
}
BENCHMARK(BM_Dct3)->Arg(128);

void BM_Wav1(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(wav1(img));
}
BENCHMARK(BM_Wav1)->Arg(128);

void BM_FeatureVector(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(feature_vector(img, 11));
}
BENCHMARK(BM_FeatureVector)->Arg(64)->Arg(128);

void BM_RichardsonLucy(benchmark::State& state) {
    const GrayImage img = noise(static_cast<int>(state.range(0)));
    ReeConfig cfg;
    cfg.iterations = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(richardson_lucy(img, cfg));
}
BENCHMARK(BM_RichardsonLucy)->Args({64, 5})->Args({128, 10});

} // namespace

BENCHMARK_MAIN();
