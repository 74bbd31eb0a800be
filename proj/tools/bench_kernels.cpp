// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "lmcf/generators.hpp"
#include "lmcf/kernels.hpp"

using namespace lmcf;
using namespace lmcf::kernels;

namespace {

std::vector<Vec2> star_points(std::size_t n) { return star(5, 0.3, n).points(); }

std::vector<Vec2> cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec2> v(n);
    for (auto& p : v) p = {g(rng), g(rng)};
    return v;
}

SegmentSet closed_segments(const std::vector<Vec2>& pts) {
    SegmentSet s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s.start.push_back(pts[i]);
        s.end.push_back(pts[(i + 1) % pts.size()]);
    }
    return s;
}

template <auto Kernel>
void fields(benchmark::State& state) {
    const auto pts = star_points(static_cast<std::size_t>(state.range(0)));
    FieldBuffers out;
    for (auto _ : state) {
        Kernel(pts, true, 1e-4, out);
        benchmark::DoNotOptimize(out.kappa.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void hausdorff(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = cloud(n, 1), b = cloud(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
}

template <auto Kernel>
void segment_distance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pts = cloud(n, 3);
    const auto segs = closed_segments(star_points(n));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(pts, segs));
}

void segment_grid(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pts = cloud(n, 3);
    const SegmentGrid grid(closed_segments(star_points(n)), 0.05);
    for (auto _ : state) {
        double worst = 0.0;
        for (const Vec2 p : pts) worst = std::max(worst, grid.nearest(p));
        benchmark::DoNotOptimize(worst);
    }
}

}  // namespace

BENCHMARK(fields<compute_fields_serial>)->Name("fields/serial")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(fields<compute_fields_parallel>)->Name("fields/openmp")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(hausdorff<directed_hausdorff_serial>)->Name("hausdorff/serial")->RangeMultiplier(4)->Range(256, 8192);
BENCHMARK(hausdorff<directed_hausdorff_parallel>)->Name("hausdorff/openmp")->RangeMultiplier(4)->Range(256, 8192);
BENCHMARK(segment_distance<directed_segment_distance_serial>)
    ->Name("segments/serial")
    ->RangeMultiplier(4)
    ->Range(256, 4096);
BENCHMARK(segment_distance<directed_segment_distance_parallel>)
    ->Name("segments/openmp")
    ->RangeMultiplier(4)
    ->Range(256, 4096);
BENCHMARK(segment_grid)->Name("segments/grid")->RangeMultiplier(4)->Range(256, 4096);

BENCHMARK_MAIN();
