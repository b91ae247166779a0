#include <benchmark/benchmark.h>

#include "hlo/half_kernel.hpp"
#include "hlo/laplacian.hpp"
#include "hlo/metrics.hpp"
#include "hlo/shapes.hpp"

namespace {

hlo::TriMesh noisy_sphere(int subdivisions) {
    return hlo::add_noise(hlo::shapes::icosphere(subdivisions), hlo::NoiseSpec{0.3, 7});
}

void BM_DenoiseHlo(benchmark::State& state) {
    const hlo::TriMesh mesh = noisy_sphere(static_cast<int>(state.range(0)));
    hlo::HloConfig cfg;
    cfg.iterations = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hlo::denoise(mesh, cfg));
    }
    state.SetLabel(std::to_string(mesh.vertex_count()) + " vertices, 10 iterations");
}
BENCHMARK(BM_DenoiseHlo)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DenoiseUniform(benchmark::State& state) {
    const hlo::TriMesh mesh = noisy_sphere(static_cast<int>(state.range(0)));
    const hlo::FlowConfig cfg{1.0, 10, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(hlo::smooth_iterations(mesh, hlo::LaplacianKind::uniform, cfg));
    }
    state.SetLabel(std::to_string(mesh.vertex_count()) + " vertices, 10 iterations");
}
BENCHMARK(BM_DenoiseUniform)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_HalfKernelSweep(benchmark::State& state) {
    const hlo::TriMesh mesh = noisy_sphere(4);
    const double eps = hlo::degeneracy_epsilon(mesh.positions);
    const hlo::HloConfig cfg;
    for (auto _ : state) {
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            benchmark::DoNotOptimize(
                hlo::half_kernel_laplacian(mesh, mesh.positions, v, mesh.positions[v], cfg, eps));
        }
    }
    state.SetItemsProcessed(state.iterations() * mesh.vertex_count());
}
BENCHMARK(BM_HalfKernelSweep)->Unit(benchmark::kMillisecond);

void BM_EvMetric(benchmark::State& state) {
    const hlo::TriMesh reference = hlo::shapes::icosphere(4);
    const hlo::TriMesh noisy = noisy_sphere(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hlo::e_v(noisy, reference));
    }
    state.SetLabel(std::to_string(reference.face_count()) + " reference faces");
}
BENCHMARK(BM_EvMetric)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
