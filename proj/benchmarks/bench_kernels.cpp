// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "bench_problem.hpp"
#include "protondlra/physics/scattering.hpp"
#include "protondlra/pn/upwind.hpp"
#include "protondlra/pn/basis.hpp"
#include "protondlra/pn/flux_matrices.hpp"

namespace pdlra::bench
{
namespace
{
void BM_UpwindDivergence(benchmark::State& state)
{
    int const degree = static_cast<int>(state.range(0));
    domain::PhantomSpec spec;
    spec.cells = {16, 16, 64};
    auto const density = domain::build_phantom(spec);
    auto const flux = pn::build_flux_matrices(pn::build_basis(degree));
    Matrix const u = Matrix::Random(static_cast<Eigen::Index>(density.grid().size()),
                                    flux.size());
    for (auto _ : state)
    {
        Matrix out = pn::apply_upwind_divergence(u, density, flux);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_UpwindDivergence)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ScatteringMoments(benchmark::State& state)
{
    physics::ScreenedRutherfordWater model;
    int const degree = static_cast<int>(state.range(0));
    for (auto _ : state)
    {
        auto m = physics::scattering_moments(model, 50.0, degree);
        benchmark::DoNotOptimize(m.total);
    }
}
BENCHMARK(BM_ScatteringMoments)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_RayTrace(benchmark::State& state)
{
    auto const n = static_cast<std::size_t>(state.range(0));
    domain::PhantomSpec spec;
    spec.cells = {n, n, 4 * n};
    auto const density = domain::build_phantom(spec);
    auto const physics = water_physics(3);
    domain::BeamSource beam;
    raytracer::EnergyMesh mesh(95.0, 1.0, 64, 2);
    for (auto _ : state)
    {
        auto flux = raytracer::trace_all(beam, density, physics, mesh);
        benchmark::DoNotOptimize(flux.injected_energy);
    }
}
BENCHMARK(BM_RayTrace)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
}  // namespace
}  // namespace pdlra::bench

BENCHMARK_MAIN();
