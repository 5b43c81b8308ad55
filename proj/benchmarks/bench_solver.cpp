// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "bench_problem.hpp"
#include "protondlra/dlra/bug.hpp"
#include "protondlra/solver/transport_rhs.hpp"

namespace pdlra::bench
{
namespace
{
// Fixed-rank BUG steps; args: P_N degree, rank
void BM_BugStep(benchmark::State& state)
{
    int const degree = static_cast<int>(state.range(0));
    int const rank = static_cast<int>(state.range(1));
    auto const problem = water_problem(16, 64, degree);
    solver::TransportRhs rhs(problem);
    dlra::BugConfig config;
    config.theta = 0;
    config.r_max = rank;
    config.r_min = rank;
    std::srand(1);
    dlra::LowRankState u;
    u.x = dlra::orthonormalize(Matrix::Random(problem.cells(), rank));
    u.v = dlra::orthonormalize(Matrix::Random(problem.moments(), rank));
    u.s = Vector::LinSpaced(rank, 1.0, 1e-3).asDiagonal();
    double const t0 = 0.5 * problem.final_time();
    for (auto _ : state)
    {
        auto result = dlra::bug_step(u, rhs, t0, problem.step(), config);
        benchmark::DoNotOptimize(result.state.s.data());
    }
    state.counters["n"] = static_cast<double>(problem.cells());
    state.counters["n_m"] = problem.moments();
}
BENCHMARK(BM_BugStep)
    ->ArgsProduct({{3, 7, 15}, {5, 10, 20}})
    ->Unit(benchmark::kMillisecond);

void BM_FullRankStep(benchmark::State& state)
{
    int const degree = static_cast<int>(state.range(0));
    auto const problem = water_problem(16, 64, degree);
    solver::TransportRhs rhs(problem);
    Matrix u = Matrix::Random(problem.cells(), problem.moments());
    double const t0 = 0.5 * problem.final_time();
    for (auto _ : state)
    {
        Matrix next = dlra::imex_euler_step(u, rhs, t0, problem.step());
        benchmark::DoNotOptimize(next.data());
    }
}
BENCHMARK(BM_FullRankStep)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Truncate(benchmark::State& state)
{
    auto const r = static_cast<Eigen::Index>(state.range(0));
    std::srand(2);
    Matrix const x = dlra::orthonormalize(Matrix::Random(4096, 2 * r));
    Matrix const v = dlra::orthonormalize(Matrix::Random(256, 2 * r));
    Matrix const s = Matrix::Random(2 * r, 2 * r);
    for (auto _ : state)
    {
        auto result = dlra::truncate(x, s, v, 1e-3, dlra::ThetaMode::relative);
        benchmark::DoNotOptimize(result.state.x.data());
    }
}
BENCHMARK(BM_Truncate)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);
}  // namespace
}  // namespace pdlra::bench
