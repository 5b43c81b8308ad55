// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "protondlra/dlra/bug.hpp"
#include "protondlra/dlra/low_rank.hpp"
#include "protondlra/dlra/rhs.hpp"
#include "protondlra/errors.hpp"
#include "linear_rhs.hpp"

namespace pdlra::dlra
{
namespace
{
using test::LinearRhs;

LowRankState random_state(Eigen::Index n, Eigen::Index m, int r, unsigned seed)
{
    std::srand(seed);
    LowRankState s;
    s.x = orthonormalize(Matrix::Random(n, r));
    s.v = orthonormalize(Matrix::Random(m, r));
    s.s = Matrix::Random(r, r) + 3 * Matrix::Identity(r, r);
    return s;
}

Matrix factor_with_sigma(Vector const& sigma, unsigned seed)
{
    std::srand(seed);
    int const n = static_cast<int>(sigma.size());
    Matrix const p = orthonormalize(Matrix::Random(n, n));
    Matrix const q = orthonormalize(Matrix::Random(n, n));
    return p * sigma.asDiagonal() * q.transpose();
}

double tail(Vector const& sigma, int r)
{
    return sigma.tail(sigma.size() - r).norm();
}
}  // namespace

TEST(LowRankState, ZeroAndFromDense)
{
    auto const z = LowRankState::zero(10, 4, 2);
    EXPECT_EQ(z.rank(), 2);
    EXPECT_EQ(z.dense().norm(), 0.0);
    EXPECT_LE(orthonormality_error(z.x), 1e-14);
    EXPECT_EQ(z.element_count(), std::size_t(2 * (10 + 4) + 4));

    Matrix const u = Matrix::Random(9, 3) * Matrix::Random(3, 7);
    auto const f = LowRankState::from_dense(u, 1e-12);
    EXPECT_EQ(f.rank(), 3);
    EXPECT_LE((f.dense() - u).norm(), 1e-12 * u.norm());
    EXPECT_LE((f.column(4) - u.col(4)).norm(), 1e-12);
}

TEST(Truncate, TailRuleExample)
{
    Vector const sigma = (Vector(4) << 3, 2, 1e-8, 1e-9).finished();
    Matrix const s_hat = factor_with_sigma(sigma, 1);
    Matrix const x = orthonormalize(Matrix::Random(10, 4));
    Matrix const v = orthonormalize(Matrix::Random(6, 4));
    auto const result = truncate(x, s_hat, v, 1e-6);
    EXPECT_EQ(result.state.rank(), 2);
    EXPECT_NEAR(result.discarded, 1e-8 * std::sqrt(1 + 1e-2), 1e-15);
    Matrix const original = x * s_hat * v.transpose();
    EXPECT_NEAR((result.state.dense() - original).norm(), result.discarded, 1e-12);
}

TEST(Truncate, ZeroToleranceKeepsNonzeroValues)
{
    Vector const sigma = (Vector(4) << 3, 2, 0, 0).finished();
    EXPECT_EQ(truncation_rank(sigma, 0.0), 2);
    Vector const full = (Vector(3) << 3, 2, 1e-300).finished();
    EXPECT_EQ(truncation_rank(full, 0.0), 3);
}

TEST(Truncate, RankFloorIsOne)
{
    Vector const sigma = (Vector(1) << 1).finished();
    EXPECT_EQ(truncation_rank(sigma, 10), 1);
    Matrix const s = Matrix::Constant(1, 1, 1.0);
    auto const result = truncate(Matrix::Identity(3, 1), s, Matrix::Identity(2, 1), 10);
    EXPECT_EQ(result.state.rank(), 1);
}

TEST(Truncate, RelativeModeAndCap)
{
    Vector const sigma = (Vector(4) << 4, 3, 0.02, 0.01).finished();
    Matrix const s_hat = factor_with_sigma(sigma, 3);
    Matrix const x = orthonormalize(Matrix::Random(8, 4));
    Matrix const v = orthonormalize(Matrix::Random(5, 4));
    auto const rel = truncate(x, s_hat, v, 0.01, ThetaMode::relative);
    EXPECT_NEAR(rel.threshold, 0.01 * std::sqrt(16 + 9 + 4e-4 + 1e-4), 1e-14);
    EXPECT_EQ(rel.state.rank(), 2);
    auto const capped = truncate(x, s_hat, v, 0.0, ThetaMode::absolute, 3);
    EXPECT_EQ(capped.state.rank(), 3);
    EXPECT_TRUE(capped.rank_capped);
}

TEST(Truncate, RandomPropertyMinimalAndBounded)
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_real_distribution<double> log_sigma(-12, 1);
    std::uniform_real_distribution<double> log_theta(-10, 1);
    for (int trial = 0; trial < 1000; ++trial)
    {
        int const n = size(rng);
        Vector sigma(n);
        for (int i = 0; i < n; ++i)
        {
            sigma[i] = std::pow(10.0, log_sigma(rng));
        }
        std::sort(sigma.begin(), sigma.end(), std::greater<>());
        double const theta = std::pow(10.0, log_theta(rng));
        int const r = truncation_rank(sigma, theta);
        ASSERT_GE(r, 1);
        ASSERT_LE(r, n);
        if (r > 1 || tail(sigma, 1) <= theta)
        {
            EXPECT_LE(tail(sigma, r), theta);
        }
        if (r > 1)
        {
            EXPECT_GT(tail(sigma, r - 1), theta);
        }
    }
}

TEST(BugStep, ZeroDynamicsPreserveMatrix)
{
    LinearRhs rhs(Matrix::Zero(20, 20), Matrix::Zero(6, 6), Vector::Zero(6));
    auto const state = random_state(20, 6, 2, 5);
    BugConfig config;
    config.theta = 1e-12;
    config.mode = ThetaMode::absolute;
    auto const result = bug_step(state, rhs, 0, 0.1, config);
    EXPECT_LE((result.state.dense() - state.dense()).norm(), 1e-10);
    EXPECT_LE(orthonormality_error(result.state.x), 1e-12);
    EXPECT_LE(orthonormality_error(result.state.v), 1e-12);
}

TEST(BugStep, DiagonalDampingMatchesDenseImex)
{
    Vector const d = Vector::LinSpaced(6, 0, 5);
    Matrix const c = Vector::LinSpaced(6, -1, 0.5).asDiagonal();
    LinearRhs rhs(Matrix::Zero(15, 15), c, d);
    auto const state = random_state(15, 6, 3, 6);
    BugConfig config;
    config.theta = 0;
    auto const result = bug_step(state, rhs, 0, 0.05, config);
    Matrix const dense = imex_euler_step(state.dense(), rhs, 0, 0.05);
    EXPECT_LE((result.state.dense() - dense).norm(), 1e-12 * dense.norm());
}

TEST(BugStep, RankPreservingDynamicsReproduceImexTrajectory)
{
    std::srand(9);
    Matrix const b = Matrix::Random(18, 18) * 0.5;
    Vector const d = Vector::LinSpaced(7, 0.1, 30);
    LinearRhs rhs(b, Matrix::Zero(7, 7), d);
    auto state = random_state(18, 7, 2, 10);
    Matrix dense = state.dense();
    BugConfig config;
    config.theta = 0;
    config.r_max = 4;
    for (int step = 0; step < 40; ++step)
    {
        double const t0 = 0.01 * step;
        state = bug_step(state, rhs, t0, 0.01, config).state;
        dense = imex_euler_step(dense, rhs, t0, 0.01);
        EXPECT_LE((state.dense() - dense).norm(), 1e-9 * dense.norm()) << step;
    }
}

TEST(BugStep, FirstOrderConvergence)
{
    std::srand(12);
    Matrix const b = Matrix::Random(16, 16) * 0.6;
    Matrix const c = Matrix::Random(8, 8) * 0.6;
    Vector const d = Vector::LinSpaced(8, 0, 40);
    LinearRhs rhs(b, c, d);
    auto const initial = random_state(16, 8, 2, 13);
    double const t_end = 0.5;
    Matrix const exact = test::reference_solution(rhs, initial.dense(), t_end);

    std::vector<double> steps;
    std::vector<double> errors;
    for (int n : {10, 20, 40, 80, 100})
    {
        auto state = initial;
        BugConfig config;
        config.theta = 0;
        double const dt = t_end / n;
        for (int s = 0; s < n; ++s)
        {
            state = bug_step(state, rhs, s * dt, dt, config).state;
        }
        steps.push_back(std::log(dt));
        errors.push_back(std::log((state.dense() - exact).norm()));
    }
    double const order = test::regression_slope(steps, errors);
    EXPECT_GE(order, 0.8);
    EXPECT_LE(order, 1.2);
}

TEST(BugStep, RankBoundsAndCapFlag)
{
    std::srand(14);
    LinearRhs rhs(Matrix::Random(30, 30), Matrix::Random(10, 10), Vector::Zero(10));
    auto state = random_state(30, 10, 2, 15);
    BugConfig config;
    config.theta = 0;
    config.r_max = 3;
    auto const result = bug_step(state, rhs, 0, 0.1, config);
    EXPECT_LE(result.state.rank(), 3);
    EXPECT_TRUE(result.rank_capped);
    EXPECT_EQ(result.augmented_rank, 4);
}

TEST(BugStep, SingularImplicitSystemFails)
{
    LinearRhs rhs(Matrix::Zero(5, 5), Matrix::Zero(3, 3), Vector::Constant(3, -10.0));
    auto const state = random_state(5, 3, 1, 16);
    BugConfig config;
    EXPECT_THROW(bug_step(state, rhs, 0, 0.1, config), SolverError);
}

TEST(BugConfig, Validation)
{
    BugConfig config;
    config.theta = -1;
    EXPECT_THROW(config.validate(), ValidationError);
    config.theta = 0.1;
    config.r0 = 0;
    EXPECT_THROW(config.validate(), ValidationError);
    config.r0 = 5;
    config.r_max = 4;
    EXPECT_THROW(config.validate(), ValidationError);
    EXPECT_EQ(parse_theta_mode("abs"), ThetaMode::absolute);
    EXPECT_EQ(parse_theta_mode("rel"), ThetaMode::relative);
    EXPECT_THROW(parse_theta_mode("both"), ValidationError);
}

TEST(RhsSplit, DefaultProjectionsMatchDense)
{
    std::srand(17);
    LinearRhs rhs(Matrix::Random(12, 12), Matrix::Random(5, 5), Vector::LinSpaced(5, 0, 1));
    rhs.begin_step(0, 0.1);
    auto const state = random_state(12, 5, 2, 18);
    Matrix const u = state.dense();
    Matrix const f = rhs.dense_explicit(u);
    Matrix const k = state.x * state.s;
    EXPECT_LE((rhs.k_explicit(k, state.v) - f * state.v).norm(), 1e-12);
    Matrix const l = state.v * state.s.transpose();
    EXPECT_LE((rhs.l_explicit(state.x, l) - f.transpose() * state.x).norm(), 1e-12);
    EXPECT_LE((rhs.s_explicit(state.x, state.s, state.v) - state.x.transpose() * f * state.v).norm(),
              1e-12);
    Matrix const full = rhs.dense_full(u);
    EXPECT_LE((full - (f - u * rhs.stiff_diagonal().asDiagonal())).norm(), 1e-12);
}

}  // namespace pdlra::dlra
