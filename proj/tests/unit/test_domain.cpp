// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "protondlra/domain/beam.hpp"
#include "protondlra/domain/grid.hpp"
#include "protondlra/domain/phantom.hpp"
#include "protondlra/errors.hpp"

namespace pdlra::domain
{
TEST(HuToDensity, Ramp)
{
    EXPECT_DOUBLE_EQ(hu_to_density(0), 1.0);
    EXPECT_DOUBLE_EQ(hu_to_density(-400), 0.6);
    EXPECT_DOUBLE_EQ(hu_to_density(-1000), 0.05);
    EXPECT_DOUBLE_EQ(hu_to_density(-990), 0.05);
    EXPECT_DOUBLE_EQ(hu_to_density(200), 1.2);
}

TEST(Phantom, HomogeneousPaperResolution)
{
    PhantomSpec spec;
    auto const phantom = build_phantom(spec);
    EXPECT_EQ(phantom.grid().size(), 40u * 40u * 160u);
    EXPECT_DOUBLE_EQ(phantom.grid().spacing(0), 0.05);
    for (double rho : phantom.rho())
    {
        ASSERT_EQ(rho, 1.0);
    }
}

TEST(Phantom, HeterogeneousInsertCount)
{
    PhantomSpec spec;
    spec.inserts.push_back({{0, 0, 3}, {2, 1, 5}, -400});
    auto const phantom = build_phantom(spec);
    std::size_t overridden = 0;
    for (std::size_t c = 0; c < phantom.grid().size(); ++c)
    {
        if (phantom.hu()[c] == -400)
        {
            ++overridden;
            EXPECT_DOUBLE_EQ(phantom.rho(c), 0.6);
        }
    }
    EXPECT_EQ(overridden, 40u * 20u * 40u);
    EXPECT_DOUBLE_EQ(phantom.min_density(), 0.6);
    EXPECT_DOUBLE_EQ(phantom.max_density(), 1.0);
}

TEST(Phantom, SingleCell)
{
    PhantomSpec spec;
    spec.cells = {1, 1, 1};
    auto const phantom = build_phantom(spec);
    ASSERT_EQ(phantom.rho().size(), 1u);
    EXPECT_EQ(phantom.rho()[0], 1.0);
}

TEST(Phantom, InsertOutsideDomainIsRejected)
{
    PhantomSpec spec;
    spec.cells = {4, 4, 8};
    spec.inserts.push_back({{0, 0, 7}, {2, 1, 9}, -400});
    EXPECT_THROW(build_phantom(spec), ValidationError);
}

TEST(Phantom, Deterministic)
{
    PhantomSpec spec;
    spec.cells = {8, 8, 16};
    spec.inserts.push_back({{0.3, 0, 1}, {1.7, 1.1, 5.2}, -700});
    auto const a = build_phantom(spec);
    auto const b = build_phantom(spec);
    EXPECT_EQ(a.rho(), b.rho());
    EXPECT_EQ(a.hu(), b.hu());
}

TEST(Grid, LocateUsesHalfOpenCells)
{
    Grid3 grid({4, 2, 8}, {0.5, 1.0, 1.0});
    EXPECT_EQ(grid.locate({0.5, 0.2, 0.2}), grid.linear(1, 0, 0));
    EXPECT_EQ(grid.locate({0.49999, 0.2, 0.2}), grid.linear(0, 0, 0));
    EXPECT_EQ(grid.locate({2.0, 2.0, 8.0}), grid.linear(3, 1, 7));
    EXPECT_FALSE(grid.locate({2.01, 0.5, 0.5}).has_value());
    EXPECT_FALSE(grid.locate({-1e-9, 0.5, 0.5}).has_value());
}

TEST(Grid, RandomInteriorPointsFallInTheirCell)
{
    Grid3 grid({5, 3, 7}, {0.3, 0.7, 0.2}, {-1, 2, 0.5});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 1000; ++trial)
    {
        std::array<double, 3> p{};
        for (int a = 0; a < 3; ++a)
        {
            p[a] = grid.lower(a) + unit(rng) * (grid.upper(a) - grid.lower(a));
        }
        auto const cell = grid.locate(p);
        ASSERT_TRUE(cell.has_value());
        auto const idx = grid.unravel(*cell);
        for (int a = 0; a < 3; ++a)
        {
            double const lo = grid.lower(a) + idx[a] * grid.spacing(a);
            EXPECT_LE(lo, p[a] + 1e-12);
            EXPECT_LT(p[a], lo + grid.spacing(a) + 1e-12);
        }
    }
}

TEST(Grid, InvalidConstruction)
{
    EXPECT_THROW(Grid3({0, 1, 1}, {1, 1, 1}), ValidationError);
    EXPECT_THROW(Grid3({1, 1, 1}, {1, -1, 1}), ValidationError);
}

TEST(Beam, FaceDirectionAndCenter)
{
    BeamSource beam;
    auto const d = beam.direction();
    EXPECT_EQ(d[2], 1.0);
    EXPECT_EQ(std::hypot(d[0], d[1], d[2]), 1.0);
    Grid3 grid({4, 4, 8}, {0.5, 0.5, 1.0});
    auto const c = beam.resolved_center(grid);
    EXPECT_DOUBLE_EQ(c[0], 1.0);
    EXPECT_DOUBLE_EQ(c[1], 1.0);
    beam.face = Face::x_hi;
    EXPECT_EQ(beam.direction()[0], -1.0);
    EXPECT_EQ(parse_face("y-"), Face::y_lo);
    EXPECT_THROW(parse_face("top"), ValidationError);
    EXPECT_EQ(to_string(Face::z_hi), "z+");
}

TEST(Beam, RayWeightsSumToBeamWeight)
{
    BeamSource beam;
    beam.weight = 2.5;
    Grid3 grid({10, 10, 40}, {0.2, 0.2, 0.2});
    auto const rays = entry_rays(beam, grid);
    double total = 0;
    for (auto const& ray : rays)
    {
        EXPECT_EQ(ray.origin[2], 0.0);
        total += ray.weight;
    }
    EXPECT_NEAR(total, 2.5, 1e-13);
    EXPECT_EQ(rays.size(), 100u);
}

TEST(Beam, ValidationRejectsBadParameters)
{
    BeamSource beam;
    beam.sigma = 0;
    EXPECT_THROW(beam.validate(), ValidationError);
    beam.sigma = 0.3;
    beam.energy_sigma = -1;
    EXPECT_THROW(beam.validate(), ValidationError);
}

TEST(TruncatedGaussian, MassIsRenormalized)
{
    TruncatedGaussian g(90, 1, 1, 91);
    EXPECT_NEAR(g.mass(1, 91), 1.0, 1e-14);
    // Closed form: mass of [90, 91] over [1, 91] is (Phi(1) - Phi(0)) / Phi(1)
    double const phi1 = 0.5 * std::erfc(-1 / std::sqrt(2.0));
    EXPECT_NEAR(g.mass(90, 91), (phi1 - 0.5) / phi1, 1e-12);
    EXPECT_GT(g.density(90), g.density(89));
}

TEST(TruncatedGaussian, DeltaSpectrum)
{
    TruncatedGaussian g(90, 0, 1, 95);
    EXPECT_TRUE(g.is_delta());
    EXPECT_EQ(g.mass(89, 91), 1.0);
    EXPECT_EQ(g.mass(91, 95), 0.0);
}

}  // namespace pdlra::domain
