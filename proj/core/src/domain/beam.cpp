// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/domain/beam.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::domain
{
namespace
{
double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

std::array<int, 2> in_face_axes(Face face)
{
    switch (face_axis(face))
    {
        case 0:
            return {1, 2};
        case 1:
            return {0, 2};
        default:
            return {0, 1};
    }
}
}  // namespace

Face parse_face(std::string const& name)
{
    static constexpr std::pair<char const*, Face> names[] = {
        {"x-", Face::x_lo}, {"x+", Face::x_hi}, {"y-", Face::y_lo},
        {"y+", Face::y_hi}, {"z-", Face::z_lo}, {"z+", Face::z_hi}};
    for (auto const& [n, f] : names)
    {
        if (name == n)
        {
            return f;
        }
    }
    throw ValidationError(fmt::format("unknown face '{}' (expected x-, x+, y-, y+, z- or z+)",
                                      name));
}

std::string to_string(Face face)
{
    static constexpr char const* names[] = {"x-", "x+", "y-", "y+", "z-", "z+"};
    return names[static_cast<int>(face)];
}

int face_axis(Face face)
{
    return static_cast<int>(face) / 2;
}

int inward_sign(Face face)
{
    return static_cast<int>(face) % 2 == 0 ? 1 : -1;
}

std::array<double, 3> BeamSource::direction() const
{
    std::array<double, 3> dir{0, 0, 0};
    dir[face_axis(face)] = inward_sign(face);
    return dir;
}

std::array<double, 2> BeamSource::resolved_center(Grid3 const& grid) const
{
    if (center_set)
    {
        return center;
    }
    auto const axes = in_face_axes(face);
    return {0.5 * (grid.lower(axes[0]) + grid.upper(axes[0])),
            0.5 * (grid.lower(axes[1]) + grid.upper(axes[1]))};
}

void BeamSource::validate() const
{
    if (!(sigma > 0))
    {
        throw ValidationError("beam sigma must be positive");
    }
    if (!(energy_sigma >= 0))
    {
        throw ValidationError("beam energy spread must be nonnegative");
    }
    if (!(energy > 0))
    {
        throw ValidationError("beam energy must be positive");
    }
    if (!(weight >= 0))
    {
        throw ValidationError("beam weight must be nonnegative");
    }
}

std::vector<EntryRay> entry_rays(BeamSource const& beam, Grid3 const& grid)
{
    beam.validate();
    int const axis = face_axis(beam.face);
    auto const axes = in_face_axes(beam.face);
    auto const center = beam.resolved_center(grid);

    std::array<std::vector<double>, 2> marginal;
    for (int d = 0; d < 2; ++d)
    {
        int const a = axes[d];
        marginal[d].resize(grid.count(a));
        for (std::size_t i = 0; i < grid.count(a); ++i)
        {
            double const lo = grid.lower(a) + static_cast<double>(i) * grid.spacing(a);
            double const hi = lo + grid.spacing(a);
            marginal[d][i] = normal_cdf((hi - center[d]) / beam.sigma)
                             - normal_cdf((lo - center[d]) / beam.sigma);
        }
    }

    double total = 0;
    for (double u : marginal[0])
    {
        for (double v : marginal[1])
        {
            total += u * v;
        }
    }
    if (!(total > 0))
    {
        throw ValidationError("beam profile misses the entry face");
    }

    double const depth = inward_sign(beam.face) > 0 ? grid.lower(axis) : grid.upper(axis);
    std::vector<EntryRay> rays;
    // Iterate with the first in-face axis fastest to match the cell ordering
    for (std::size_t j = 0; j < marginal[1].size(); ++j)
    {
        for (std::size_t i = 0; i < marginal[0].size(); ++i)
        {
            double const w = marginal[0][i] * marginal[1][j];
            if (w <= 0)
            {
                continue;
            }
            EntryRay ray;
            ray.origin[axis] = depth;
            ray.origin[axes[0]] = grid.center(axes[0], i);
            ray.origin[axes[1]] = grid.center(axes[1], j);
            ray.face_cell = {i, j};
            ray.weight = beam.weight * w / total;
            rays.push_back(ray);
        }
    }
    return rays;
}

TruncatedGaussian::TruncatedGaussian(double mean, double sigma, double e_lo, double e_hi)
    : mean_(mean), sigma_(sigma), lo_(e_lo), hi_(e_hi), norm_(1.0)
{
    if (!(e_hi > e_lo))
    {
        throw ValidationError("spectrum support must have e_hi > e_lo");
    }
    if (!(sigma >= 0))
    {
        throw ValidationError("spectrum width must be nonnegative");
    }
    if (sigma == 0)
    {
        if (!(mean > e_lo && mean <= e_hi))
        {
            throw ValidationError(fmt::format("beam energy {} MeV outside ({}, {}]", mean, e_lo,
                                              e_hi));
        }
        return;
    }
    norm_ = normal_cdf((hi_ - mean_) / sigma_) - normal_cdf((lo_ - mean_) / sigma_);
    if (!(norm_ > 0))
    {
        throw ValidationError("beam spectrum has no mass inside the energy range");
    }
}

double TruncatedGaussian::mass(double a, double b) const
{
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (!(b > a))
    {
        return 0.0;
    }
    if (is_delta())
    {
        return (mean_ > a && mean_ <= b) ? 1.0 : 0.0;
    }
    return (normal_cdf((b - mean_) / sigma_) - normal_cdf((a - mean_) / sigma_)) / norm_;
}

double TruncatedGaussian::density(double e) const
{
    if (is_delta() || e < lo_ || e > hi_)
    {
        return 0.0;
    }
    double const z = (e - mean_) / sigma_;
    return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2 * std::numbers::pi) * norm_);
}

}  // namespace pdlra::domain
