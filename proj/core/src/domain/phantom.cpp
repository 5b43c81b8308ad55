// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/domain/phantom.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::domain
{
double hu_to_density(double hu, double floor)
{
    return std::max(floor, 1.0 + hu / 1000.0);
}

DensityGrid::DensityGrid(Grid3 grid, std::vector<double> hu, double floor)
    : grid_(grid), hu_(std::move(hu))
{
    if (hu_.size() != grid_.size())
    {
        throw ValidationError(fmt::format("HU array has {} entries for {} cells", hu_.size(),
                                          grid_.size()));
    }
    if (!(floor > 0))
    {
        throw ValidationError("density floor must be positive");
    }
    rho_.resize(hu_.size());
    std::transform(hu_.begin(), hu_.end(), rho_.begin(),
                   [floor](double h) { return hu_to_density(h, floor); });
}

DensityGrid DensityGrid::uniform(Grid3 grid, double rho)
{
    return from_density(grid, std::vector<double>(grid.size(), rho));
}

DensityGrid DensityGrid::from_density(Grid3 grid, std::vector<double> rho)
{
    if (rho.size() != grid.size())
    {
        throw ValidationError(fmt::format("density array has {} entries for {} cells",
                                          rho.size(), grid.size()));
    }
    DensityGrid result;
    result.grid_ = grid;
    result.hu_.resize(rho.size());
    for (std::size_t c = 0; c < rho.size(); ++c)
    {
        if (!(rho[c] > 0) || !std::isfinite(rho[c]))
        {
            throw ValidationError(fmt::format("density must be positive (cell {})", c));
        }
        result.hu_[c] = 1000.0 * (rho[c] - 1.0);
    }
    result.rho_ = std::move(rho);
    return result;
}

double DensityGrid::min_density() const
{
    return *std::min_element(rho_.begin(), rho_.end());
}

double DensityGrid::max_density() const
{
    return *std::max_element(rho_.begin(), rho_.end());
}

DensityGrid build_phantom(PhantomSpec const& spec)
{
    std::array<double, 3> spacing;
    for (int a = 0; a < 3; ++a)
    {
        if (spec.cells[a] < 1 || !(spec.extent[a] > 0))
        {
            throw ValidationError(fmt::format("phantom axis {} needs cells >= 1 and extent > 0", a));
        }
        spacing[a] = spec.extent[a] / static_cast<double>(spec.cells[a]);
    }
    Grid3 grid(spec.cells, spacing, spec.origin);

    std::vector<double> hu(grid.size(), spec.background_hu);
    for (std::size_t b = 0; b < spec.inserts.size(); ++b)
    {
        auto const& box = spec.inserts[b];
        for (int a = 0; a < 3; ++a)
        {
            double const tol = 1e-12 * std::max(1.0, std::abs(grid.upper(a)));
            if (!(box.lo[a] < box.hi[a]) || box.lo[a] < grid.lower(a) - tol
                || box.hi[a] > grid.upper(a) + tol)
            {
                throw ValidationError(fmt::format(
                    "insert {} [{}, {}] on axis {} lies outside domain [{}, {}]", b, box.lo[a],
                    box.hi[a], a, grid.lower(a), grid.upper(a)));
            }
        }
        for (std::size_t k = 0; k < grid.count(2); ++k)
        {
            double const z = grid.center(2, k);
            if (z < box.lo[2] || z > box.hi[2])
            {
                continue;
            }
            for (std::size_t j = 0; j < grid.count(1); ++j)
            {
                double const y = grid.center(1, j);
                if (y < box.lo[1] || y > box.hi[1])
                {
                    continue;
                }
                for (std::size_t i = 0; i < grid.count(0); ++i)
                {
                    double const x = grid.center(0, i);
                    if (x >= box.lo[0] && x <= box.hi[0])
                    {
                        hu[grid.linear(i, j, k)] = box.hu;
                    }
                }
            }
        }
    }
    return DensityGrid(grid, std::move(hu), spec.density_floor);
}

}  // namespace pdlra::domain
