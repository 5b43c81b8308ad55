// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/analysis/dose_grid.hpp"

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::analysis
{
DoseGrid DoseGrid::combine(domain::Grid3 grid, Vector collided, Vector uncollided)
{
    DoseGrid dose{std::move(grid), std::move(collided), std::move(uncollided), {}};
    if (dose.collided.size() != dose.uncollided.size())
    {
        throw ValidationError("collided and uncollided dose differ in size");
    }
    dose.total = dose.collided + dose.uncollided;
    dose.validate();
    return dose;
}

DoseGrid DoseGrid::zero(domain::Grid3 grid)
{
    auto const n = static_cast<Eigen::Index>(grid.size());
    return combine(std::move(grid), Vector::Zero(n), Vector::Zero(n));
}

void DoseGrid::validate() const
{
    auto const n = static_cast<Eigen::Index>(grid.size());
    if (collided.size() != n || uncollided.size() != n || total.size() != n)
    {
        throw ValidationError(fmt::format("dose fields do not match the {} cell grid", n));
    }
    if (!collided.allFinite() || !uncollided.allFinite() || !total.allFinite())
    {
        throw ValidationError("dose contains non-finite values");
    }
}

DoseGrid& DoseGrid::operator*=(double factor)
{
    collided *= factor;
    uncollided *= factor;
    total *= factor;
    return *this;
}

}  // namespace pdlra::analysis
