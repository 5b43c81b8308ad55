// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/domain/grid.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::domain
{
Grid3::Grid3(std::array<std::size_t, 3> counts,
             std::array<double, 3> spacing,
             std::array<double, 3> origin)
    : counts_(counts), spacing_(spacing), origin_(origin)
{
    for (int a = 0; a < 3; ++a)
    {
        if (counts_[a] < 1)
        {
            throw ValidationError(fmt::format("grid axis {} has no cells", a));
        }
        if (!(spacing_[a] > 0) || !std::isfinite(spacing_[a]))
        {
            throw ValidationError(fmt::format("grid axis {} spacing must be positive", a));
        }
    }
}

double Grid3::min_spacing() const
{
    return std::min({spacing_[0], spacing_[1], spacing_[2]});
}

Index3 Grid3::unravel(std::size_t cell) const
{
    std::size_t const i = cell % counts_[0];
    std::size_t const rest = cell / counts_[0];
    return {i, rest % counts_[1], rest / counts_[1]};
}

std::optional<std::size_t> Grid3::axis_index(int axis, double x) const
{
    if (!(x >= lower(axis) && x <= upper(axis)))
    {
        return std::nullopt;
    }
    double f = (x - origin_[axis]) / spacing_[axis];
    // Snap coordinates that sit on a face up to rounding error
    double const nearest = std::round(f);
    if (std::abs(f - nearest) <= 1e-9 * std::max(1.0, nearest))
    {
        f = nearest;
    }
    auto idx = static_cast<std::size_t>(std::floor(f));
    return std::min(idx, counts_[axis] - 1);
}

std::optional<std::size_t> Grid3::locate(std::array<double, 3> const& point) const
{
    Index3 idx;
    for (int a = 0; a < 3; ++a)
    {
        auto i = axis_index(a, point[a]);
        if (!i)
        {
            return std::nullopt;
        }
        idx[a] = *i;
    }
    return linear(idx);
}

}  // namespace pdlra::domain
