// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/raytracer/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "protondlra/errors.hpp"

namespace pdlra::raytracer
{
std::vector<Crossing> traverse(domain::Grid3 const& grid,
                               std::array<double, 3> const& origin,
                               std::array<double, 3> const& direction)
{
    double const norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1]
                                  + direction[2] * direction[2]);
    if (!(norm > 0))
    {
        throw ValidationError("ray direction must be nonzero");
    }
    std::array<double, 3> dir;
    for (int a = 0; a < 3; ++a)
    {
        dir[a] = direction[a] / norm;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Parametric interval [s_in, s_out] inside the box
    double s_in = 0;
    double s_out = inf;
    for (int a = 0; a < 3; ++a)
    {
        if (dir[a] == 0)
        {
            if (origin[a] < grid.lower(a) || origin[a] > grid.upper(a))
            {
                return {};
            }
            continue;
        }
        double const s0 = (grid.lower(a) - origin[a]) / dir[a];
        double const s1 = (grid.upper(a) - origin[a]) / dir[a];
        s_in = std::max(s_in, std::min(s0, s1));
        s_out = std::min(s_out, std::max(s0, s1));
    }
    if (!(s_out > s_in))
    {
        return {};
    }

    // Starting cell from the midpoint of the first (tiny) step
    std::array<std::ptrdiff_t, 3> idx;
    std::array<double, 3> s_next;
    std::array<double, 3> s_delta;
    std::array<std::ptrdiff_t, 3> step;
    for (int a = 0; a < 3; ++a)
    {
        double const x = origin[a] + s_in * dir[a];
        double f = (x - grid.lower(a)) / grid.spacing(a);
        auto const n = static_cast<std::ptrdiff_t>(grid.count(a));
        std::ptrdiff_t i;
        double const nearest = std::round(f);
        if (std::abs(f - nearest) <= 1e-9 * std::max(1.0, std::abs(nearest)))
        {
            // On a face: pick the cell the ray moves into
            i = static_cast<std::ptrdiff_t>(nearest) - (dir[a] < 0 ? 1 : 0);
        }
        else
        {
            i = static_cast<std::ptrdiff_t>(std::floor(f));
        }
        idx[a] = std::clamp<std::ptrdiff_t>(i, 0, n - 1);
        if (dir[a] > 0)
        {
            step[a] = 1;
            s_delta[a] = grid.spacing(a) / dir[a];
            s_next[a] = (grid.lower(a) + (idx[a] + 1) * grid.spacing(a) - origin[a]) / dir[a];
        }
        else if (dir[a] < 0)
        {
            step[a] = -1;
            s_delta[a] = -grid.spacing(a) / dir[a];
            s_next[a] = (grid.lower(a) + idx[a] * grid.spacing(a) - origin[a]) / dir[a];
        }
        else
        {
            step[a] = 0;
            s_delta[a] = inf;
            s_next[a] = inf;
        }
    }

    std::vector<Crossing> path;
    double s = s_in;
    double const tol = 1e-12 * (s_out - s_in);
    while (s < s_out - tol)
    {
        int const a = static_cast<int>(std::min_element(s_next.begin(), s_next.end())
                                       - s_next.begin());
        double const s_exit = std::min(s_next[a], s_out);
        if (s_exit - s > tol)
        {
            path.push_back({grid.linear(idx[0], idx[1], idx[2]), s_exit - s});
        }
        s = s_exit;
        idx[a] += step[a];
        s_next[a] += s_delta[a];
        if (idx[a] < 0 || idx[a] >= static_cast<std::ptrdiff_t>(grid.count(a)))
        {
            break;
        }
    }
    return path;
}

}  // namespace pdlra::raytracer
