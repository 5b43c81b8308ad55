// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/analysis/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::analysis
{
namespace
{
void check_same_grid(DoseGrid const& a, DoseGrid const& b)
{
    if (!(a.grid == b.grid))
    {
        throw ValidationError("dose grids differ");
    }
    a.validate();
    b.validate();
}

std::size_t index_on_axis(domain::Grid3 const& grid, int axis, double x)
{
    auto idx = grid.axis_index(axis, x);
    if (!idx)
    {
        throw DomainError(fmt::format("cut coordinate {} outside [{}, {}] on axis {}", x,
                                      grid.lower(axis), grid.upper(axis), axis));
    }
    return *idx;
}
}  // namespace

Vector const& field(DoseGrid const& dose, DoseField which)
{
    switch (which)
    {
        case DoseField::collided:
            return dose.collided;
        case DoseField::uncollided:
            return dose.uncollided;
        case DoseField::total:
            break;
    }
    return dose.total;
}

double relative_l2(DoseGrid const& a, DoseGrid const& b)
{
    check_same_grid(a, b);
    double const ref = b.total.norm();
    double const diff = (a.total - b.total).norm();
    if (ref == 0)
    {
        return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / ref;
}

double max_abs_difference(DoseGrid const& a, DoseGrid const& b)
{
    check_same_grid(a, b);
    return a.total.size() ? (a.total - b.total).cwiseAbs().maxCoeff() : 0.0;
}

std::vector<double> depth_dose(DoseGrid const& dose, int axis)
{
    if (axis < 0 || axis > 2)
    {
        throw ValidationError(fmt::format("axis {} out of range", axis));
    }
    std::vector<double> out(dose.grid.count(axis), 0.0);
    for (Eigen::Index c = 0; c < dose.total.size(); ++c)
    {
        out[dose.grid.unravel(static_cast<std::size_t>(c))[axis]] += dose.total[c];
    }
    return out;
}

std::size_t peak_index(DoseGrid const& dose, int axis)
{
    auto const d = depth_dose(dose, axis);
    return static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
}

double peak_depth(DoseGrid const& dose, int axis)
{
    return dose.grid.center(axis, peak_index(dose, axis));
}

double captured_information(std::span<double const> sigma, std::size_t k)
{
    if (k > sigma.size())
    {
        throw ValidationError(fmt::format("k = {} exceeds the {} singular values", k,
                                          sigma.size()));
    }
    double total = 0;
    double captured = 0;
    for (std::size_t j = 0; j < sigma.size(); ++j)
    {
        double const s2 = sigma[j] * sigma[j];
        total += s2;
        if (j < k)
        {
            captured += s2;
        }
    }
    return total == 0 ? 100.0 : captured / total * 100.0;
}

NegativeDoseStats negative_dose_stats(Vector const& values)
{
    NegativeDoseStats stats;
    double negative = 0;
    double all = 0;
    for (double v : values)
    {
        all += std::abs(v);
        if (v < 0)
        {
            negative -= v;
            ++stats.negative_cells;
            stats.most_negative = std::min(stats.most_negative, v);
        }
    }
    stats.negative_fraction = all > 0 ? negative / all : 0.0;
    return stats;
}

Cut extract_cut(DoseGrid const& dose, CutKind kind, std::vector<double> const& coords,
                DoseField which)
{
    auto const& grid = dose.grid;
    Cut cut;
    if (kind == CutKind::longitudinal)
    {
        if (coords.size() != 2)
        {
            throw ValidationError("longitudinal cut takes (x, y)");
        }
        cut.axes = {2};
        cut.fixed = {index_on_axis(grid, 0, coords[0]), index_on_axis(grid, 1, coords[1]), 0};
    }
    else if (coords.size() == 1)
    {
        cut.axes = {0, 2};
        cut.fixed = {0, index_on_axis(grid, 1, coords[0]), 0};
    }
    else if (coords.size() == 2)
    {
        cut.axes = {0};
        cut.fixed = {0, index_on_axis(grid, 1, coords[0]), index_on_axis(grid, 2, coords[1])};
    }
    else
    {
        throw ValidationError("lateral cut takes (y) or (y, z)");
    }

    for (int axis : cut.axes)
    {
        std::vector<double> c(grid.count(axis));
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            c[i] = grid.center(axis, i);
        }
        cut.coordinates.push_back(std::move(c));
    }

    Vector const& values = field(dose, which);
    std::size_t const n0 = grid.count(cut.axes[0]);
    std::size_t const n1 = cut.axes.size() > 1 ? grid.count(cut.axes[1]) : 1;
    cut.values.reserve(n0 * n1);
    for (std::size_t b = 0; b < n1; ++b)
    {
        for (std::size_t a = 0; a < n0; ++a)
        {
            auto idx = cut.fixed;
            idx[cut.axes[0]] = a;
            if (cut.axes.size() > 1)
            {
                idx[cut.axes[1]] = b;
            }
            cut.values.push_back(values[static_cast<Eigen::Index>(grid.linear(idx))]);
        }
    }
    return cut;
}

}  // namespace pdlra::analysis
