// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace pdlra::domain
{
//! Cell index triple (i, j, k) along (x, y, z).
using Index3 = std::array<std::size_t, 3>;

//---------------------------------------------------------------------------//
/*!
 * Regular Cartesian voxel grid.
 *
 * Cells are numbered with x fastest: c = i + n_x (j + n_y k). Cell (i, j, k)
 * covers [origin + i dx, origin + (i+1) dx) along x and likewise in y, z.
 */
class Grid3
{
  public:
    Grid3() = default;
    Grid3(std::array<std::size_t, 3> counts,
          std::array<double, 3> spacing,
          std::array<double, 3> origin = {0, 0, 0});

    std::array<std::size_t, 3> const& counts() const { return counts_; }
    std::array<double, 3> const& spacing() const { return spacing_; }
    std::array<double, 3> const& origin() const { return origin_; }

    std::size_t count(int axis) const { return counts_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    std::size_t size() const { return counts_[0] * counts_[1] * counts_[2]; }
    double cell_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }
    double min_spacing() const;

    double lower(int axis) const { return origin_[axis]; }
    double upper(int axis) const { return origin_[axis] + counts_[axis] * spacing_[axis]; }
    double center(int axis, std::size_t i) const
    {
        return origin_[axis] + (static_cast<double>(i) + 0.5) * spacing_[axis];
    }

    std::size_t linear(std::size_t i, std::size_t j, std::size_t k) const
    {
        return i + counts_[0] * (j + counts_[1] * k);
    }
    std::size_t linear(Index3 const& idx) const { return linear(idx[0], idx[1], idx[2]); }
    Index3 unravel(std::size_t cell) const;

    // Cell index along one axis under the half-open convention. A coordinate
    // on an internal face selects the higher-index cell; the upper domain
    // boundary maps to the last cell. Empty if outside [lower, upper].
    std::optional<std::size_t> axis_index(int axis, double x) const;
    std::optional<std::size_t> locate(std::array<double, 3> const& point) const;

    bool operator==(Grid3 const& other) const = default;

  private:
    std::array<std::size_t, 3> counts_{1, 1, 1};
    std::array<double, 3> spacing_{1, 1, 1};
    std::array<double, 3> origin_{0, 0, 0};
};

}  // namespace pdlra::domain
