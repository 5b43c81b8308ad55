// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "protondlra/domain/grid.hpp"

namespace pdlra::raytracer
{
struct Crossing
{
    std::size_t cell;
    double length;  // cm
};

// Cells crossed by the ray origin + s * direction inside the grid, in path
// order, with exact intersection lengths (Siddon's parametric method). The
// origin may lie on the boundary. Zero-length crossings are skipped.
std::vector<Crossing> traverse(domain::Grid3 const& grid,
                               std::array<double, 3> const& origin,
                               std::array<double, 3> const& direction);

}  // namespace pdlra::raytracer
