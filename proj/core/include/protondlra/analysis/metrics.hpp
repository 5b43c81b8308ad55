// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "protondlra/analysis/dose_grid.hpp"

namespace pdlra::analysis
{
enum class DoseField
{
    total,
    collided,
    uncollided
};

Vector const& field(DoseGrid const& dose, DoseField which);

//! ||a.total - b.total||_2 / ||b.total||_2; throws ValidationError on grid mismatch
double relative_l2(DoseGrid const& a, DoseGrid const& b);
double max_abs_difference(DoseGrid const& a, DoseGrid const& b);

//! Dose summed over the two axes orthogonal to `axis`
std::vector<double> depth_dose(DoseGrid const& dose, int axis = 2);
//! Cell index of the maximum of the depth-dose curve (first on ties)
std::size_t peak_index(DoseGrid const& dose, int axis = 2);
double peak_depth(DoseGrid const& dose, int axis = 2);

//! sum_{j<k} sigma_j^2 / sum_j sigma_j^2 * 100; 100 if all are zero
double captured_information(std::span<double const> sigma, std::size_t k);

struct NegativeDoseStats
{
    double most_negative = 0;  //!< min(0, min cell value)
    double negative_fraction = 0;  //!< sum |negative| / sum |all|
    std::size_t negative_cells = 0;
};

NegativeDoseStats negative_dose_stats(Vector const& values);

//---------------------------------------------------------------------------//
enum class CutKind
{
    longitudinal,  //!< line along z at (x, y)
    lateral  //!< plane at fixed y, or line along x at (y, z)
};

/*!
 * Samples of one dose field at cell centers. `axes` lists the varying
 * axes; values are ordered with the first varying axis fastest.
 */
struct Cut
{
    std::vector<int> axes;
    std::vector<std::vector<double>> coordinates;
    std::vector<double> values;
    //! Fixed cell index per axis (unused for varying axes)
    std::array<std::size_t, 3> fixed{0, 0, 0};
};

/*!
 * Extracts a cut under the half-open voxel convention.
 *
 * Longitudinal cuts take coords = {x, y}. Lateral cuts take {y} for the
 * x-z plane or {y, z} for a line along x. Throws DomainError if a
 * coordinate lies outside the grid.
 */
Cut extract_cut(DoseGrid const& dose,
                CutKind kind,
                std::vector<double> const& coords,
                DoseField which = DoseField::total);

}  // namespace pdlra::analysis
