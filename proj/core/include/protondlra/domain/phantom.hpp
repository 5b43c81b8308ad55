// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "protondlra/domain/grid.hpp"

namespace pdlra::domain
{
inline constexpr double default_density_floor = 0.05;  // g/cm^3

//! Linear HU ramp rho = max(floor, 1 + HU/1000) [g/cm^3].
double hu_to_density(double hu, double floor = default_density_floor);

//! Axis-aligned box [lo, hi] with a Hounsfield override.
struct HuBox
{
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};
    double hu = 0;
};

struct PhantomSpec
{
    std::array<double, 3> extent{2, 2, 8};  // cm
    std::array<std::size_t, 3> cells{40, 40, 160};
    std::array<double, 3> origin{0, 0, 0};
    double background_hu = 0;
    std::vector<HuBox> inserts;  // applied in order; later boxes win
    double density_floor = default_density_floor;
};

//! Per-cell Hounsfield units and density on a grid.
class DensityGrid
{
  public:
    DensityGrid() = default;
    DensityGrid(Grid3 grid, std::vector<double> hu, double floor = default_density_floor);

    //! Uniform density field (HU reconstructed from the ramp)
    static DensityGrid uniform(Grid3 grid, double rho);
    //! Arbitrary density field; HU entries follow the inverse ramp
    static DensityGrid from_density(Grid3 grid, std::vector<double> rho);

    Grid3 const& grid() const { return grid_; }
    std::vector<double> const& hu() const { return hu_; }
    std::vector<double> const& rho() const { return rho_; }
    double rho(std::size_t cell) const { return rho_[cell]; }
    double min_density() const;
    double max_density() const;

  private:
    Grid3 grid_;
    std::vector<double> hu_;
    std::vector<double> rho_;
};

// Assign HU by cell-center membership in each insert box and derive rho.
// Throws ValidationError if an insert box is not contained in the domain.
DensityGrid build_phantom(PhantomSpec const& spec);

}  // namespace pdlra::domain
