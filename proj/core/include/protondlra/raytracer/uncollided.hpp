// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "protondlra/domain/beam.hpp"
#include "protondlra/domain/phantom.hpp"
#include "protondlra/physics/physics_tables.hpp"
#include "protondlra/raytracer/energy_mesh.hpp"
#include "protondlra/types.hpp"

namespace pdlra::raytracer
{
//---------------------------------------------------------------------------//
/*!
 * Cell-averaged uncollided transformed flux psi~_u = rho S phi_u (a delta in
 * angle along the beam direction) on the group polynomial basis, plus the
 * energy tallies of the ray trace. Energies are in MeV, not normalized.
 */
class UncollidedFlux
{
  public:
    UncollidedFlux(domain::Grid3 grid, EnergyMesh mesh, std::array<double, 3> direction);

    domain::Grid3 const& grid() const { return grid_; }
    EnergyMesh const& mesh() const { return mesh_; }
    std::array<double, 3> const& direction() const { return direction_; }

    //! cells x (groups * (p + 1)) coefficients
    Matrix& coefficients() { return coefficients_; }
    Matrix const& coefficients() const { return coefficients_; }

    //! Slowing-down and straggling deposit per cell, excluding the cutoff part
    std::vector<double> deposit;
    //! Energy of particles absorbed at E_cutoff per cell
    std::vector<double> cutoff_deposit;
    //! Energy handed to the collided flux per cell
    std::vector<double> scattered_energy;

    double injected_number = 0;
    double injected_energy = 0;
    double exit_energy = 0;
    double exit_number = 0;
    double clipped_number = 0;  //!< particles added by clipping negative groups
    std::size_t rays = 0;

    //! Total uncollided dose per cell (deposit + cutoff deposit)
    std::vector<double> dose() const;

  private:
    domain::Grid3 grid_;
    EnergyMesh mesh_;
    std::array<double, 3> direction_;
    Matrix coefficients_;
};

// March one ray per entry-face midpoint through the grid. Throws SolverError
// naming the cell if a crossing produces non-finite values.
UncollidedFlux trace_all(domain::BeamSource const& beam,
                         domain::DensityGrid const& density,
                         physics::PhysicsTables const& physics,
                         EnergyMesh const& mesh);

// Group coefficients of a unit-mass beam spectrum. A zero energy spread
// becomes a flat distribution over the group holding the mean energy.
Vector project_spectrum(domain::BeamSource const& beam, EnergyMesh const& mesh);

//! psi~_u at E in a cell; continuous within a group (lo < E <= hi)
double group_flux_at(UncollidedFlux const& flux, std::size_t cell, double energy);

//---------------------------------------------------------------------------//
/*!
 * Sparse weights w over the coefficient columns with
 *   int_{t0}^{t1} f(E(t)) psi~_u(E(t)) dt = sum_d w_d c_d
 *     = int_{E1}^{E0} f psi~_u / S dE
 * for every cell, so that window integrals are exact for the stored
 * polynomials up to the quadrature of f / S.
 */
std::vector<std::pair<int, double>> window_weights(
    EnergyMesh const& mesh,
    physics::PseudoTimeMap const& map,
    double t0,
    double t1,
    std::function<double(double)> const& factor = {});

//! int_{t0}^{t1} psi~_u dt for every cell
Vector window_integral(UncollidedFlux const& flux,
                       std::vector<std::pair<int, double>> const& weights);

}  // namespace pdlra::raytracer
