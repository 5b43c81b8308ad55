// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "protondlra/domain/phantom.hpp"
#include "protondlra/physics/physics_tables.hpp"
#include "protondlra/pn/basis.hpp"
#include "protondlra/pn/flux_matrices.hpp"
#include "protondlra/pn/scatter.hpp"
#include "protondlra/raytracer/uncollided.hpp"
#include "protondlra/types.hpp"

namespace pdlra::solver
{
//---------------------------------------------------------------------------//
/*!
 * Transformed collided equation on a voxel grid as a (cells x moments)
 * matrix ODE in pseudo-time.
 *
 * A null scatter operator means no scattering; a null uncollided flux means
 * a zero first-collision source.
 */
struct CollidedProblem
{
    domain::DensityGrid density;
    std::shared_ptr<pn::SHBasis const> basis;
    std::shared_ptr<pn::FluxMatrices const> flux;
    std::shared_ptr<pn::ScatterOperator const> scatter;
    Vector beam;  //!< m(Omega_in)
    std::shared_ptr<raytracer::UncollidedFlux const> uncollided;
    physics::PhysicsTables physics;
    double cfl = 0.1;
    //! Injected particle weight used for per-particle normalization
    double weight = 1.0;

    domain::Grid3 const& grid() const { return density.grid(); }
    Eigen::Index cells() const { return static_cast<Eigen::Index>(grid().size()); }
    int moments() const { return basis->size(); }
    double final_time() const { return physics.csd->final_time(); }
    //! c_CFL rho_min dx_min
    double max_step() const;
    int step_count() const;
    //! Uniform step t_final / step_count
    double step() const;

    void validate() const;
};

CollidedProblem make_problem(domain::DensityGrid density,
                             physics::PhysicsTables physics,
                             std::shared_ptr<raytracer::UncollidedFlux const> uncollided,
                             int degree,
                             double cfl,
                             double weight = 1.0);

}  // namespace pdlra::solver
