// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "protondlra/physics/physics_tables.hpp"
#include "protondlra/raytracer/energy_mesh.hpp"
#include "protondlra/types.hpp"

namespace pdlra::raytracer
{
using SparseMatrix = Eigen::SparseMatrix<double>;
using RowVector = Eigen::RowVectorXd;

//! Lambda(E) = int_{E_cutoff}^{E} Sigma_t(E') / S(E') dE' (dimensionless)
class AttenuationIntegral
{
  public:
    explicit AttenuationIntegral(physics::PhysicsTables const& physics);

    double operator()(double energy) const;
    bool is_zero() const { return zero_; }

  private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    bool zero_ = true;
};

//---------------------------------------------------------------------------//
/*!
 * Linear maps on the energy coefficients of one ray for a crossing of mass
 * length rho * ds [g/cm^2].
 *
 * Slowing down and attenuation are applied exactly along characteristics,
 *   N'(E') = N(E_p) S(E_p) / S(E') exp(-(Lambda(E_p) - Lambda(E'))),
 * with E_p the energy that slows down to E' over the crossing, then
 * projected back onto the group polynomials. Straggling follows as a
 * backward Euler step of a symmetric interior-penalty discretization.
 */
struct CrossingOperators
{
    double mass_length = 0;
    SparseMatrix remap;
    //! Coefficients of int_0^ds rho S N ds (the transformed flux path integral)
    SparseMatrix path_flux;
    //! Particles and energy removed into the collided flux during the crossing
    RowVector scattered_number;
    RowVector scattered_energy;
    //! Particles slowing below E_cutoff during the crossing
    RowVector cutoff_number;
    //! (M + rho ds A) LU factors; null without straggling
    std::unique_ptr<Eigen::SparseLU<SparseMatrix>> straggle;
};

class CrossingCache
{
  public:
    CrossingCache(physics::PhysicsTables const& physics, EnergyMesh const& mesh);

    CrossingOperators const& get(double mass_length);

    //! Particle count and kinetic energy of a coefficient vector
    RowVector const& number_functional() const { return number_; }
    RowVector const& energy_functional() const { return energy_; }
    //! Diagonal mass matrix of the group basis
    Vector const& mass() const { return mass_; }
    //! Straggling stiffness matrix A (per unit mass length)
    SparseMatrix const& straggling_matrix() const { return straggling_; }

    //! Apply a cached straggling solve: c <- (M + L A)^{-1} M c
    void apply_straggling(CrossingOperators const& ops, Vector& c) const;

  private:
    physics::PhysicsTables const& physics_;
    EnergyMesh mesh_;
    AttenuationIntegral lambda_;
    RowVector number_;
    RowVector energy_;
    Vector mass_;
    SparseMatrix straggling_;
    bool has_straggling_ = false;
    std::map<double, std::unique_ptr<CrossingOperators>> cache_;

    std::unique_ptr<CrossingOperators> build(double mass_length) const;
};

//! Symmetric interior-penalty matrix of -1/2 d^2/dE^2 (T N) with zero-flux ends
SparseMatrix straggling_matrix(EnergyMesh const& mesh, physics::StragglingTable const& table);

}  // namespace pdlra::raytracer
