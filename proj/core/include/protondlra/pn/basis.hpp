// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "protondlra/types.hpp"

namespace pdlra::pn
{
using Direction = std::array<double, 3>;

//! Weighted directions on the unit sphere.
struct SphereQuadrature
{
    std::vector<Direction> directions;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
};

// Gauss-Legendre in mu = Omega_z times the trapezoidal rule in azimuth,
// exact for polynomials on the sphere up to the given total degree.
SphereQuadrature product_quadrature(int exactness);

//---------------------------------------------------------------------------//
/*!
 * Real orthonormal spherical harmonics up to degree N, ordered
 * (l, m) = (0,0), (1,-1), (1,0), (1,1), ..., (N,N).
 *
 * The polar axis is z: Omega = (sin(theta) cos(phi), sin(theta) sin(phi),
 * cos(theta)). Negative orders carry sin(|m| phi), positive orders
 * cos(m phi).
 */
class SHBasis
{
  public:
    explicit SHBasis(int degree);

    int degree() const { return degree_; }
    int size() const { return (degree_ + 1) * (degree_ + 1); }

    static int index(int l, int m) { return l * l + l + m; }
    //! Degree l of each basis function
    std::vector<int> const& degrees() const { return degrees_; }

    void evaluate(Direction const& omega, std::span<double> out) const;
    Vector evaluate(Direction const& omega) const;

  private:
    int degree_;
    std::vector<int> degrees_;
    // Recurrence coefficients for normalized associated Legendre functions
    std::vector<double> a_;
    std::vector<double> b_;
};

SHBasis build_basis(int degree);

//! Gram matrix <m_i, m_j> under a quadrature
Matrix gram_matrix(SHBasis const& basis, SphereQuadrature const& quadrature);

}  // namespace pdlra::pn
