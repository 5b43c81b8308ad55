// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "protondlra/dlra/rhs.hpp"
#include "protondlra/pn/upwind.hpp"
#include "protondlra/solver/problem.hpp"

namespace pdlra::solver
{
//---------------------------------------------------------------------------//
/*!
 * Right-hand side of the collided P_N system
 *   F(u) = -sum_i D_i(P u A_i) + q g^T - u diag(Sigma_t - G_ll)
 * with P = diag(1/rho). Advection and the rank-1 first-collision source
 * are explicit; the removal diagonal is implicit.
 *
 * Over the step [t0, t1] the source has cell profile
 *   q = (1/dt) int G_00(E(t)) psi~_u(t) dt
 * and moment profile g = G(E_mid) m(Omega_in) / G_00(E_mid), so the number
 * of particles handed over matches the ray trace exactly.
 */
class TransportRhs final : public dlra::RhsSplit
{
  public:
    explicit TransportRhs(CollidedProblem const& problem);

    Eigen::Index rows() const override { return problem_.cells(); }
    Eigen::Index cols() const override { return problem_.moments(); }

    void begin_step(double t0, double dt) override;
    Vector stiff_diagonal() const override { return removal_; }

    Matrix dense_explicit(Matrix const& u) const override;
    Matrix k_explicit(Matrix const& k, Matrix const& v) const override;
    Matrix l_explicit(Matrix const& x, Matrix const& l) const override;
    Matrix s_explicit(Matrix const& x, Matrix const& s, Matrix const& v) const override;

    Vector const& source_cells() const { return source_cells_; }
    Vector const& source_moments() const { return source_moments_; }

  private:
    CollidedProblem const& problem_;
    pn::UpwindStencil stencil_;
    Vector inv_rho_;
    Vector removal_;
    Vector source_cells_;
    Vector source_moments_;

    // X^T D_i^{+-} P X for the six directed difference operators
    std::array<Matrix, 6> projected_differences(Matrix const& x) const;
};

}  // namespace pdlra::solver
