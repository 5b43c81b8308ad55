// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "protondlra/types.hpp"

namespace pdlra::dlra
{
//---------------------------------------------------------------------------//
/*!
 * Right-hand side F(t, u) = F_ex(t, u) - u diag(d(t)) of a matrix ODE,
 * split into an explicit part and a stiff part diagonal in the column
 * index.
 *
 * begin_step fixes the time window of one step: explicit terms use t0 and
 * the stiff diagonal uses t0 + dt. The projected forms default to dense
 * evaluation; large problems override them with factored versions.
 */
class RhsSplit
{
  public:
    virtual ~RhsSplit() = default;

    virtual Eigen::Index rows() const = 0;
    virtual Eigen::Index cols() const = 0;

    virtual void begin_step(double t0, double dt) = 0;

    //! d(t0 + dt), the nonnegative stiff damping per column
    virtual Vector stiff_diagonal() const = 0;

    //! F_ex(t0, u)
    virtual Matrix dense_explicit(Matrix const& u) const = 0;

    //! F_ex(t0, K V^T) V
    virtual Matrix k_explicit(Matrix const& k, Matrix const& v) const;
    //! F_ex(t0, X L^T)^T X
    virtual Matrix l_explicit(Matrix const& x, Matrix const& l) const;
    //! X^T F_ex(t0, X S V^T) V
    virtual Matrix s_explicit(Matrix const& x, Matrix const& s, Matrix const& v) const;

    //! Full F(t, u) with the stiff part at the implicit time
    Matrix dense_full(Matrix const& u) const;
};

// One dense IMEX Euler step: u1 = (u0 + dt F_ex(t0, u0)) (I + dt D(t1))^{-1}.
// Calls rhs.begin_step(t0, dt).
Matrix imex_euler_step(Matrix const& u0, RhsSplit& rhs, double t0, double dt);

}  // namespace pdlra::dlra
