// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "protondlra/pn/basis.hpp"
#include "protondlra/types.hpp"

namespace pdlra::pn
{
//---------------------------------------------------------------------------//
/*!
 * Streaming matrices A_i = int m m^T Omega_i dOmega and their sign split
 * A_i = A_i^+ + A_i^- with A_i^+ positive and A_i^- negative semidefinite.
 */
struct FluxMatrices
{
    std::array<Matrix, 3> a;
    std::array<Matrix, 3> plus;
    std::array<Matrix, 3> minus;
    std::array<Vector, 3> eigenvalues;
    //! Largest asymmetry seen during assembly, before symmetrization
    double asymmetry = 0;

    int size() const { return static_cast<int>(a[0].rows()); }
    //! |A_i| = A_i^+ - A_i^-
    Matrix absolute(int axis) const { return plus[axis] - minus[axis]; }
};

// Assembles by quadrature of exactness 2N+2. Only the (l, l+-1) blocks are
// formed since Omega_i m_l lies in the span of degrees l-1 and l+1; the
// eigensolve runs on each connected component of the sparsity pattern.
// Throws AccuracyError if the assembled matrices are not symmetric to 1e-10.
FluxMatrices build_flux_matrices(SHBasis const& basis);

}  // namespace pdlra::pn
