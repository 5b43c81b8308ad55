// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "protondlra/domain/grid.hpp"
#include "protondlra/domain/phantom.hpp"
#include "protondlra/pn/flux_matrices.hpp"
#include "protondlra/types.hpp"

namespace pdlra::pn
{
//---------------------------------------------------------------------------//
/*!
 * Second-order upwind finite-volume difference along one axis.
 *
 * For flow in the + direction the face value at j+1/2 is
 * (3 w_j - w_{j-1}) / 2, falling back to w_0 at the first interior face.
 * The inflow face carries zero (vacuum ghost cell). The - direction mirrors
 * this. The stencil is exact on linear fields for cells with two upwind
 * neighbors.
 */
class UpwindStencil
{
  public:
    explicit UpwindStencil(domain::Grid3 const& grid);

    // out += alpha * D in, with rows of in/out indexed by cell
    void apply(int axis, int sign, Matrix const& in, Matrix& out, double alpha) const;

    domain::Grid3 const& grid() const { return grid_; }

  private:
    domain::Grid3 grid_;
    std::array<std::vector<std::size_t>, 3> line_starts_;
    std::array<std::size_t, 3> strides_;
};

// out -= sum_i (D_i^+ w A_i^+ + D_i^- w A_i^-) for cell-by-moment w.
void add_advection(UpwindStencil const& stencil,
                   FluxMatrices const& flux,
                   Matrix const& w,
                   Matrix& out);

//! -A . grad(u / rho) with zero-inflow boundaries
Matrix apply_upwind_divergence(Matrix const& u,
                               domain::DensityGrid const& density,
                               FluxMatrices const& flux);

}  // namespace pdlra::pn
