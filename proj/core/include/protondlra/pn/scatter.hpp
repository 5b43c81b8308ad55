// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "protondlra/physics/scattering.hpp"
#include "protondlra/pn/basis.hpp"
#include "protondlra/types.hpp"

namespace pdlra::pn
{
//---------------------------------------------------------------------------//
/*!
 * Diagonal scattering operator over the (l, m) moments.
 *
 * Entry k of each diagonal uses the Legendre moment of degree l(k). The
 * removal rate Sigma_t - G_ll is taken directly from the table, so the
 * l = 0 entry is exactly zero.
 */
class ScatterOperator
{
  public:
    ScatterOperator(std::shared_ptr<physics::ScatterTable const> table, SHBasis const& basis);

    int size() const { return static_cast<int>(degrees_.size()); }
    double total(double energy) const { return table_->total(energy); }
    //! Sigma_t - G_ll per moment (>= 0)
    Vector removal(double energy) const;
    //! G_ll per moment
    Vector in_scatter(double energy) const;

    physics::ScatterTable const& table() const { return *table_; }

  private:
    std::shared_ptr<physics::ScatterTable const> table_;
    std::vector<int> degrees_;
};

// (-Sigma_t + G) u: pointwise in space, diagonal in the moment index. The
// transformed collided equation carries no density factor on this term.
Matrix apply_scatter(Matrix const& u, ScatterOperator const& op, double energy);

//! Modal image m(Omega_in) of a unidirectional beam
Vector beam_moments(SHBasis const& basis, Direction const& direction);

}  // namespace pdlra::pn
