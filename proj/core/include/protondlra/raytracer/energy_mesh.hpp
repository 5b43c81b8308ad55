// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace pdlra::raytracer
{
//---------------------------------------------------------------------------//
/*!
 * Energy groups with a Legendre polynomial basis of order p in each group.
 *
 * Group 0 is the highest. Group g covers [edge(g+1), edge(g)] and a function
 * on it is sum_k c_k P_k(xi) with xi = (2E - lo - hi) / (hi - lo).
 */
class EnergyMesh
{
  public:
    //! Uniform groups between e_cutoff and e_max
    EnergyMesh(double e_max, double e_cutoff, int groups, int order = 2);
    //! Explicit descending edges
    EnergyMesh(std::vector<double> edges, int order);

    int groups() const { return static_cast<int>(edges_.size()) - 1; }
    int order() const { return order_; }
    int basis_size() const { return order_ + 1; }
    int dofs() const { return groups() * basis_size(); }

    std::vector<double> const& edges() const { return edges_; }
    double e_max() const { return edges_.front(); }
    double e_cutoff() const { return edges_.back(); }
    double lower(int g) const { return edges_[g + 1]; }
    double upper(int g) const { return edges_[g]; }
    double width(int g) const { return edges_[g] - edges_[g + 1]; }
    double midpoint(int g) const { return 0.5 * (edges_[g] + edges_[g + 1]); }
    double local(int g, double energy) const
    {
        return (2.0 * energy - edges_[g] - edges_[g + 1]) / width(g);
    }

    bool covers(double energy) const { return energy >= e_cutoff() && energy <= e_max(); }
    // Group with lo < E <= hi; E_cutoff maps to the lowest group. Throws
    // DomainError outside coverage.
    int group_of(double energy) const;

    //! Evaluate sum_k c_k P_k at E within group g
    double evaluate(int g, std::span<double const> coefficients, double energy) const;

  private:
    std::vector<double> edges_;
    int order_;
};

//! Legendre values P_0..P_{n-1}(x) for small n
void legendre_basis(double x, std::span<double> out);

}  // namespace pdlra::raytracer
