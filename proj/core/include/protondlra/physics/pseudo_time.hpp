// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "protondlra/physics/tables.hpp"

namespace pdlra::physics
{
//---------------------------------------------------------------------------//
/*!
 * Bijection between kinetic energy and the pseudo-time
 * t(E) = int_E^{E_max} dE' / S(E'), in g/cm^2.
 *
 * The integral is evaluated by composite Gauss-Legendre quadrature on a mesh
 * that contains every stopping-power table node (so each panel is a single
 * smooth interpolation segment) refined to 1% log-spacing. The inverse is a
 * bracketed Newton iteration on the forward map.
 */
class PseudoTimeMap
{
  public:
    PseudoTimeMap(StoppingPowerTable table, double e_cutoff, double e_max);

    double e_max() const { return e_max_; }
    double e_cutoff() const { return e_cutoff_; }
    //! t(E_cutoff), the end of the pseudo-time interval
    double final_time() const { return times_.front(); }

    double time_of_energy(double energy) const;
    double energy_of_time(double time) const;

    //! Residual CSDA range from E down to E_cutoff [g/cm^2]
    double residual_range(double energy) const
    {
        return final_time() - time_of_energy(energy);
    }

    double stopping_power(double energy) const { return table_(energy); }
    StoppingPowerTable const& table() const { return table_; }

  private:
    StoppingPowerTable table_;
    double e_cutoff_;
    double e_max_;
    std::vector<double> nodes_;  // ascending energies
    std::vector<double> times_;  // t at nodes (descending)

    double panel_integral(double lo, double hi) const;
    void check_energy(double energy) const;
};

}  // namespace pdlra::physics
