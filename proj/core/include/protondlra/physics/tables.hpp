// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <string>
#include <vector>

namespace pdlra::physics
{
//---------------------------------------------------------------------------//
/*!
 * Energy-tabulated positive material coefficient with piecewise log-log
 * interpolation.
 *
 * Intervals where either endpoint energy or value is not strictly positive
 * fall back to linear interpolation, which keeps tables that start at E = 0
 * or contain zero entries usable.
 */
class EnergyTable
{
  public:
    EnergyTable() = default;
    EnergyTable(std::vector<double> energies, std::vector<double> values);

    double operator()(double energy) const;
    // d value / d E, taken from the interpolant of the containing interval
    double derivative(double energy) const;

    double min_energy() const { return energies_.front(); }
    double max_energy() const { return energies_.back(); }
    bool covers(double energy) const;

    std::vector<double> const& energies() const { return energies_; }
    std::vector<double> const& values() const { return values_; }

    // Index i such that energies[i] <= E <= energies[i+1]
    std::size_t interval(double energy) const;

  private:
    std::vector<double> energies_;
    std::vector<double> values_;
};

//! Stopping power in water [MeV cm^2 / g]. All values strictly positive.
class StoppingPowerTable : public EnergyTable
{
  public:
    StoppingPowerTable() = default;
    StoppingPowerTable(std::vector<double> energies, std::vector<double> values);
};

//! Energy straggling coefficient in water [MeV^2 cm^2 / g]. Values >= 0.
class StragglingTable : public EnergyTable
{
  public:
    StragglingTable() = default;
    StragglingTable(std::vector<double> energies, std::vector<double> values);
};

//! Columns to read from a multi-column text table (0-based).
struct TableColumns
{
    int energy = 0;
    int value = 1;
};

// Parse a whitespace- or comma-separated numeric table. Lines starting with
// '#' and blank lines are skipped. Energies must be strictly increasing.
struct RawTable
{
    std::vector<double> energies;
    std::vector<double> values;
};
RawTable read_table(std::istream& in, TableColumns columns = {});

StoppingPowerTable load_stopping_power(std::istream& in, TableColumns columns = {});
StoppingPowerTable load_stopping_power(std::string const& path, TableColumns columns = {});
StragglingTable load_straggling(std::istream& in, TableColumns columns = {});
StragglingTable load_straggling(std::string const& path, TableColumns columns = {});

// Write a two-column table with a units header comment.
void write_table(std::ostream& out,
                 EnergyTable const& table,
                 std::string const& title,
                 std::string const& value_units);

//---------------------------------------------------------------------------//
// Built-in water models
//---------------------------------------------------------------------------//

//! Proton kinematics helpers
double proton_beta_squared(double kinetic_energy);
double proton_momentum(double kinetic_energy);  // p c [MeV]

// Electronic stopping power of water from the Bethe formula with mean
// excitation energy I = 75 eV (no shell or density-effect corrections).
double bethe_stopping_power_water(double kinetic_energy);

// Bohr energy-straggling variance rate in water with the relativistic
// (1 - beta^2/2) / (1 - beta^2) factor.
double bohr_straggling_water(double kinetic_energy);

// Log-spaced tables of the built-in models on [e_lo, e_hi].
StoppingPowerTable water_stopping_power_table(double e_lo, double e_hi, int points = 400);
StragglingTable water_straggling_table(double e_lo, double e_hi, int points = 400);

}  // namespace pdlra::physics
