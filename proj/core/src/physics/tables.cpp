// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/physics/tables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::physics
{
namespace
{
constexpr double electron_mass = 0.51099895;  // MeV
constexpr double proton_mass = 938.27208816;  // MeV
constexpr double bethe_k = 0.307075;  // 4 pi N_A r_e^2 m_e c^2 [MeV cm^2/mol]
constexpr double water_z_over_a = 10.0 / 18.01528;
constexpr double water_mean_excitation = 75.0e-6;  // MeV

bool log_interval(double e0, double e1, double v0, double v1)
{
    return e0 > 0 && e1 > 0 && v0 > 0 && v1 > 0;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    auto is_sep = [](char c) {
        return c == ' ' || c == '\t' || c == ',' || c == '\r';
    };
    while (pos < line.size())
    {
        while (pos < line.size() && is_sep(line[pos]))
        {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && !is_sep(line[end]))
        {
            ++end;
        }
        if (end > pos)
        {
            fields.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line)
{
    double value = 0;
    auto const* first = field.data();
    auto const* last = field.data() + field.size();
    if (!field.empty() && *first == '+')
    {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    {
        throw ParseError(fmt::format("not a number: '{}'", field), line);
    }
    return value;
}

std::vector<double> log_grid(double lo, double hi, int points)
{
    if (!(lo > 0) || !(hi > lo) || points < 2)
    {
        throw ValidationError("log grid needs 0 < lo < hi and at least 2 points");
    }
    std::vector<double> grid(points);
    double const ratio = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i)
    {
        grid[i] = lo * std::exp(ratio * i);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}
}  // namespace

//---------------------------------------------------------------------------//
EnergyTable::EnergyTable(std::vector<double> energies, std::vector<double> values)
    : energies_(std::move(energies)), values_(std::move(values))
{
    if (energies_.size() != values_.size())
    {
        throw ValidationError("energy and value columns differ in length");
    }
    if (energies_.size() < 2)
    {
        throw ValidationError("table needs at least two rows");
    }
    for (std::size_t i = 1; i < energies_.size(); ++i)
    {
        if (!(energies_[i] > energies_[i - 1]))
        {
            throw ValidationError(fmt::format(
                "energies not strictly increasing at row {} ({} after {})",
                i + 1, energies_[i], energies_[i - 1]));
        }
    }
}

bool EnergyTable::covers(double energy) const
{
    return energy >= energies_.front() && energy <= energies_.back();
}

std::size_t EnergyTable::interval(double energy) const
{
    if (!covers(energy))
    {
        throw DomainError(fmt::format("energy {} MeV outside table coverage [{}, {}]",
                                      energy, energies_.front(), energies_.back()));
    }
    auto it = std::upper_bound(energies_.begin(), energies_.end(), energy);
    std::size_t idx = static_cast<std::size_t>(it - energies_.begin());
    idx = std::clamp<std::size_t>(idx, 1, energies_.size() - 1);
    return idx - 1;
}

double EnergyTable::operator()(double energy) const
{
    std::size_t const i = interval(energy);
    double const e0 = energies_[i];
    double const e1 = energies_[i + 1];
    double const v0 = values_[i];
    double const v1 = values_[i + 1];
    if (energy == e0)
    {
        return v0;
    }
    if (energy == e1)
    {
        return v1;
    }
    if (log_interval(e0, e1, v0, v1))
    {
        double const slope = std::log(v1 / v0) / std::log(e1 / e0);
        return v0 * std::exp(slope * std::log(energy / e0));
    }
    return v0 + (v1 - v0) * (energy - e0) / (e1 - e0);
}

double EnergyTable::derivative(double energy) const
{
    std::size_t const i = interval(energy);
    double const e0 = energies_[i];
    double const e1 = energies_[i + 1];
    double const v0 = values_[i];
    double const v1 = values_[i + 1];
    if (log_interval(e0, e1, v0, v1))
    {
        double const slope = std::log(v1 / v0) / std::log(e1 / e0);
        return slope * (*this)(energy) / energy;
    }
    return (v1 - v0) / (e1 - e0);
}

StoppingPowerTable::StoppingPowerTable(std::vector<double> energies,
                                       std::vector<double> values)
    : EnergyTable(std::move(energies), std::move(values))
{
    for (std::size_t i = 0; i < this->values().size(); ++i)
    {
        if (!(this->values()[i] > 0))
        {
            throw ValidationError(fmt::format(
                "stopping power must be positive (row {}: {})", i + 1, this->values()[i]));
        }
    }
}

StragglingTable::StragglingTable(std::vector<double> energies,
                                 std::vector<double> values)
    : EnergyTable(std::move(energies), std::move(values))
{
    for (std::size_t i = 0; i < this->values().size(); ++i)
    {
        if (this->values()[i] < 0)
        {
            throw ValidationError(fmt::format(
                "straggling coefficient must be nonnegative (row {}: {})", i + 1,
                this->values()[i]));
        }
    }
}

//---------------------------------------------------------------------------//
RawTable read_table(std::istream& in, TableColumns columns)
{
    RawTable table;
    std::string line;
    std::size_t lineno = 0;
    std::size_t const needed = static_cast<std::size_t>(std::max(columns.energy, columns.value)) + 1;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string_view view(line);
        auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || view[first] == '#')
        {
            continue;
        }
        auto fields = split_fields(view);
        if (fields.size() < needed)
        {
            throw ParseError(fmt::format("expected at least {} columns, found {}",
                                         needed, fields.size()),
                             lineno);
        }
        for (auto const& f : fields)
        {
            parse_number(f, lineno);
        }
        double const e = parse_number(fields[columns.energy], lineno);
        double const v = parse_number(fields[columns.value], lineno);
        if (!table.energies.empty() && !(e > table.energies.back()))
        {
            throw ValidationError(fmt::format(
                "energies not strictly increasing at line {} ({} after {})", lineno, e,
                table.energies.back()));
        }
        table.energies.push_back(e);
        table.values.push_back(v);
    }
    if (table.energies.size() < 2)
    {
        throw ParseError("table has fewer than two data rows", lineno);
    }
    return table;
}

StoppingPowerTable load_stopping_power(std::istream& in, TableColumns columns)
{
    auto raw = read_table(in, columns);
    return {std::move(raw.energies), std::move(raw.values)};
}

StoppingPowerTable load_stopping_power(std::string const& path, TableColumns columns)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open stopping power table " + path);
    }
    return load_stopping_power(in, columns);
}

StragglingTable load_straggling(std::istream& in, TableColumns columns)
{
    auto raw = read_table(in, columns);
    return {std::move(raw.energies), std::move(raw.values)};
}

StragglingTable load_straggling(std::string const& path, TableColumns columns)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open straggling table " + path);
    }
    return load_straggling(in, columns);
}

void write_table(std::ostream& out,
                 EnergyTable const& table,
                 std::string const& title,
                 std::string const& value_units)
{
    out << "# " << title << "\n";
    out << "# columns: kinetic energy [MeV], value [" << value_units << "]\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < table.energies().size(); ++i)
    {
        out << table.energies()[i] << " " << table.values()[i] << "\n";
    }
}

//---------------------------------------------------------------------------//
double proton_beta_squared(double kinetic_energy)
{
    double const gamma = 1.0 + kinetic_energy / proton_mass;
    return 1.0 - 1.0 / (gamma * gamma);
}

double proton_momentum(double kinetic_energy)
{
    return std::sqrt(kinetic_energy * (kinetic_energy + 2.0 * proton_mass));
}

double bethe_stopping_power_water(double kinetic_energy)
{
    double const gamma = 1.0 + kinetic_energy / proton_mass;
    double const beta2 = 1.0 - 1.0 / (gamma * gamma);
    double const bg2 = beta2 * gamma * gamma;
    double const ratio = electron_mass / proton_mass;
    double const t_max = 2.0 * electron_mass * bg2 / (1.0 + 2.0 * gamma * ratio + ratio * ratio);
    double const log_term = 0.5
                            * std::log(2.0 * electron_mass * bg2 * t_max
                                       / (water_mean_excitation * water_mean_excitation));
    return bethe_k * water_z_over_a / beta2 * (log_term - beta2);
}

double bohr_straggling_water(double kinetic_energy)
{
    double const beta2 = proton_beta_squared(kinetic_energy);
    return bethe_k * water_z_over_a * electron_mass * (1.0 - 0.5 * beta2) / (1.0 - beta2);
}

StoppingPowerTable water_stopping_power_table(double e_lo, double e_hi, int points)
{
    auto energies = log_grid(e_lo, e_hi, points);
    std::vector<double> values(energies.size());
    std::transform(energies.begin(), energies.end(), values.begin(),
                   bethe_stopping_power_water);
    return {std::move(energies), std::move(values)};
}

StragglingTable water_straggling_table(double e_lo, double e_hi, int points)
{
    auto energies = log_grid(e_lo, e_hi, points);
    std::vector<double> values(energies.size());
    std::transform(energies.begin(), energies.end(), values.begin(), bohr_straggling_water);
    return {std::move(energies), std::move(values)};
}

}  // namespace pdlra::physics
