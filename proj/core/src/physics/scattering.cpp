// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/physics/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "protondlra/errors.hpp"
#include "protondlra/physics/quadrature.hpp"
#include "protondlra/physics/tables.hpp"
#include "protondlra/types.hpp"

namespace pdlra::physics
{
namespace
{
constexpr double electron_mass = 0.51099895;  // MeV
constexpr double classical_electron_radius = 2.8179403262e-13;  // cm
constexpr double avogadro = 6.02214076e23;
constexpr double water_molar_mass = 18.01528;  // g/mol
constexpr double hbar_c = 1.973269804e-11;  // MeV cm
constexpr double bohr_radius = 5.29177210903e-9;  // cm
constexpr double fine_structure = 7.2973525693e-3;

struct Species
{
    int z;
    double count;  // atoms per molecule
};
constexpr Species water_species[] = {{1, 2.0}, {8, 1.0}};

// Squared Rutherford amplitude (r_e m_e c^2 / (p beta c))^2 [cm^2]
double rutherford_amplitude(double energy)
{
    double const pc = proton_momentum(energy);
    double const beta = std::sqrt(proton_beta_squared(energy));
    double const a = classical_electron_radius * electron_mass / (pc * beta);
    return a * a;
}

struct Accumulated
{
    double total = 0;
    std::vector<double> removal;
};

Accumulated integrate_kernel(ScatteringModel const& model, double energy, int degree, int points)
{
    Accumulated acc;
    acc.removal.assign(degree + 1, 0.0);
    std::vector<double> one_minus_p(degree + 1);

    std::vector<double> edges{0.0};
    for (double b : model.breakpoints(energy))
    {
        if (b > 0.0 && b < 2.0)
        {
            edges.push_back(b);
        }
    }
    edges.push_back(2.0);
    std::sort(edges.begin(), edges.end());

    double const width = model.forward_peak_width(energy);
    auto const& rule = gauss_legendre(points);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
    {
        double const d0 = edges[p];
        double const d1 = edges[p + 1];
        // With a forward peak, integrate in w = ln(delta + width) so that
        // the 1/(delta + width)^2 shape becomes smooth.
        double const a = width > 0 ? std::log(d0 + width) : d0;
        double const b = width > 0 ? std::log(d1 + width) : d1;
        double const half = 0.5 * (b - a);
        double const mid = 0.5 * (b + a);
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            double const x = mid + half * rule.nodes[i];
            double delta = x;
            double jac = 1.0;
            if (width > 0)
            {
                jac = std::exp(x);
                delta = std::clamp(jac - width, 0.0, 2.0);
            }
            double const f = model.evaluate(energy, delta) * jac * half * rule.weights[i];
            acc.total += f;
            one_minus_legendre(delta, one_minus_p);
            for (int l = 0; l <= degree; ++l)
            {
                acc.removal[l] += one_minus_p[l] * f;
            }
        }
    }
    acc.total *= 2 * pi;
    for (auto& r : acc.removal)
    {
        r *= 2 * pi;
    }
    return acc;
}

bool close(double a, double b, double rel_tol)
{
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

//---------------------------------------------------------------------------//
double IsotropicScattering::evaluate(double, double) const
{
    return total_ / four_pi;
}

//---------------------------------------------------------------------------//
double ScreenedRutherfordWater::screening(double energy, int z)
{
    double const pc = proton_momentum(energy);
    double const beta2 = proton_beta_squared(energy);
    double const radius = 0.885 * bohr_radius * std::pow(static_cast<double>(z), -1.0 / 3.0);
    double const ratio = hbar_c / (pc * radius);
    double const coulomb = fine_structure * z;
    return 0.25 * ratio * ratio * (1.13 + 3.76 * coulomb * coulomb / beta2);
}

double ScreenedRutherfordWater::evaluate(double energy, double one_minus_mu) const
{
    double const amp = rutherford_amplitude(energy) * avogadro / water_molar_mass;
    double sum = 0;
    for (auto const& s : water_species)
    {
        double const eta = screening(energy, s.z);
        double const denom = one_minus_mu + 2.0 * eta;
        sum += s.count * s.z * (s.z + 1.0) / (denom * denom);
    }
    return amp * sum;
}

double ScreenedRutherfordWater::forward_peak_width(double energy) const
{
    double width = 2.0 * screening(energy, water_species[0].z);
    for (auto const& s : water_species)
    {
        width = std::min(width, 2.0 * screening(energy, s.z));
    }
    return width;
}

double ScreenedRutherfordWater::total(double energy) const
{
    double const amp = rutherford_amplitude(energy) * avogadro / water_molar_mass;
    double sum = 0;
    for (auto const& s : water_species)
    {
        double const eta = screening(energy, s.z);
        sum += s.count * s.z * (s.z + 1.0) * pi / (eta * (1.0 + eta));
    }
    return amp * sum;
}

//---------------------------------------------------------------------------//
TabulatedKernel::TabulatedKernel(std::vector<double> energies,
                                 std::vector<double> mu_grid,
                                 std::vector<std::vector<double>> values)
    : energies_(std::move(energies)), mu_(std::move(mu_grid)), values_(std::move(values))
{
    if (energies_.empty() || mu_.size() < 2 || values_.size() != energies_.size())
    {
        throw ValidationError("tabulated kernel needs energies, a mu grid and one row per energy");
    }
    if (mu_.front() != -1.0 || mu_.back() != 1.0)
    {
        throw ValidationError("tabulated kernel mu grid must span [-1, 1]");
    }
    for (std::size_t i = 1; i < mu_.size(); ++i)
    {
        if (!(mu_[i] > mu_[i - 1]))
        {
            throw ValidationError("tabulated kernel mu grid must be strictly increasing");
        }
    }
    for (std::size_t i = 1; i < energies_.size(); ++i)
    {
        if (!(energies_[i] > energies_[i - 1]))
        {
            throw ValidationError("tabulated kernel energies must be strictly increasing");
        }
    }
    for (auto const& row : values_)
    {
        if (row.size() != mu_.size())
        {
            throw ValidationError("tabulated kernel row length differs from mu grid");
        }
        for (double v : row)
        {
            if (!(v >= 0))
            {
                throw ValidationError("tabulated kernel values must be nonnegative");
            }
        }
    }
}

double TabulatedKernel::evaluate(double energy, double one_minus_mu) const
{
    if (energy < energies_.front() || energy > energies_.back())
    {
        throw DomainError(fmt::format("energy {} MeV outside tabulated kernel", energy));
    }
    double const mu = 1.0 - one_minus_mu;
    auto mu_it = std::upper_bound(mu_.begin(), mu_.end(), mu);
    std::size_t j = std::clamp<std::size_t>(mu_it - mu_.begin(), 1, mu_.size() - 1) - 1;
    double const fm = (mu - mu_[j]) / (mu_[j + 1] - mu_[j]);
    auto row_value = [&](std::size_t i) {
        return values_[i][j] + fm * (values_[i][j + 1] - values_[i][j]);
    };
    if (energies_.size() == 1)
    {
        return row_value(0);
    }
    auto e_it = std::upper_bound(energies_.begin(), energies_.end(), energy);
    std::size_t i = std::clamp<std::size_t>(e_it - energies_.begin(), 1, energies_.size() - 1) - 1;
    double const fe = (energy - energies_[i]) / (energies_[i + 1] - energies_[i]);
    return row_value(i) + fe * (row_value(i + 1) - row_value(i));
}

std::vector<double> TabulatedKernel::breakpoints(double) const
{
    std::vector<double> out;
    for (std::size_t j = 1; j + 1 < mu_.size(); ++j)
    {
        out.push_back(1.0 - mu_[j]);
    }
    return out;
}

std::unique_ptr<TabulatedKernel> load_tabulated_kernel(std::istream& in)
{
    std::vector<double> energies;
    std::vector<double> mu_grid;
    std::vector<std::vector<double>> values;
    std::vector<double> block_mu;
    std::string line;
    std::size_t lineno = 0;
    auto close_block = [&] {
        if (block_mu.empty())
        {
            return;
        }
        if (mu_grid.empty())
        {
            mu_grid = block_mu;
        }
        else if (block_mu != mu_grid)
        {
            throw ParseError("mu grid differs between energy blocks", lineno);
        }
        block_mu.clear();
    };
    while (std::getline(in, line))
    {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
        {
            continue;
        }
        for (auto& c : line)
        {
            if (c == ',')
            {
                c = ' ';
            }
        }
        std::istringstream row(line);
        double e = 0;
        double mu = 0;
        double v = 0;
        if (!(row >> e >> mu >> v))
        {
            throw ParseError("expected three numeric columns (E, mu, value)", lineno);
        }
        if (energies.empty() || e != energies.back())
        {
            close_block();
            energies.push_back(e);
            values.emplace_back();
        }
        block_mu.push_back(mu);
        values.back().push_back(v);
    }
    close_block();
    return std::make_unique<TabulatedKernel>(std::move(energies), std::move(mu_grid),
                                             std::move(values));
}

//---------------------------------------------------------------------------//
ScatterMoments scattering_moments(ScatteringModel const& model,
                                  double energy,
                                  int degree,
                                  double rel_tol)
{
    if (degree < 0)
    {
        throw ValidationError("scattering moment degree must be nonnegative");
    }
    constexpr int max_points = 1 << 14;
    int points = std::max(4 * degree, 16);
    auto coarse = integrate_kernel(model, energy, degree, points);
    while (points < max_points)
    {
        auto fine = integrate_kernel(model, energy, degree, 2 * points);
        bool converged = close(coarse.total, fine.total, rel_tol);
        for (int l = 0; l <= degree && converged; ++l)
        {
            converged = close(coarse.removal[l], fine.removal[l], rel_tol);
        }
        points *= 2;
        coarse = std::move(fine);
        if (converged)
        {
            ScatterMoments result;
            result.total = coarse.total;
            result.removal = coarse.removal;
            result.moments.resize(degree + 1);
            for (int l = 0; l <= degree; ++l)
            {
                result.moments[l] = coarse.total - coarse.removal[l];
            }
            result.quadrature_points = points;
            return result;
        }
    }
    throw AccuracyError(fmt::format(
        "scattering moments of '{}' at {} MeV did not converge to {} with {} points",
        model.name(), energy, rel_tol, max_points));
}

//---------------------------------------------------------------------------//
ScatterTable::ScatterTable(ScatteringModel const& model,
                           double e_lo,
                           double e_hi,
                           int max_degree,
                           int forward_delta_order,
                           int energy_points)
    : max_degree_(max_degree), delta_order_(forward_delta_order), model_name_(model.name())
{
    if (!(e_lo > 0) || !(e_hi > e_lo) || energy_points < 2)
    {
        throw ValidationError("scatter table needs 0 < e_lo < e_hi and two or more energies");
    }
    if (max_degree < 0 || forward_delta_order < 0)
    {
        throw ValidationError("scatter table degrees must be nonnegative");
    }
    int const degree = std::max(max_degree, forward_delta_order);
    energies_.resize(energy_points);
    for (int i = 0; i < energy_points; ++i)
    {
        energies_[i] = e_lo * std::exp(std::log(e_hi / e_lo) * i / (energy_points - 1));
    }
    energies_.front() = e_lo;
    energies_.back() = e_hi;

    raw_total_.resize(energy_points);
    removal_.assign(degree + 1, std::vector<double>(energy_points));
    for (int i = 0; i < energy_points; ++i)
    {
        auto m = scattering_moments(model, energies_[i], degree);
        raw_total_[i] = m.total;
        for (int l = 0; l <= degree; ++l)
        {
            removal_[l][i] = m.removal[l];
        }
    }
}

double ScatterTable::interpolate(std::vector<double> const& values, double energy) const
{
    if (energy < energies_.front() || energy > energies_.back())
    {
        throw DomainError(fmt::format("energy {} MeV outside scatter table [{}, {}]", energy,
                                      energies_.front(), energies_.back()));
    }
    auto it = std::upper_bound(energies_.begin(), energies_.end(), energy);
    std::size_t i = std::clamp<std::size_t>(it - energies_.begin(), 1, energies_.size() - 1) - 1;
    double const e0 = energies_[i];
    double const e1 = energies_[i + 1];
    double const v0 = values[i];
    double const v1 = values[i + 1];
    if (v0 > 0 && v1 > 0)
    {
        return v0 * std::exp(std::log(v1 / v0) * std::log(energy / e0) / std::log(e1 / e0));
    }
    return v0 + (v1 - v0) * (energy - e0) / (e1 - e0);
}

double ScatterTable::total(double energy) const
{
    if (delta_order_ > 0)
    {
        return interpolate(removal_[delta_order_], energy);
    }
    return interpolate(raw_total_, energy);
}

double ScatterTable::removal(double energy, int degree) const
{
    if (degree < 0 || degree >= static_cast<int>(removal_.size()))
    {
        throw DomainError(fmt::format("scatter table has no degree {}", degree));
    }
    if (degree == 0)
    {
        return 0.0;
    }
    return interpolate(removal_[degree], energy);
}

double ScatterTable::moment(double energy, int degree) const
{
    return std::max(0.0, total(energy) - removal(energy, degree));
}

}  // namespace pdlra::physics
