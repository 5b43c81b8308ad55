// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/raytracer/uncollided.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"
#include "protondlra/physics/quadrature.hpp"
#include "protondlra/raytracer/crossing.hpp"
#include "protondlra/raytracer/traversal.hpp"

namespace pdlra::raytracer
{
namespace
{
constexpr int spectrum_points = 16;
constexpr double dead_fraction = 1e-14;

// Zero groups with a negative average; returns the particle count added
double clip_negative(Vector& c, EnergyMesh const& mesh)
{
    int const nb = mesh.basis_size();
    double added = 0;
    for (int g = 0; g < mesh.groups(); ++g)
    {
        double const avg = c[g * nb];
        if (avg < 0)
        {
            added -= avg * mesh.width(g);
            c.segment(g * nb, nb).setZero();
        }
    }
    return added;
}
}  // namespace

UncollidedFlux::UncollidedFlux(domain::Grid3 grid, EnergyMesh mesh, std::array<double, 3> direction)
    : grid_(grid), mesh_(std::move(mesh)), direction_(direction)
{
    coefficients_ = Matrix::Zero(static_cast<Eigen::Index>(grid_.size()), mesh_.dofs());
    deposit.assign(grid_.size(), 0.0);
    cutoff_deposit.assign(grid_.size(), 0.0);
    scattered_energy.assign(grid_.size(), 0.0);
}

std::vector<double> UncollidedFlux::dose() const
{
    std::vector<double> out(deposit.size());
    for (std::size_t c = 0; c < out.size(); ++c)
    {
        out[c] = deposit[c] + cutoff_deposit[c];
    }
    return out;
}

Vector project_spectrum(domain::BeamSource const& beam, EnergyMesh const& mesh)
{
    domain::TruncatedGaussian spectrum(beam.energy, beam.energy_sigma, mesh.e_cutoff(),
                                       mesh.e_max());
    int const nb = mesh.basis_size();
    Vector c = Vector::Zero(mesh.dofs());
    double p[3];
    if (spectrum.is_delta())
    {
        // Linear in the containing group with the delta's mean energy where
        // that stays nonnegative: the polynomial projection of a delta has
        // negative lobes that the trace would clip
        int const g = mesh.group_of(beam.energy);
        double const h = mesh.width(g);
        c[g * nb] = 1.0 / h;
        if (nb > 1)
        {
            double const slope = 6.0 * (beam.energy - mesh.midpoint(g)) / (h * h);
            c[g * nb + 1] = std::clamp(slope, -1.0 / h, 1.0 / h);
        }
        return c;
    }
    auto const& gl = physics::gauss_legendre(spectrum_points);
    double mass = 0;
    for (int g = 0; g < mesh.groups(); ++g)
    {
        double const h = mesh.width(g);
        for (std::size_t q = 0; q < gl.size(); ++q)
        {
            double const e = mesh.midpoint(g) + 0.5 * h * gl.nodes[q];
            double const f = spectrum.density(e) * 0.5 * h * gl.weights[q];
            legendre_basis(gl.nodes[q], std::span<double>(p, nb));
            for (int k = 0; k < nb; ++k)
            {
                c[g * nb + k] += (2 * k + 1) / h * p[k] * f;
            }
        }
        mass += h * c[g * nb];
    }
    if (!(mass > 0))
    {
        throw ValidationError("beam spectrum has no mass on the energy mesh");
    }
    return c / mass;
}

UncollidedFlux trace_all(domain::BeamSource const& beam,
                         domain::DensityGrid const& density,
                         physics::PhysicsTables const& physics,
                         EnergyMesh const& mesh)
{
    auto const& grid = density.grid();
    auto const direction = beam.direction();
    UncollidedFlux flux(grid, mesh, direction);
    if (mesh.e_max() > physics.e_max() || mesh.e_cutoff() < physics.e_cutoff())
    {
        throw DomainError("energy mesh extends beyond the physics tables");
    }

    CrossingCache cache(physics, mesh);
    Vector const unit = project_spectrum(beam, mesh);
    double const e_cut = mesh.e_cutoff();
    double const inv_volume = 1.0 / grid.cell_volume();
    auto rays = entry_rays(beam, grid);
    flux.rays = rays.size();

    Vector c(mesh.dofs());
    Vector path(mesh.dofs());
    for (auto const& ray : rays)
    {
        c = unit * ray.weight;
        double const start_number = cache.number_functional() * c;
        flux.injected_number += start_number;
        flux.injected_energy += cache.energy_functional() * c;
        if (start_number == 0)
        {
            continue;
        }
        for (auto const& crossing : traverse(grid, ray.origin, direction))
        {
            double const rho = density.rho(crossing.cell);
            auto const& ops = cache.get(rho * crossing.length);
            double const e_before = cache.energy_functional() * c;

            path.noalias() = ops.path_flux * c;
            flux.coefficients().row(crossing.cell) += inv_volume * path.transpose();
            double const scattered = ops.scattered_energy * c;
            double const cut = ops.cutoff_number * c;

            c = ops.remap * c;
            cache.apply_straggling(ops, c);
            flux.clipped_number += clip_negative(c, mesh);
            if (!c.allFinite())
            {
                auto const idx = grid.unravel(crossing.cell);
                throw SolverError(fmt::format("ray step produced non-finite flux in cell ({}, {}, {})",
                                              idx[0], idx[1], idx[2]));
            }
            double const e_after = cache.energy_functional() * c;
            flux.deposit[crossing.cell] += e_before - e_after - scattered - e_cut * cut;
            flux.cutoff_deposit[crossing.cell] += e_cut * cut;
            flux.scattered_energy[crossing.cell] += scattered;
            if (cache.number_functional() * c <= dead_fraction * start_number)
            {
                c.setZero();
                break;
            }
        }
        flux.exit_energy += cache.energy_functional() * c;
        flux.exit_number += cache.number_functional() * c;
    }
    return flux;
}

double group_flux_at(UncollidedFlux const& flux, std::size_t cell, double energy)
{
    auto const& mesh = flux.mesh();
    int const g = mesh.group_of(energy);
    int const nb = mesh.basis_size();
    auto const row = flux.coefficients().row(static_cast<Eigen::Index>(cell));
    double coeffs[3];
    for (int k = 0; k < nb; ++k)
    {
        coeffs[k] = row[g * nb + k];
    }
    return mesh.evaluate(g, std::span<double const>(coeffs, nb), energy);
}

std::vector<std::pair<int, double>> window_weights(EnergyMesh const& mesh,
                                                   physics::PseudoTimeMap const& map,
                                                   double t0,
                                                   double t1,
                                                   std::function<double(double)> const& factor)
{
    double const e_hi = std::min(map.energy_of_time(t0), mesh.e_max());
    double const e_lo = std::max(map.energy_of_time(t1), mesh.e_cutoff());
    int const nb = mesh.basis_size();
    std::vector<std::pair<int, double>> weights;
    auto const& gl = physics::gauss_legendre(6);
    double b = e_hi;
    while (b - e_lo > 1e-13 * mesh.e_max())
    {
        int const g = mesh.group_of(b);
        double const a = std::max(e_lo, mesh.lower(g));
        double sums[3] = {0, 0, 0};
        for (std::size_t q = 0; q < gl.size(); ++q)
        {
            double const e = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q];
            double w = 0.5 * (b - a) * gl.weights[q] / map.stopping_power(e);
            if (factor)
            {
                w *= factor(e);
            }
            double p[3];
            legendre_basis(mesh.local(g, e), std::span<double>(p, nb));
            for (int k = 0; k < nb; ++k)
            {
                sums[k] += w * p[k];
            }
        }
        for (int k = 0; k < nb; ++k)
        {
            weights.emplace_back(g * nb + k, sums[k]);
        }
        b = a;
    }
    return weights;
}

Vector window_integral(UncollidedFlux const& flux,
                       std::vector<std::pair<int, double>> const& weights)
{
    Vector out = Vector::Zero(flux.coefficients().rows());
    for (auto const& [d, w] : weights)
    {
        out += w * flux.coefficients().col(d);
    }
    return out;
}

}  // namespace pdlra::raytracer
