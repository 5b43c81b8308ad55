// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/raytracer/crossing.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"
#include "protondlra/physics/quadrature.hpp"

namespace pdlra::raytracer
{
namespace
{
constexpr int outer_points = 8;
constexpr int inner_points = 6;
constexpr double max_attenuation = 50.0;
constexpr double penalty = 18.0;  // 2 (p + 1)^2 for p = 2
constexpr std::size_t max_cached = 256;

double integrand(physics::PhysicsTables const& physics, double e)
{
    return physics.total(e) / physics.stopping_power(e);
}
}  // namespace

//---------------------------------------------------------------------------//
AttenuationIntegral::AttenuationIntegral(physics::PhysicsTables const& physics)
{
    if (!physics.scatter)
    {
        return;
    }
    double const lo = physics.e_cutoff();
    double const hi = physics.e_max();
    int const panels = lo > 0 ? std::max(8, static_cast<int>(std::ceil(std::log(hi / lo) / 0.01)))
                              : 2000;
    nodes_.resize(panels + 1);
    for (int i = 0; i <= panels; ++i)
    {
        nodes_[i] = lo > 0 ? lo * std::exp(std::log(hi / lo) * i / panels)
                           : lo + (hi - lo) * i / panels;
    }
    nodes_.front() = lo;
    nodes_.back() = hi;
    values_.assign(nodes_.size(), 0.0);
    slopes_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
    {
        slopes_[i] = integrand(physics, nodes_[i]);
        if (i > 0)
        {
            values_[i] = values_[i - 1]
                         + physics::integrate([&](double e) { return integrand(physics, e); },
                                              nodes_[i - 1], nodes_[i], 8);
        }
    }
    zero_ = values_.back() == 0.0;
}

double AttenuationIntegral::operator()(double energy) const
{
    if (zero_)
    {
        return 0.0;
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), energy);
    std::size_t i = std::clamp<std::size_t>(it - nodes_.begin(), 1, nodes_.size() - 1) - 1;
    double const h = nodes_[i + 1] - nodes_[i];
    double const x = std::clamp((energy - nodes_[i]) / h, 0.0, 1.0);
    // Cubic Hermite with exact end derivatives
    double const x2 = x * x;
    double const x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * values_[i] + (x3 - 2 * x2 + x) * h * slopes_[i]
           + (-2 * x3 + 3 * x2) * values_[i + 1] + (x3 - x2) * h * slopes_[i + 1];
}

//---------------------------------------------------------------------------//
SparseMatrix straggling_matrix(EnergyMesh const& mesh, physics::StragglingTable const& table)
{
    int const nb = mesh.basis_size();
    int const ng = mesh.groups();
    std::vector<Eigen::Triplet<double>> triplets;
    auto dof = [nb](int g, int k) { return g * nb + k; };
    auto const& gl = physics::gauss_legendre(nb + 3);

    // Volume terms: int 1/2 (T N)' v' dE
    for (int g = 0; g < ng; ++g)
    {
        double const h = mesh.width(g);
        double const jac = 2.0 / h;
        for (std::size_t q = 0; q < gl.size(); ++q)
        {
            double const xi = gl.nodes[q];
            double const e = mesh.midpoint(g) + 0.5 * h * xi;
            double const w = gl.weights[q] * 0.5 * h;
            double const t = table(e);
            double const dt = table.derivative(e);
            double p[3];
            double dp[3] = {0.0, jac, 3.0 * xi * jac};
            legendre_basis(xi, std::span<double>(p, nb));
            for (int i = 0; i < nb; ++i)
            {
                for (int j = 0; j < nb; ++j)
                {
                    double const flux = 0.5 * (dt * p[j] + t * dp[j]);
                    triplets.emplace_back(dof(g, i), dof(g, j), w * flux * dp[i]);
                }
            }
        }
    }

    // Interior faces between the lower group (left, xi = +1) and the upper
    // group (right, xi = -1); jump [f] = f_left - f_right
    for (int g = 0; g + 1 < ng; ++g)
    {
        int const left = g + 1;
        int const right = g;
        double const e = mesh.lower(g);
        double const t = table(e);
        double const dt = table.derivative(e);
        double const hl = mesh.width(left);
        double const hr = mesh.width(right);
        double const h = std::min(hl, hr);
        // Trace values and derivatives of each basis function on both sides
        double vl[3] = {1.0, 1.0, 1.0};
        double dl[3] = {0.0, 2.0 / hl, 6.0 / hl};
        double vr[3] = {1.0, -1.0, 1.0};
        double dr[3] = {0.0, 2.0 / hr, -6.0 / hr};

        struct Side
        {
            int group;
            double const* value;
            double const* deriv;
            double sign;  // contribution of this side to the jump
        };
        Side const sides[2] = {{left, vl, dl, 1.0}, {right, vr, dr, -1.0}};
        for (auto const& test : sides)
        {
            for (auto const& trial : sides)
            {
                for (int i = 0; i < nb; ++i)
                {
                    for (int j = 0; j < nb; ++j)
                    {
                        double const jump_v = test.sign * test.value[i];
                        double const jump_n = trial.sign * trial.value[j];
                        double const avg_flux
                            = 0.5 * 0.5 * (dt * trial.value[j] + t * trial.deriv[j]);
                        double const avg_test = 0.5 * 0.5 * t * test.deriv[i];
                        double const value = -avg_flux * jump_v - avg_test * jump_n
                                             + penalty / h * 0.5 * t * jump_n * jump_v;
                        triplets.emplace_back(dof(test.group, i), dof(trial.group, j), value);
                    }
                }
            }
        }
    }
    SparseMatrix a(mesh.dofs(), mesh.dofs());
    a.setFromTriplets(triplets.begin(), triplets.end());
    return a;
}

//---------------------------------------------------------------------------//
CrossingCache::CrossingCache(physics::PhysicsTables const& physics, EnergyMesh const& mesh)
    : physics_(physics), mesh_(mesh), lambda_(physics)
{
    physics_.validate();
    int const nb = mesh_.basis_size();
    number_ = RowVector::Zero(mesh_.dofs());
    energy_ = RowVector::Zero(mesh_.dofs());
    mass_.resize(mesh_.dofs());
    for (int g = 0; g < mesh_.groups(); ++g)
    {
        double const h = mesh_.width(g);
        number_[g * nb] = h;
        energy_[g * nb] = h * mesh_.midpoint(g);
        if (nb > 1)
        {
            energy_[g * nb + 1] = h * h / 6.0;
        }
        for (int k = 0; k < nb; ++k)
        {
            mass_[g * nb + k] = h / (2.0 * k + 1.0);
        }
    }
    if (physics_.straggling)
    {
        has_straggling_ = true;
        straggling_ = raytracer::straggling_matrix(mesh_, *physics_.straggling);
    }
}

CrossingOperators const& CrossingCache::get(double mass_length)
{
    auto it = cache_.find(mass_length);
    if (it != cache_.end())
    {
        return *it->second;
    }
    if (cache_.size() >= max_cached)
    {
        cache_.clear();
    }
    auto [pos, inserted] = cache_.emplace(mass_length, build(mass_length));
    return *pos->second;
}

void CrossingCache::apply_straggling(CrossingOperators const& ops, Vector& c) const
{
    if (!ops.straggle)
    {
        return;
    }
    Vector const rhs = mass_.cwiseProduct(c);
    c = ops.straggle->solve(rhs);
}

std::unique_ptr<CrossingOperators> CrossingCache::build(double length) const
{
    if (!(length >= 0) || !std::isfinite(length))
    {
        throw SolverError(fmt::format("invalid crossing mass length {}", length));
    }
    auto const& map = *physics_.csd;
    int const nb = mesh_.basis_size();
    int const n = mesh_.dofs();
    double const e_cut = mesh_.e_cutoff();
    double const e_max = mesh_.e_max();
    double const t_final = map.final_time();
    auto dof = [nb](int g, int k) { return g * nb + k; };
    auto time_of = [&](double e) { return map.time_of_energy(std::clamp(e, e_cut, e_max)); };

    auto ops = std::make_unique<CrossingOperators>();
    ops->mass_length = length;
    ops->scattered_number = RowVector::Zero(n);
    ops->scattered_energy = RowVector::Zero(n);
    ops->cutoff_number = RowVector::Zero(n);

    // Breakpoints in the outgoing energy: group edges and their images
    std::vector<double> breaks(mesh_.edges().begin(), mesh_.edges().end());
    for (double edge : mesh_.edges())
    {
        double const t = time_of(edge) + length;
        if (t < t_final)
        {
            breaks.push_back(map.energy_of_time(t));
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [&](double a, double b) { return b - a <= 1e-12 * e_max; }),
                 breaks.end());

    // Integrate over the pieces of [a, b] cut by group edges
    auto for_each_piece = [&](double a, double b, auto&& body) {
        while (b - a > 1e-12 * e_max)
        {
            int const g = mesh_.group_of(std::min(b, e_max));
            double const lo = std::max(a, mesh_.lower(g));
            body(g, lo, b);
            b = lo;
        }
    };

    // Quadrature of f(E) exp(-(Lambda(E) - lam_ref)) over [lo, hi] with
    // Lambda(lo) >= lam_ref. Optically thick pieces are cut where the
    // attenuation drops below exp(-max_attenuation) and split into panels
    // of unit optical depth.
    auto attenuated_rule = [&](double lo, double hi, double lam_ref,
                               physics::GaussLegendre const& rule, auto&& body) {
        double const lam_lo = lambda_(lo);
        if (lam_lo - lam_ref > max_attenuation)
        {
            return;
        }
        double depth = lambda_(hi) - lam_lo;
        if (lambda_(hi) - lam_ref > max_attenuation)
        {
            double a = lo;
            double b = hi;
            for (int it = 0; it < 80 && b - a > 1e-14 * hi; ++it)
            {
                double const mid = 0.5 * (a + b);
                (lambda_(mid) - lam_ref > max_attenuation ? b : a) = mid;
            }
            hi = b;
            depth = lambda_(hi) - lam_lo;
        }
        int const panels = std::clamp(static_cast<int>(std::ceil(depth)), 1,
                                      static_cast<int>(max_attenuation) + 1);
        double const width = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p)
        {
            double const a = lo + p * width;
            for (std::size_t r = 0; r < rule.nodes.size(); ++r)
            {
                double const e = a + 0.5 * width * (1.0 + rule.nodes[r]);
                body(e, 0.5 * width * rule.weights[r] * std::exp(-(lambda_(e) - lam_ref)));
            }
        }
    };

    std::vector<Eigen::Triplet<double>> remap;
    std::vector<Eigen::Triplet<double>> path;
    auto const& outer = physics::gauss_legendre(outer_points);
    auto const& inner = physics::gauss_legendre(inner_points);
    Vector inner_sum(n);
    std::vector<int> touched;

    for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
    {
        double const a0 = breaks[b];
        double const a1 = breaks[b + 1];
        if (a1 - a0 <= 1e-12 * e_max)
        {
            continue;
        }
        int const gt = mesh_.group_of(0.5 * (a0 + a1));
        double const ht = mesh_.width(gt);
        for (std::size_t q = 0; q < outer.size(); ++q)
        {
            double const e_out = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * outer.nodes[q];
            double const w_out = 0.5 * (a1 - a0) * outer.weights[q];
            double pt[3];
            legendre_basis(mesh_.local(gt, e_out), std::span<double>(pt, nb));
            double const lam_out = lambda_(e_out);
            double const s_out = physics_.stopping_power(e_out);

            double const t_pre = time_of(e_out) - length;
            double const e_top = t_pre > 0 ? map.energy_of_time(t_pre) : e_max;
            if (t_pre > 0)
            {
                int const gs = mesh_.group_of(e_top);
                double ps[3];
                legendre_basis(mesh_.local(gs, e_top), std::span<double>(ps, nb));
                double const f = physics_.stopping_power(e_top) / s_out
                                 * std::exp(-(lambda_(e_top) - lam_out));
                for (int kt = 0; kt < nb; ++kt)
                {
                    double const proj = w_out * (2 * kt + 1) / ht * pt[kt] * f;
                    for (int ks = 0; ks < nb; ++ks)
                    {
                        remap.emplace_back(dof(gt, kt), dof(gs, ks), proj * ps[ks]);
                    }
                }
            }

            // Path integral: int_{e_out}^{e_top} N(E_p) exp(-dLambda) dE_p
            touched.clear();
            for_each_piece(e_out, e_top, [&](int g, double lo, double hi) {
                for (int k = 0; k < nb; ++k)
                {
                    inner_sum[dof(g, k)] = 0.0;
                    touched.push_back(dof(g, k));
                }
                attenuated_rule(lo, hi, lam_out, inner, [&](double e, double w) {
                    double ps[3];
                    legendre_basis(mesh_.local(g, e), std::span<double>(ps, nb));
                    for (int k = 0; k < nb; ++k)
                    {
                        inner_sum[dof(g, k)] += w * ps[k];
                    }
                });
            });
            double const sigma = physics_.total(e_out);
            for (int d : touched)
            {
                double const value = inner_sum[d];
                for (int kt = 0; kt < nb; ++kt)
                {
                    path.emplace_back(dof(gt, kt), d, w_out * (2 * kt + 1) / ht * pt[kt] * value);
                }
                ops->scattered_number[d] += w_out * sigma / s_out * value;
                ops->scattered_energy[d] += w_out * sigma * e_out / s_out * value;
            }
        }
    }

    // Source energies that reach E_cutoff within the crossing
    double const t_cut = t_final - length;
    double const e_reach = t_cut > 0 ? map.energy_of_time(t_cut) : e_max;
    double const lam_cut = lambda_(e_cut);
    for_each_piece(e_cut, e_reach, [&](int g, double lo, double hi) {
        attenuated_rule(lo, hi, lam_cut, outer, [&](double e, double w) {
            double ps[3];
            legendre_basis(mesh_.local(g, e), std::span<double>(ps, nb));
            for (int k = 0; k < nb; ++k)
            {
                ops->cutoff_number[dof(g, k)] += w * ps[k];
            }
        });
    });

    ops->remap.resize(n, n);
    ops->remap.setFromTriplets(remap.begin(), remap.end());
    ops->path_flux.resize(n, n);
    ops->path_flux.setFromTriplets(path.begin(), path.end());

    if (has_straggling_ && length > 0)
    {
        SparseMatrix system = straggling_ * length;
        for (int i = 0; i < n; ++i)
        {
            system.coeffRef(i, i) += mass_[i];
        }
        system.makeCompressed();
        ops->straggle = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
        ops->straggle->compute(system);
        if (ops->straggle->info() != Eigen::Success)
        {
            throw SolverError(fmt::format("straggling system singular for mass length {}",
                                          length));
        }
    }
    return ops;
}

}  // namespace pdlra::raytracer
