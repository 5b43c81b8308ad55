// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/raytracer/energy_mesh.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::raytracer
{
void legendre_basis(double x, std::span<double> out)
{
    if (out.empty())
    {
        return;
    }
    out[0] = 1.0;
    if (out.size() > 1)
    {
        out[1] = x;
    }
    for (std::size_t k = 2; k < out.size(); ++k)
    {
        double const kk = static_cast<double>(k);
        out[k] = ((2 * kk - 1) * x * out[k - 1] - (kk - 1) * out[k - 2]) / kk;
    }
}

namespace
{
std::vector<double> uniform_edges(double e_max, double e_cutoff, int groups)
{
    if (groups < 1)
    {
        throw ValidationError("energy mesh needs at least one group");
    }
    if (!(e_max > e_cutoff))
    {
        throw ValidationError("energy mesh needs e_max > e_cutoff");
    }
    std::vector<double> edges(groups + 1);
    for (int g = 0; g <= groups; ++g)
    {
        edges[g] = e_max - (e_max - e_cutoff) * g / groups;
    }
    edges.back() = e_cutoff;
    return edges;
}
}  // namespace

EnergyMesh::EnergyMesh(double e_max, double e_cutoff, int groups, int order)
    : EnergyMesh(uniform_edges(e_max, e_cutoff, groups), order)
{
}

EnergyMesh::EnergyMesh(std::vector<double> edges, int order)
    : edges_(std::move(edges)), order_(order)
{
    if (edges_.size() < 2)
    {
        throw ValidationError("energy mesh needs at least one group");
    }
    for (std::size_t i = 1; i < edges_.size(); ++i)
    {
        if (!(edges_[i] < edges_[i - 1]))
        {
            throw ValidationError("energy group edges must be strictly decreasing");
        }
    }
    if (order_ < 0 || order_ > 2)
    {
        throw ValidationError(fmt::format("energy basis order {} not in {{0, 1, 2}}", order_));
    }
}

int EnergyMesh::group_of(double energy) const
{
    if (!covers(energy))
    {
        throw DomainError(fmt::format("energy {} MeV outside mesh [{}, {}]", energy,
                                      e_cutoff(), e_max()));
    }
    // First edge strictly below E, searching the descending edge list
    auto it = std::upper_bound(edges_.begin(), edges_.end(), energy, std::greater<>());
    int const g = static_cast<int>(it - edges_.begin()) - 1;
    return std::clamp(g, 0, groups() - 1);
}

double EnergyMesh::evaluate(int g, std::span<double const> coefficients, double energy) const
{
    double p[3];
    legendre_basis(local(g, energy), std::span<double>(p, basis_size()));
    double sum = 0;
    for (int k = 0; k < basis_size(); ++k)
    {
        sum += coefficients[k] * p[k];
    }
    return sum;
}

}  // namespace pdlra::raytracer
