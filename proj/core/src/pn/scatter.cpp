// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/pn/scatter.hpp"

#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::pn
{
ScatterOperator::ScatterOperator(std::shared_ptr<physics::ScatterTable const> table,
                                 SHBasis const& basis)
    : table_(std::move(table)), degrees_(basis.degrees())
{
    if (!table_)
    {
        throw ValidationError("scatter operator needs a table");
    }
    if (table_->max_degree() < basis.degree())
    {
        throw ValidationError(fmt::format("scatter table degree {} below basis degree {}",
                                          table_->max_degree(), basis.degree()));
    }
}

Vector ScatterOperator::removal(double energy) const
{
    std::vector<double> per_degree(degrees_.back() + 1);
    for (int l = 0; l <= degrees_.back(); ++l)
    {
        per_degree[l] = table_->removal(energy, l);
    }
    Vector out(size());
    for (int k = 0; k < size(); ++k)
    {
        out[k] = per_degree[degrees_[k]];
    }
    return out;
}

Vector ScatterOperator::in_scatter(double energy) const
{
    std::vector<double> per_degree(degrees_.back() + 1);
    for (int l = 0; l <= degrees_.back(); ++l)
    {
        per_degree[l] = table_->moment(energy, l);
    }
    Vector out(size());
    for (int k = 0; k < size(); ++k)
    {
        out[k] = per_degree[degrees_[k]];
    }
    return out;
}

Matrix apply_scatter(Matrix const& u, ScatterOperator const& op, double energy)
{
    if (u.cols() != op.size())
    {
        throw ValidationError(fmt::format("field has {} moments, operator {}", u.cols(),
                                          op.size()));
    }
    return -(u * op.removal(energy).asDiagonal());
}

Vector beam_moments(SHBasis const& basis, Direction const& direction)
{
    double const norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1]
                                  + direction[2] * direction[2]);
    if (!(std::abs(norm - 1.0) < 1e-12))
    {
        throw ValidationError("beam direction must be a unit vector");
    }
    return basis.evaluate(direction);
}

}  // namespace pdlra::pn
