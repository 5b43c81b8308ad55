// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/solver/transport_rhs.hpp"

#include "protondlra/errors.hpp"

namespace pdlra::solver
{
namespace
{
constexpr std::array<int, 2> signs{+1, -1};

Matrix const& directed(pn::FluxMatrices const& flux, int axis, int sign)
{
    return sign > 0 ? flux.plus[axis] : flux.minus[axis];
}
}  // namespace

TransportRhs::TransportRhs(CollidedProblem const& problem)
    : problem_(problem), stencil_(problem.grid())
{
    problem_.validate();
    auto const& rho = problem_.density.rho();
    inv_rho_.resize(problem_.cells());
    for (Eigen::Index c = 0; c < inv_rho_.size(); ++c)
    {
        inv_rho_[c] = 1.0 / rho[static_cast<std::size_t>(c)];
    }
    removal_ = Vector::Zero(problem_.moments());
    source_cells_ = Vector::Zero(problem_.cells());
    source_moments_ = Vector::Zero(problem_.moments());
}

void TransportRhs::begin_step(double t0, double dt)
{
    auto const& map = *problem_.physics.csd;
    double const t1 = std::min(t0 + dt, map.final_time());
    double const e1 = map.energy_of_time(t1);
    double const e_mid = map.energy_of_time(0.5 * (t0 + t1));

    source_cells_.setZero();
    source_moments_.setZero();
    if (problem_.scatter)
    {
        removal_ = problem_.scatter->removal(e1);
        double const g0 = problem_.scatter->in_scatter(e_mid)[0];
        if (problem_.uncollided && g0 > 0 && dt > 0)
        {
            auto const& table = problem_.scatter->table();
            auto weights = raytracer::window_weights(
                problem_.uncollided->mesh(), map, t0, t1,
                [&table](double e) { return table.moment(e, 0); });
            source_cells_ = raytracer::window_integral(*problem_.uncollided, weights) / dt;
            source_moments_ = problem_.scatter->in_scatter(e_mid).cwiseProduct(problem_.beam)
                              / g0;
        }
    }
    else
    {
        removal_.setZero();
    }
}

Matrix TransportRhs::dense_explicit(Matrix const& u) const
{
    if (u.rows() != rows() || u.cols() != cols())
    {
        throw ValidationError("state does not match the problem dimensions");
    }
    Matrix out = source_cells_ * source_moments_.transpose();
    Matrix const w = inv_rho_.asDiagonal() * u;
    pn::add_advection(stencil_, *problem_.flux, w, out);
    return out;
}

Matrix TransportRhs::k_explicit(Matrix const& k, Matrix const& v) const
{
    // -sum D(P K (V^T A V)) + q (g^T V)
    Matrix out = source_cells_ * (v.transpose() * source_moments_).transpose();
    Matrix const w = inv_rho_.asDiagonal() * k;
    for (int axis = 0; axis < 3; ++axis)
    {
        for (int sign : signs)
        {
            Matrix const b = v.transpose() * directed(*problem_.flux, axis, sign) * v;
            stencil_.apply(axis, sign, w * b, out, -1.0);
        }
    }
    return out;
}

std::array<Matrix, 6> TransportRhs::projected_differences(Matrix const& x) const
{
    std::array<Matrix, 6> c;
    Matrix const w = inv_rho_.asDiagonal() * x;
    Matrix tmp(x.rows(), x.cols());
    for (int axis = 0; axis < 3; ++axis)
    {
        for (int s = 0; s < 2; ++s)
        {
            tmp.setZero();
            stencil_.apply(axis, signs[s], w, tmp, 1.0);
            c[2 * axis + s] = x.transpose() * tmp;
        }
    }
    return c;
}

Matrix TransportRhs::l_explicit(Matrix const& x, Matrix const& l) const
{
    // -sum A L C^T + g (q^T X), C = X^T D P X
    Matrix out = source_moments_ * (x.transpose() * source_cells_).transpose();
    auto const c = projected_differences(x);
    for (int axis = 0; axis < 3; ++axis)
    {
        for (int s = 0; s < 2; ++s)
        {
            out.noalias() -= directed(*problem_.flux, axis, signs[s])
                             * (l * c[2 * axis + s].transpose());
        }
    }
    return out;
}

Matrix TransportRhs::s_explicit(Matrix const& x, Matrix const& s, Matrix const& v) const
{
    // -sum C S (V^T A V) + (X^T q)(g^T V)
    Matrix out = (x.transpose() * source_cells_) * (v.transpose() * source_moments_).transpose();
    auto const c = projected_differences(x);
    for (int axis = 0; axis < 3; ++axis)
    {
        for (int k = 0; k < 2; ++k)
        {
            Matrix const b = v.transpose() * directed(*problem_.flux, axis, signs[k]) * v;
            out.noalias() -= c[2 * axis + k] * s * b;
        }
    }
    return out;
}

}  // namespace pdlra::solver
