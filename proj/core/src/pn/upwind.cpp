// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/pn/upwind.hpp"

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::pn
{
UpwindStencil::UpwindStencil(domain::Grid3 const& grid) : grid_(grid)
{
    auto const& n = grid_.counts();
    strides_ = {1, n[0], n[0] * n[1]};
    for (int axis = 0; axis < 3; ++axis)
    {
        auto& starts = line_starts_[axis];
        starts.reserve(grid_.size() / n[axis]);
        for (std::size_t k = 0; k < n[2]; ++k)
        {
            for (std::size_t j = 0; j < n[1]; ++j)
            {
                for (std::size_t i = 0; i < n[0]; ++i)
                {
                    domain::Index3 const idx{i, j, k};
                    if (idx[axis] == 0)
                    {
                        starts.push_back(grid_.linear(idx));
                    }
                }
            }
        }
    }
}

void UpwindStencil::apply(int axis, int sign, Matrix const& in, Matrix& out, double alpha) const
{
    auto const n = static_cast<std::ptrdiff_t>(grid_.count(axis));
    auto const s = static_cast<std::ptrdiff_t>(strides_[axis]);
    double const scale = alpha / grid_.spacing(axis);
    for (Eigen::Index col = 0; col < in.cols(); ++col)
    {
        double const* src = in.col(col).data();
        double* dst = out.col(col).data();
        for (std::size_t start : line_starts_[axis])
        {
            double const* w = src + start;
            double* o = dst + start;
            double upstream = 0;  // flux through the face behind cell p
            if (sign > 0)
            {
                for (std::ptrdiff_t p = 0; p < n; ++p)
                {
                    double const wp = w[p * s];
                    double const face = p == 0 ? wp : 1.5 * wp - 0.5 * w[(p - 1) * s];
                    o[p * s] += scale * (face - upstream);
                    upstream = face;
                }
            }
            else
            {
                for (std::ptrdiff_t p = n - 1; p >= 0; --p)
                {
                    double const wp = w[p * s];
                    double const face = p == n - 1 ? wp : 1.5 * wp - 0.5 * w[(p + 1) * s];
                    o[p * s] += scale * (upstream - face);
                    upstream = face;
                }
            }
        }
    }
}

void add_advection(UpwindStencil const& stencil,
                   FluxMatrices const& flux,
                   Matrix const& w,
                   Matrix& out)
{
    for (int axis = 0; axis < 3; ++axis)
    {
        stencil.apply(axis, +1, w * flux.plus[axis], out, -1.0);
        stencil.apply(axis, -1, w * flux.minus[axis], out, -1.0);
    }
}

Matrix apply_upwind_divergence(Matrix const& u,
                               domain::DensityGrid const& density,
                               FluxMatrices const& flux)
{
    auto const n = static_cast<Eigen::Index>(density.grid().size());
    if (u.rows() != n || u.cols() != flux.size())
    {
        throw ValidationError(fmt::format("field is {}x{}, expected {}x{}", u.rows(), u.cols(),
                                          n, flux.size()));
    }
    Vector inv_rho(n);
    for (Eigen::Index c = 0; c < n; ++c)
    {
        inv_rho[c] = 1.0 / density.rho(c);
    }
    Matrix const w = inv_rho.asDiagonal() * u;
    Matrix out = Matrix::Zero(n, u.cols());
    add_advection(UpwindStencil(density.grid()), flux, w, out);
    return out;
}

}  // namespace pdlra::pn
