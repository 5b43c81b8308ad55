// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/dlra/rhs.hpp"

namespace pdlra::dlra
{
Matrix RhsSplit::k_explicit(Matrix const& k, Matrix const& v) const
{
    return dense_explicit(k * v.transpose()) * v;
}

Matrix RhsSplit::l_explicit(Matrix const& x, Matrix const& l) const
{
    return dense_explicit(x * l.transpose()).transpose() * x;
}

Matrix RhsSplit::s_explicit(Matrix const& x, Matrix const& s, Matrix const& v) const
{
    return x.transpose() * dense_explicit(x * s * v.transpose()) * v;
}

Matrix RhsSplit::dense_full(Matrix const& u) const
{
    return dense_explicit(u) - u * stiff_diagonal().asDiagonal();
}

Matrix imex_euler_step(Matrix const& u0, RhsSplit& rhs, double t0, double dt)
{
    rhs.begin_step(t0, dt);
    Vector const d = rhs.stiff_diagonal();
    Matrix u1 = u0 + dt * rhs.dense_explicit(u0);
    Vector const inv = (1.0 + dt * d.array()).inverse().matrix();
    return u1 * inv.asDiagonal();
}

}  // namespace pdlra::dlra
