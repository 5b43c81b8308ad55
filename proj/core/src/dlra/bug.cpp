// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/dlra/bug.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::dlra
{
namespace
{
// Right-solve y (I + dt B^T D B)^{-1} for the projected stiff operator
Matrix implicit_right_solve(Matrix const& y, Matrix const& basis, Vector const& d, double dt,
                            char const* substep)
{
    Eigen::Index const r = basis.cols();
    Matrix m = Matrix::Identity(r, r) + dt * basis.transpose() * d.asDiagonal() * basis;
    Eigen::LDLT<Matrix> ldlt(m);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()
        || ldlt.vectorD().minCoeff() <= 1e-14 * ldlt.vectorD().maxCoeff())
    {
        throw SolverError(fmt::format("singular implicit system in {} step", substep));
    }
    return ldlt.solve(y.transpose()).transpose();
}
}  // namespace

ThetaMode parse_theta_mode(std::string const& name)
{
    if (name == "abs" || name == "absolute")
    {
        return ThetaMode::absolute;
    }
    if (name == "rel" || name == "relative")
    {
        return ThetaMode::relative;
    }
    throw ValidationError(fmt::format("unknown theta mode '{}' (expected abs or rel)", name));
}

std::string to_string(ThetaMode mode)
{
    return mode == ThetaMode::absolute ? "abs" : "rel";
}

void BugConfig::validate() const
{
    if (!(theta >= 0))
    {
        throw ValidationError("theta must be nonnegative");
    }
    if (r0 < 1 || r0 > r_max)
    {
        throw ValidationError(fmt::format("need 1 <= r0 ({}) <= r_max ({})", r0, r_max));
    }
    if (r_min < 1 || r_min > r_max)
    {
        throw ValidationError(fmt::format("need 1 <= r_min ({}) <= r_max ({})", r_min, r_max));
    }
    if (!(cfl > 0))
    {
        throw ValidationError("CFL factor must be positive");
    }
    if (!(relative_scale > 0))
    {
        throw ValidationError("relative threshold scale must be positive");
    }
}

int truncation_rank(Vector const& sigma, double threshold)
{
    int const n = static_cast<int>(sigma.size());
    // tail(r) = ||sigma_{r..n-1}||, accumulated from the small end without
    // underflow so that theta = 0 keeps every nonzero value
    double tail = 0;
    int rank = n;
    for (int r = n - 1; r >= 1; --r)
    {
        tail = std::hypot(tail, sigma[r]);
        if (tail <= threshold)
        {
            rank = r;
        }
        else
        {
            break;
        }
    }
    return std::max(rank, 1);
}

TruncationResult truncate(Matrix const& x_hat,
                          Matrix const& s_hat,
                          Matrix const& v_hat,
                          double theta,
                          ThetaMode mode,
                          int r_max,
                          int r_min)
{
    Eigen::JacobiSVD<Matrix> svd(s_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TruncationResult result;
    result.singular_values = svd.singularValues();
    result.threshold = mode == ThetaMode::relative ? theta * s_hat.norm() : theta;

    int const available = static_cast<int>(result.singular_values.size());
    int r1 = std::max(truncation_rank(result.singular_values, result.threshold),
                      std::min(r_min, available));
    if (r1 > r_max)
    {
        r1 = r_max;
        result.rank_capped = true;
    }
    result.discarded = result.singular_values.tail(result.singular_values.size() - r1).norm();
    result.state.x = x_hat * svd.matrixU().leftCols(r1);
    result.state.s = result.singular_values.head(r1).asDiagonal();
    result.state.v = v_hat * svd.matrixV().leftCols(r1);
    return result;
}

StepResult bug_step(LowRankState const& state,
                    RhsSplit& rhs,
                    double t0,
                    double dt,
                    BugConfig const& config)
{
    if (!(dt > 0))
    {
        throw ValidationError("step size must be positive");
    }
    rhs.begin_step(t0, dt);
    Vector const d = rhs.stiff_diagonal();
    Matrix const& x0 = state.x;
    Matrix const& s0 = state.s;
    Matrix const& v0 = state.v;

    // K step: K' = F(K V0^T) V0
    Matrix const k0 = x0 * s0;
    Matrix k1 = k0 + dt * rhs.k_explicit(k0, v0);
    k1 = implicit_right_solve(k1, v0, d, dt, "K");

    // L step: L' = F(X0 L^T)^T X0; the stiff part stays diagonal
    Matrix const l0 = v0 * s0.transpose();
    Matrix l1 = l0 + dt * rhs.l_explicit(x0, l0);
    l1 = (1.0 + dt * d.array()).inverse().matrix().asDiagonal() * l1;

    // Augmentation
    Matrix kx(x0.rows(), 2 * x0.cols());
    kx << k1, x0;
    Matrix lv(v0.rows(), 2 * v0.cols());
    lv << l1, v0;
    Matrix const x_hat = orthonormalize(kx);
    Matrix const v_hat = orthonormalize(lv);

    // Galerkin S step in the augmented bases
    Matrix const s_hat0 = (x_hat.transpose() * x0) * s0 * (v0.transpose() * v_hat);
    Matrix s_hat1 = s_hat0 + dt * rhs.s_explicit(x_hat, s_hat0, v_hat);
    s_hat1 = implicit_right_solve(s_hat1, v_hat, d, dt, "S");

    double const theta =
        config.mode == ThetaMode::relative ? config.theta * config.relative_scale : config.theta;
    auto trunc = truncate(x_hat, s_hat1, v_hat, theta, config.mode, config.r_max,
                          config.r_min);
    StepResult result;
    result.state = std::move(trunc.state);
    result.singular_values = std::move(trunc.singular_values);
    result.augmented_rank = static_cast<int>(s_hat1.rows());
    result.discarded = trunc.discarded;
    result.rank_capped = trunc.rank_capped;
    return result;
}

}  // namespace pdlra::dlra
