// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

#include "protondlra/dlra/low_rank.hpp"
#include "protondlra/dlra/rhs.hpp"
#include "protondlra/types.hpp"

namespace pdlra::dlra
{
enum class ThetaMode
{
    absolute,
    relative  //!< threshold theta * ||S_hat||_F
};

ThetaMode parse_theta_mode(std::string const& name);
std::string to_string(ThetaMode mode);

struct BugConfig
{
    double theta = 1e-2;
    ThetaMode mode = ThetaMode::relative;
    int r_max = 100;
    int r0 = 1;
    //! Rank floor of the truncation; raising it to the solution rank makes
    //! the integrator exact for linear problems
    int r_min = 1;
    double cfl = 0.1;
    //! Factor on the relative threshold; the transport solver sets it to
    //! the CFL number of the step so that theta is a rate per cell crossed
    double relative_scale = 1.0;

    void validate() const;
};

struct TruncationResult
{
    LowRankState state;
    Vector singular_values;  //!< all singular values of S_hat, descending
    double discarded = 0;  //!< Frobenius norm of the dropped tail
    double threshold = 0;  //!< absolute threshold that was applied
    bool rank_capped = false;  //!< r_max forced a rank below the tolerance rule
};

// SVD of S_hat; keeps the smallest r1 >= r_min whose discarded tail norm
// is <= theta (relative mode: theta ||S_hat||_F), capped at r_max.
TruncationResult truncate(Matrix const& x_hat,
                          Matrix const& s_hat,
                          Matrix const& v_hat,
                          double theta,
                          ThetaMode mode = ThetaMode::absolute,
                          int r_max = std::numeric_limits<int>::max(),
                          int r_min = 1);

//! Smallest admissible rank for descending singular values
int truncation_rank(Vector const& sigma, double threshold);

struct StepResult
{
    LowRankState state;
    Vector singular_values;
    int augmented_rank = 0;
    double discarded = 0;
    bool rank_capped = false;
};

// One rank-adaptive augmented BUG step with IMEX Euler substeps:
// K and L steps from (X0, S0, V0), augmentation by QR of [K1, X0] and
// [L1, V0], Galerkin S step in the augmented bases, then truncation.
// Calls rhs.begin_step(t0, dt). Throws SolverError if an implicit system
// is singular.
StepResult bug_step(LowRankState const& state,
                    RhsSplit& rhs,
                    double t0,
                    double dt,
                    BugConfig const& config);

}  // namespace pdlra::dlra
