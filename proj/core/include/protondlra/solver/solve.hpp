// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "protondlra/analysis/dose_grid.hpp"
#include "protondlra/analysis/rank_history.hpp"
#include "protondlra/dlra/bug.hpp"
#include "protondlra/dlra/low_rank.hpp"
#include "protondlra/solver/problem.hpp"

namespace pdlra::solver
{
struct SolveReport
{
    std::string solver;
    //! Collided, uncollided and total dose per particle
    analysis::DoseGrid dose;
    analysis::RankHistory ranks;
    std::vector<double> step_seconds;
    //! Worst ||X^T X - I||_F and ||V^T V - I||_F over all steps
    double orthonormality_x = 0;
    double orthonormality_v = 0;
    double dt = 0;
    double total_seconds = 0;
    //! Largest stored state size [scalars]
    std::size_t peak_state_elements = 0;
    //! Working-set estimate of the integrator [bytes]
    std::size_t peak_memory_bytes = 0;
    //! Singular values of the collided solution at the middle step
    std::vector<double> mid_singular_values;
    //! Collided particles leaving the domain, per particle, and their energy
    double leaked_number = 0;
    double leaked_energy = 0;
    //! Energy of collided particles reaching E_cutoff, per particle
    double cutoff_energy = 0;
    std::vector<std::string> warnings;
};

struct SolveOptions
{
    //! Called after each step with the step index and new state
    std::function<void(int, dlra::LowRankState const&)> lowrank_observer;
    std::function<void(int, Matrix const&)> fullrank_observer;
    //! Size guard of the dense solver [scalars]
    std::size_t max_dense_elements = 50'000'000;
    //! Stop after this many steps (negative: run to E_cutoff)
    int max_steps = -1;
};

//! sqrt(4 pi) dt S u_0 per cell [MeV/cm^3]
Vector dose_increment(Vector const& zeroth_moment, double stopping_power, double dt);
//! u_0 = X S V[0, :]^T without forming the dense matrix
Vector zeroth_moment(dlra::LowRankState const& state);

SolveReport solve_collided_lowrank(CollidedProblem const& problem,
                                   dlra::BugConfig const& config,
                                   SolveOptions const& options = {});

SolveReport solve_collided_fullrank(CollidedProblem const& problem,
                                    SolveOptions const& options = {});

}  // namespace pdlra::solver
