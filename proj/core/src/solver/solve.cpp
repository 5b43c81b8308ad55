// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/solver/solve.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"
#include "protondlra/solver/transport_rhs.hpp"

namespace pdlra::solver
{
namespace
{
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

//! Shared bookkeeping of the pseudo-time loop
class Tally
{
  public:
    explicit Tally(CollidedProblem const& problem)
        : problem_(problem),
          volume_(problem.grid().cell_volume()),
          dose_(Vector::Zero(problem.cells()))
    {
    }

    double particles(Vector const& u0) const
    {
        return std::sqrt(four_pi) * volume_ * u0.sum();
    }

    // Adds the deposit of one step ending at t1 and the boundary loss
    // implied by the particle balance of the step.
    void step(TransportRhs const& rhs, Vector const& u0_before, Vector const& u0_after,
              double t0, double t1)
    {
        auto const& map = *problem_.physics.csd;
        double const dt = t1 - t0;
        double const e1 = map.energy_of_time(t1);
        dose_ += volume_ * dose_increment(u0_after, map.stopping_power(e1), dt);
        double const injected = dt * std::sqrt(four_pi) * volume_ * rhs.source_cells().sum()
                                * rhs.source_moments()[0];
        double const lost = particles(u0_before) + injected - particles(u0_after);
        leaked_number_ += lost;
        leaked_energy_ += lost * map.energy_of_time(0.5 * (t0 + t1));
    }

    void finish(Vector const& u0_final, bool reached_cutoff, SolveReport& report)
    {
        // A weightless beam leaves everything at zero; skip the normalization
        double const norm = problem_.weight > 0 ? problem_.weight : 1.0;
        if (reached_cutoff)
        {
            Vector const cut = std::sqrt(four_pi) * volume_ * problem_.physics.e_cutoff()
                               * u0_final;
            dose_ += cut;
            report.cutoff_energy = cut.sum() / norm;
        }
        report.leaked_number = leaked_number_ / norm;
        report.leaked_energy = leaked_energy_ / norm;

        Vector uncollided = Vector::Zero(problem_.cells());
        if (problem_.uncollided)
        {
            auto const d = problem_.uncollided->dose();
            uncollided = Eigen::Map<Vector const>(d.data(), static_cast<Eigen::Index>(d.size()));
            if (problem_.uncollided->clipped_number > 0)
            {
                report.warnings.push_back(fmt::format(
                    "uncollided trace clipped negative group averages ({:.3e} particles)",
                    problem_.uncollided->clipped_number));
            }
        }
        report.dose = analysis::DoseGrid::combine(problem_.grid(), dose_ / norm,
                                                  uncollided / norm);
    }

  private:
    CollidedProblem const& problem_;
    double volume_;
    Vector dose_;
    double leaked_number_ = 0;
    double leaked_energy_ = 0;
};

void check_finite(bool finite, int step)
{
    if (!finite)
    {
        throw SolverError(fmt::format("non-finite values in the collided solution at step {}",
                                      step));
    }
}

int planned_steps(CollidedProblem const& problem, SolveOptions const& options)
{
    int const steps = problem.step_count();
    return options.max_steps >= 0 ? std::min(steps, options.max_steps) : steps;
}

double step_end(CollidedProblem const& problem, int step)
{
    return step + 1 == problem.step_count() ? problem.final_time()
                                            : (step + 1) * problem.step();
}
}  // namespace

Vector dose_increment(Vector const& zeroth_moment, double stopping_power, double dt)
{
    return (std::sqrt(four_pi) * dt * stopping_power) * zeroth_moment;
}

Vector zeroth_moment(dlra::LowRankState const& state)
{
    return state.x * (state.s * state.v.row(0).transpose());
}

SolveReport solve_collided_lowrank(CollidedProblem const& problem,
                                   dlra::BugConfig const& config,
                                   SolveOptions const& options)
{
    config.validate();
    auto const start = Clock::now();
    TransportRhs rhs(problem);
    dlra::BugConfig step_config = config;
    step_config.relative_scale = problem.cfl * problem.step() / problem.max_step();
    auto const& map = *problem.physics.csd;
    Eigen::Index const n = problem.cells();
    Eigen::Index const n_m = problem.moments();

    SolveReport report;
    report.solver = "lowrank";
    report.dt = problem.step();
    Tally tally(problem);

    int const r0 = static_cast<int>(std::min<Eigen::Index>(config.r0, std::min(n, n_m)));
    auto state = dlra::LowRankState::zero(n, n_m, r0);
    report.peak_state_elements = state.element_count();
    Vector u0 = zeroth_moment(state);

    int const steps = planned_steps(problem, options);
    int capped = 0;
    for (int s = 0; s < steps; ++s)
    {
        auto const step_start = Clock::now();
        double const t0 = s * problem.step();
        double const t1 = step_end(problem, s);
        auto result = dlra::bug_step(state, rhs, t0, t1 - t0, step_config);
        check_finite(result.state.x.allFinite() && result.state.s.allFinite()
                         && result.state.v.allFinite(),
                     s + 1);
        state = std::move(result.state);

        Vector const u0_next = zeroth_moment(state);
        tally.step(rhs, u0, u0_next, t0, t1);
        u0 = u0_next;

        report.orthonormality_x = std::max(report.orthonormality_x,
                                           dlra::orthonormality_error(state.x));
        report.orthonormality_v = std::max(report.orthonormality_v,
                                           dlra::orthonormality_error(state.v));
        report.peak_state_elements = std::max(report.peak_state_elements,
                                              state.element_count());
        auto const r_aug = static_cast<std::size_t>(result.augmented_rank);
        report.peak_memory_bytes = std::max(
            report.peak_memory_bytes,
            sizeof(double) * (3 * r_aug * static_cast<std::size_t>(n + n_m) + 4 * r_aug * r_aug));
        capped += result.rank_capped ? 1 : 0;

        std::vector<double> sigma(result.singular_values.data(),
                                  result.singular_values.data() + result.singular_values.size());
        if (s == steps / 2)
        {
            report.mid_singular_values = sigma;
        }
        report.ranks.push({s + 1, t1, map.energy_of_time(t1), state.rank(), std::move(sigma)});
        report.step_seconds.push_back(seconds_since(step_start));
        if (options.lowrank_observer)
        {
            options.lowrank_observer(s + 1, state);
        }
    }
    if (capped > 0)
    {
        report.warnings.push_back(
            fmt::format("rank capped at r_max = {} in {} of {} steps", config.r_max, capped,
                        steps));
    }
    if (report.orthonormality_x > 1e-10 || report.orthonormality_v > 1e-10)
    {
        report.warnings.push_back(fmt::format("basis orthonormality drifted to {:.3e} / {:.3e}",
                                              report.orthonormality_x,
                                              report.orthonormality_v));
    }
    tally.finish(u0, steps == problem.step_count(), report);
    report.total_seconds = seconds_since(start);
    return report;
}

SolveReport solve_collided_fullrank(CollidedProblem const& problem, SolveOptions const& options)
{
    Eigen::Index const n = problem.cells();
    Eigen::Index const n_m = problem.moments();
    auto const elements = static_cast<std::size_t>(n) * static_cast<std::size_t>(n_m);
    if (elements > options.max_dense_elements)
    {
        throw SolverError(fmt::format(
            "full-rank solve needs {} x {} = {} scalars, above the limit of {}", n, n_m,
            elements, options.max_dense_elements));
    }
    auto const start = Clock::now();
    TransportRhs rhs(problem);
    auto const& map = *problem.physics.csd;

    SolveReport report;
    report.solver = "fullrank";
    report.dt = problem.step();
    report.peak_state_elements = elements;
    report.peak_memory_bytes = 3 * sizeof(double) * elements;
    Tally tally(problem);

    Matrix u = Matrix::Zero(n, n_m);
    Vector u0 = u.col(0);
    int const steps = planned_steps(problem, options);
    int const full_rank = static_cast<int>(std::min(n, n_m));
    for (int s = 0; s < steps; ++s)
    {
        auto const step_start = Clock::now();
        double const t0 = s * problem.step();
        double const t1 = step_end(problem, s);
        u = dlra::imex_euler_step(u, rhs, t0, t1 - t0);
        check_finite(u.allFinite(), s + 1);

        Vector const u0_next = u.col(0);
        tally.step(rhs, u0, u0_next, t0, t1);
        u0 = u0_next;

        if (s == steps / 2)
        {
            Eigen::BDCSVD<Matrix> svd(u);
            auto const& sv = svd.singularValues();
            report.mid_singular_values.assign(sv.data(), sv.data() + sv.size());
        }
        report.ranks.push({s + 1, t1, map.energy_of_time(t1), full_rank, {}});
        report.step_seconds.push_back(seconds_since(step_start));
        if (options.fullrank_observer)
        {
            options.fullrank_observer(s + 1, u);
        }
    }
    tally.finish(u0, steps == problem.step_count(), report);
    report.total_seconds = seconds_since(start);
    return report;
}

}  // namespace pdlra::solver
