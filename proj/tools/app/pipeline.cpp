// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>

#include <Eigen/Core>
#include <fmt/format.h>

#include "protondlra/analysis/rank_history.hpp"
#include "protondlra/analysis/volume_io.hpp"
#include "protondlra/errors.hpp"
#include "protondlra/raytracer/uncollided.hpp"
#include "protondlra/solver/solve.hpp"

namespace pdlra::app
{
namespace
{
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr char const* version = "0.1.0";
constexpr double balance_tolerance = 0.02;
constexpr double orthonormality_tolerance = 1e-10;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(fs::path const& path, std::string const& text)
{
    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

nlohmann::json write_solver_outputs(fs::path const& dir,
                                    solver::SolveReport const& report,
                                    raytracer::UncollidedFlux const& uncollided,
                                    RunConfig const& config)
{
    fs::create_directories(dir);
    analysis::write_dose(dir.string(), report.dose);
    {
        std::ofstream out(dir / "rank_history.csv");
        analysis::write_rank_history(out, report.ranks);
    }
    {
        std::ofstream out(dir / "timing.csv");
        out << "step,seconds\n";
        for (std::size_t i = 0; i < report.step_seconds.size(); ++i)
        {
            out << fmt::format("{},{:.17g}\n", i + 1, report.step_seconds[i]);
        }
    }
    auto const& grid = report.dose.grid;
    auto const depth = analysis::depth_dose(report.dose, 2);
    {
        std::vector<double> z(depth.size());
        for (std::size_t k = 0; k < z.size(); ++k)
        {
            z[k] = grid.center(2, k);
        }
        std::ofstream out(dir / "depth_dose.csv");
        analysis::write_profile(out, z, depth, "z,dose");
    }

    double const w = config.beam.weight;
    double const injected = uncollided.injected_energy / w;
    double const deposited_u = report.dose.uncollided.sum();
    double const deposited_c = report.dose.collided.sum();
    double const exit_u = uncollided.exit_energy / w;
    double const residual = injected > 0 ? (injected - deposited_u - deposited_c
                                            - report.leaked_energy - exit_u)
                                               / injected
                                         : 0.0;
    auto const negative = analysis::negative_dose_stats(report.dose.total);
    auto const ranks = report.ranks.ranks();
    int const r_lo = ranks.empty() ? 1 : *std::min_element(ranks.begin(), ranks.end());
    int const r_hi = ranks.empty() ? 1 : *std::max_element(ranks.begin(), ranks.end());
    bool const rank_ok = report.solver != "lowrank" || (r_lo >= 1 && r_hi <= config.bug.r_max);

    return nlohmann::json{
        {"solver", report.solver},
        {"directory", dir.string()},
        {"steps", report.ranks.size()},
        {"dt", report.dt},
        {"seconds", report.total_seconds},
        {"peak_state_elements", report.peak_state_elements},
        {"peak_memory_bytes", report.peak_memory_bytes},
        {"rank", {{"min", r_lo}, {"max", r_hi}, {"final", ranks.empty() ? 0 : ranks.back()}}},
        {"orthonormality", {{"x", report.orthonormality_x}, {"v", report.orthonormality_v}}},
        {"mid_singular_values", report.mid_singular_values},
        {"dose",
         {{"total", report.dose.total.sum()},
          {"collided", deposited_c},
          {"uncollided", deposited_u},
          {"peak_depth", analysis::peak_depth(report.dose, 2)},
          {"most_negative", negative.most_negative},
          {"negative_fraction", negative.negative_fraction},
          {"negative_cells", negative.negative_cells}}},
        {"energy_balance",
         {{"injected", injected},
          {"uncollided_deposit", deposited_u},
          {"collided_deposit", deposited_c},
          {"collided_cutoff_deposit", report.cutoff_energy},
          {"uncollided_cutoff_deposit",
           std::accumulate(uncollided.cutoff_deposit.begin(), uncollided.cutoff_deposit.end(),
                           0.0)
               / w},
          {"collided_leakage", report.leaked_energy},
          {"uncollided_exit", exit_u},
          {"relative_residual", residual}}},
        {"invariants",
         {{"energy_balance_within_2pct", std::abs(residual) <= balance_tolerance},
          {"orthonormality_within_1e-10",
           report.orthonormality_x <= orthonormality_tolerance
               && report.orthonormality_v <= orthonormality_tolerance},
          {"rank_within_bounds", rank_ok},
          {"rank_history_matches_steps", report.ranks.size() == report.step_seconds.size()},
          {"dose_finite", report.dose.total.allFinite()}}},
        {"warnings", report.warnings}};
}
}  // namespace

Comparison compare(analysis::DoseGrid const& a, analysis::DoseGrid const& b)
{
    Comparison c;
    c.relative_l2 = analysis::relative_l2(a, b);
    c.max_abs_difference = analysis::max_abs_difference(a, b);
    c.peak_shift_cells = static_cast<long>(analysis::peak_index(a, 2))
                         - static_cast<long>(analysis::peak_index(b, 2));
    return c;
}

nlohmann::json to_json(Comparison const& c)
{
    return {{"relative_l2", c.relative_l2},
            {"max_abs_difference", c.max_abs_difference},
            {"peak_shift_cells", c.peak_shift_cells}};
}

std::string dose_directory(std::string const& run_dir)
{
    fs::path const dir(run_dir);
    if (fs::exists(dir / "dose_total.json"))
    {
        return dir.string();
    }
    for (char const* sub : {"lowrank", "fullrank"})
    {
        if (fs::exists(dir / sub / "dose_total.json"))
        {
            return (dir / sub).string();
        }
    }
    throw ValidationError("no dose volumes found in " + run_dir);
}

nlohmann::json run(RunConfig const& config, std::ostream& log)
{
    config.validate();
    Eigen::setNbThreads(config.threads);
    auto const start = Clock::now();
    fs::path const out_dir(config.output);
    fs::create_directories(out_dir);

    auto physics = build_physics(config);
    auto density = domain::build_phantom(config.phantom);
    auto const& grid = density.grid();
    log << fmt::format("grid {}x{}x{}, P_{} ({} moments), {} groups, E {}..{} MeV\n",
                       grid.count(0), grid.count(1), grid.count(2), config.pn,
                       (config.pn + 1) * (config.pn + 1), config.groups,
                       physics.e_cutoff(), physics.e_max());

    auto const trace_start = Clock::now();
    raytracer::EnergyMesh mesh(physics.e_max(), physics.e_cutoff(), config.groups,
                               config.group_order);
    auto uncollided = std::make_shared<raytracer::UncollidedFlux const>(
        raytracer::trace_all(config.beam, density, physics, mesh));
    double const trace_seconds = seconds_since(trace_start);
    log << fmt::format("ray trace: {} rays, {:.2f} s\n", uncollided->rays, trace_seconds);

    auto const build_start = Clock::now();
    auto problem = solver::make_problem(density, physics, uncollided, config.pn, config.cfl,
                                        config.beam.weight);
    double const build_seconds = seconds_since(build_start);
    log << fmt::format("collided problem: {} steps of {:.6g} g/cm^2\n", problem.step_count(),
                       problem.step());

    nlohmann::json manifest{
        {"version", version},
        {"eigen",
         fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
        {"compiler", __VERSION__},
        {"config", to_json(config)},
        {"csda_range", physics.csd->residual_range(config.beam.energy)},
        {"final_time", problem.final_time()},
        {"steps", problem.step_count()},
        {"dt", problem.step()},
        {"uncollided",
         {{"rays", uncollided->rays},
          {"injected_number", uncollided->injected_number},
          {"injected_energy", uncollided->injected_energy},
          {"clipped_number", uncollided->clipped_number}}},
        {"timing", {{"ray_trace", trace_seconds}, {"operator_build", build_seconds}}}};

    bool const both = config.solver == SolverKind::both;
    std::vector<solver::SolveReport> reports;
    nlohmann::json runs = nlohmann::json::object();
    nlohmann::json warnings = nlohmann::json::array();
    auto finish = [&](solver::SolveReport report) {
        fs::path const dir = both ? out_dir / report.solver : out_dir;
        log << fmt::format("{}: {:.2f} s, max rank {}\n", report.solver, report.total_seconds,
                           report.ranks.max_rank());
        runs[report.solver] = write_solver_outputs(dir, report, *uncollided, config);
        for (auto const& w : report.warnings)
        {
            warnings.push_back(fmt::format("{}: {}", report.solver, w));
            log << "warning: " << report.solver << ": " << w << '\n';
        }
        reports.push_back(std::move(report));
    };

    solver::SolveOptions options;
    options.max_dense_elements = config.max_dense_elements;
    if (config.solver != SolverKind::fullrank)
    {
        finish(solver::solve_collided_lowrank(problem, config.bug, options));
    }
    if (config.solver != SolverKind::lowrank)
    {
        finish(solver::solve_collided_fullrank(problem, options));
    }
    manifest["runs"] = runs;
    manifest["warnings"] = warnings;
    if (both)
    {
        auto const cmp = compare(reports[0].dose, reports[1].dose);
        manifest["comparison"] = to_json(cmp);
        log << fmt::format("lowrank vs fullrank: relative L2 {:.6e}\n", cmp.relative_l2);
    }
    manifest["timing"]["total"] = seconds_since(start);
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace pdlra::app
