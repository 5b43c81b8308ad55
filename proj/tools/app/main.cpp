// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pipeline.hpp"
#include "protondlra/analysis/rank_history.hpp"
#include "protondlra/analysis/volume_io.hpp"
#include "protondlra/errors.hpp"
#include "run_config.hpp"

namespace
{
using namespace pdlra;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

std::array<std::size_t, 3> parse_grid(std::string const& text)
{
    std::array<std::size_t, 3> cells{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ','))
    {
        if (i == 3)
        {
            throw ConfigError("--grid takes nx,ny,nz");
        }
        try
        {
            long const v = std::stol(item);
            if (v < 1)
            {
                throw ConfigError("--grid entries must be positive");
            }
            cells[i++] = static_cast<std::size_t>(v);
        }
        catch (std::logic_error const&)
        {
            throw ConfigError(fmt::format("bad --grid entry '{}'", item));
        }
    }
    if (i != 3)
    {
        throw ConfigError("--grid takes nx,ny,nz");
    }
    return cells;
}

std::vector<double> parse_list(std::string const& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            out.push_back(std::stod(item));
        }
        catch (std::logic_error const&)
        {
            throw ConfigError(fmt::format("bad coordinate '{}'", item));
        }
    }
    return out;
}

struct RunFlags
{
    std::string config;
    std::string preset;
    std::string solver;
    int pn = -1;
    double theta = -1;
    std::string theta_mode;
    std::string grid;
    std::string out;
    int threads = 0;
};

int do_run(RunFlags const& f)
{
    auto config = f.config.empty() ? app::preset(f.preset.empty() ? "homogeneous-90mev"
                                                                   : f.preset)
                                   : app::load_run_config(f.config);
    if (!f.config.empty() && !f.preset.empty())
    {
        throw ConfigError("--preset and --config are exclusive");
    }
    if (!f.solver.empty())
    {
        config.solver = app::parse_solver_kind(f.solver);
    }
    if (f.pn >= 0)
    {
        config.pn = f.pn;
    }
    if (f.theta >= 0)
    {
        config.bug.theta = f.theta;
    }
    if (!f.theta_mode.empty())
    {
        try
        {
            config.bug.mode = dlra::parse_theta_mode(f.theta_mode);
        }
        catch (ValidationError const& e)
        {
            throw ConfigError(e.what());
        }
    }
    if (!f.grid.empty())
    {
        config.phantom.cells = parse_grid(f.grid);
    }
    if (!f.out.empty())
    {
        config.output = f.out;
    }
    if (f.threads > 0)
    {
        config.threads = f.threads;
    }
    config.validate();
    app::run(config, std::cout);
    return exit_ok;
}

int do_compare(std::string const& a, std::string const& b, std::string const& out)
{
    auto const da = analysis::read_dose(app::dose_directory(a));
    auto const db = analysis::read_dose(app::dose_directory(b));
    auto const c = app::compare(da, db);
    std::cout << fmt::format("relative_l2 {:.17g}\nmax_abs_difference {:.17g}\n"
                             "peak_shift_cells {}\n",
                             c.relative_l2, c.max_abs_difference, c.peak_shift_cells);
    if (!out.empty())
    {
        std::ofstream os(out);
        os << app::to_json(c).dump(2) << '\n';
    }
    return exit_ok;
}

int do_cuts(std::string const& run_dir,
            std::string const& longitudinal,
            std::string const& lateral,
            std::string const& field_name,
            std::string const& out)
{
    auto const dose = analysis::read_dose(app::dose_directory(run_dir));
    analysis::DoseField field = analysis::DoseField::total;
    if (field_name == "collided")
    {
        field = analysis::DoseField::collided;
    }
    else if (field_name == "uncollided")
    {
        field = analysis::DoseField::uncollided;
    }
    else if (field_name != "total")
    {
        throw ConfigError("--field is total, collided or uncollided");
    }
    if (longitudinal.empty() == lateral.empty())
    {
        throw ConfigError("give exactly one of --longitudinal x,y or --lateral y[,z]");
    }
    auto const cut = longitudinal.empty()
                         ? analysis::extract_cut(dose, analysis::CutKind::lateral,
                                                 parse_list(lateral), field)
                         : analysis::extract_cut(dose, analysis::CutKind::longitudinal,
                                                 parse_list(longitudinal), field);
    if (out.empty())
    {
        analysis::write_cut(std::cout, cut);
    }
    else
    {
        std::ofstream os(out);
        analysis::write_cut(os, cut);
    }
    return exit_ok;
}

int do_rank_report(std::string const& run_dir, std::size_t k)
{
    std::ifstream in(app::dose_directory(run_dir) + "/rank_history.csv");
    if (!in)
    {
        throw ValidationError("no rank_history.csv in " + run_dir);
    }
    auto const history = analysis::read_rank_history(in);
    if (history.empty())
    {
        throw ValidationError("empty rank history");
    }
    auto const& e = history.entries();
    auto const& mid = e[e.size() / 2];
    std::cout << fmt::format("steps {}\nrank_initial {}\nrank_max {}\nrank_final {}\n",
                             e.size(), e.front().rank, history.max_rank(), e.back().rank);
    if (!mid.singular_values.empty())
    {
        std::size_t const kk = std::min(k, mid.singular_values.size());
        std::cout << fmt::format("captured_information_mid_top{} {:.17g}\n", kk,
                                 analysis::captured_information(mid.singular_values, kk));
    }
    std::cout << "step,energy,rank\n";
    for (auto const& entry : e)
    {
        std::cout << fmt::format("{},{:.17g},{}\n", entry.step, entry.energy, entry.rank);
    }
    return exit_ok;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Proton dose calculation with a collided/uncollided split and low-rank "
                 "P_N transport"};
    cli.require_subcommand(1);

    RunFlags run_flags;
    auto* run = cli.add_subcommand("run", "Ray trace and collided solve");
    run->add_option("--config", run_flags.config, "YAML run configuration");
    run->add_option("--preset", run_flags.preset,
                    "Built-in scenario (homogeneous-90mev, heterogeneous-90mev)");
    run->add_option("--solver", run_flags.solver, "lowrank, fullrank or both");
    run->add_option("--pn", run_flags.pn, "P_N degree");
    run->add_option("--theta", run_flags.theta, "Truncation tolerance");
    run->add_option("--theta-mode", run_flags.theta_mode, "abs or rel");
    run->add_option("--grid", run_flags.grid, "Cell counts nx,ny,nz");
    run->add_option("--out", run_flags.out, "Output directory");
    run->add_option("--threads", run_flags.threads, "Worker count");

    std::string cmp_a;
    std::string cmp_b;
    std::string cmp_out;
    auto* cmp = cli.add_subcommand("compare", "Compare the dose of two runs");
    cmp->add_option("run_a", cmp_a, "Run directory")->required();
    cmp->add_option("run_b", cmp_b, "Reference run directory")->required();
    cmp->add_option("--out", cmp_out, "Write the metrics as JSON");

    std::string cut_run;
    std::string cut_long;
    std::string cut_lat;
    std::string cut_field = "total";
    std::string cut_out;
    auto* cuts = cli.add_subcommand("cuts", "Extract dose cuts");
    cuts->add_option("run", cut_run, "Run directory")->required();
    cuts->add_option("--longitudinal", cut_long, "Line along z at x,y [cm]");
    cuts->add_option("--lateral", cut_lat, "Plane at y, or line along x at y,z [cm]");
    cuts->add_option("--field", cut_field, "total, collided or uncollided");
    cuts->add_option("--out", cut_out, "Output file (default stdout)");

    std::string rr_run;
    std::size_t rr_k = 10;
    auto* rr = cli.add_subcommand("rank-report", "Summarize the rank history of a run");
    rr->add_option("run", rr_run, "Run directory")->required();
    rr->add_option("--k", rr_k, "Singular values for the captured-information metric");

    try
    {
        cli.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = cli.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
        {
            return do_run(run_flags);
        }
        if (*cmp)
        {
            return do_compare(cmp_a, cmp_b, cmp_out);
        }
        if (*cuts)
        {
            return do_cuts(cut_run, cut_long, cut_lat, cut_field, cut_out);
        }
        return do_rank_report(rr_run, rr_k);
    }
    catch (ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (ParseError const& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (Error const& e)
    {
        // Outside of run, library errors come from the inputs being read
        std::cerr << "error: " << e.what() << '\n';
        return *run ? exit_solver : exit_config;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solver;
    }
}
