// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "pipeline.hpp"
#include "protondlra/analysis/metrics.hpp"
#include "protondlra/analysis/volume_io.hpp"
#include "protondlra/errors.hpp"
#include "run_config.hpp"
#include "test_config.hpp"

namespace pdlra::app
{
namespace fs = std::filesystem;

namespace
{
fs::path scratch(std::string const& name)
{
    auto dir = fs::temp_directory_path() / ("pdlra_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig small_config(std::string const& out)
{
    RunConfig c = preset("homogeneous-90mev");
    c.phantom.cells = {6, 6, 16};
    c.pn = 1;
    c.groups = 48;
    c.output = out;
    return c;
}

int run_binary(std::string const& args)
{
    std::string const command = std::string(PDLRA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int const status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(fs::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST(RunConfig, ParsesYaml)
{
    auto const c = parse_run_config(R"(
preset: heterogeneous-90mev
phantom:
  cells: [10, 10, 40]
beam:
  energy: 70
  energy_sigma: 0.5
  face: z-
physics:
  forward_delta: auto
  e_max: auto
discretization:
  pn: 3
  cfl: 0.2
solver:
  kind: both
  theta: 0.01
  theta_mode: absolute
  r_max: 30
output: somewhere
)");
    EXPECT_EQ(c.phantom.cells, (std::array<std::size_t, 3>{10, 10, 40}));
    EXPECT_EQ(c.phantom.inserts.size(), 1u);
    EXPECT_EQ(c.beam.energy, 70.0);
    EXPECT_EQ(c.e_max(), 72.5);
    EXPECT_EQ(c.physics.forward_delta, -1);
    EXPECT_EQ(c.pn, 3);
    EXPECT_EQ(c.cfl, 0.2);
    EXPECT_EQ(c.solver, SolverKind::both);
    EXPECT_EQ(c.bug.theta, 0.01);
    EXPECT_EQ(c.bug.mode, dlra::ThetaMode::absolute);
    EXPECT_EQ(c.bug.r_max, 30);
    EXPECT_EQ(c.output, "somewhere");
    EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, EmptyDocumentIsDefaultPreset)
{
    auto const c = parse_run_config("");
    EXPECT_EQ(c.preset, "homogeneous-90mev");
    EXPECT_EQ(c.phantom.cells, (std::array<std::size_t, 3>{40, 40, 160}));
}

TEST(RunConfig, RejectsBadInput)
{
    EXPECT_THROW(parse_run_config("bogus: 1\n"), ConfigError);
    EXPECT_THROW(parse_run_config("beam:\n  energy_spread: 1\n"), ConfigError);
    EXPECT_THROW(parse_run_config("solver:\n  kind: sideways\n"), ConfigError);
    EXPECT_THROW(parse_run_config("phantom: [1, 2\n"), ConfigError);
    EXPECT_THROW(preset("lung"), ConfigError);

    auto c = preset("homogeneous-90mev");
    c.bug.theta = -1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = preset("homogeneous-90mev");
    c.beam.energy = 0.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c = preset("homogeneous-90mev");
    c.physics.stopping_power.source = "/nonexistent/table.txt";
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(RunConfig, ExternalStoppingPowerTable)
{
    auto c = preset("homogeneous-90mev");
    c.physics.stopping_power.source = test::data_path("pstar_water.txt");
    c.physics.stopping_power.value_column = 3;
    auto const physics = build_physics(c);
    EXPECT_NEAR(physics.csd->residual_range(90.0), 6.38867, 2e-3);
}

TEST(Pipeline, WritesOutputsAndManifest)
{
    auto const dir = scratch("smoke");
    auto c = small_config(dir.string());
    c.solver = SolverKind::fullrank;
    std::ostringstream log;
    auto const manifest = run(c, log);
    for (auto const* name : {"manifest.json", "dose.vtk", "depth_dose.csv", "rank_history.csv",
                             "timing.csv", "dose_total.f64", "dose_total.json"})
    {
        EXPECT_TRUE(fs::exists(dir / name)) << name;
    }
    auto const& r = manifest["runs"]["fullrank"];
    for (auto const& [key, value] : r["invariants"].items())
    {
        EXPECT_TRUE(value.get<bool>()) << key;
    }
    auto const dose = analysis::read_dose(dose_directory(dir.string()));
    EXPECT_GT(dose.total.sum(), 0.0);
    fs::remove_all(dir);
}

TEST(Pipeline, BothSolversAgreeWithoutTruncation)
{
    auto const dir = scratch("both");
    auto c = small_config(dir.string());
    c.solver = SolverKind::both;
    c.bug.theta = 0;
    c.bug.r0 = 4;
    c.bug.r_min = 4;
    std::ostringstream log;
    auto const manifest = run(c, log);
    EXPECT_LE(manifest["comparison"]["relative_l2"].get<double>(), 1e-8);
    auto const low = analysis::read_dose(dose_directory((dir / "lowrank").string()));
    auto const full = analysis::read_dose(dose_directory((dir / "fullrank").string()));
    EXPECT_LE(analysis::relative_l2(low, full), 1e-8);
    fs::remove_all(dir);
}

TEST(Pipeline, Deterministic)
{
    auto const a = scratch("det_a");
    auto const b = scratch("det_b");
    std::ostringstream log;
    auto c = small_config(a.string());
    c.bug.theta = 1e-3;
    run(c, log);
    c.output = b.string();
    c.threads = 2;
    run(c, log);
    EXPECT_EQ(slurp(a / "dose_total.f64"), slurp(b / "dose_total.f64"));
    EXPECT_EQ(slurp(a / "rank_history.csv"), slurp(b / "rank_history.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Binary, ExitCodes)
{
    auto const dir = scratch("bin");
    EXPECT_EQ(run_binary("--help"), 0);
    EXPECT_EQ(run_binary("run --preset nowhere"), 2);
    EXPECT_EQ(run_binary("run --theta-mode sideways"), 2);
    EXPECT_EQ(run_binary("frobnicate"), 2);
    EXPECT_EQ(run_binary("compare /nonexistent/a /nonexistent/b"), 2);

    std::string const out = (dir / "run").string();
    ASSERT_EQ(run_binary("run --grid 4,4,12 --pn 1 --solver both --out " + out), 0);
    EXPECT_EQ(run_binary("compare " + out + "/lowrank " + out + "/fullrank --out "
                         + (dir / "cmp.json").string()),
              0);
    auto const cmp = nlohmann::json::parse(slurp(dir / "cmp.json"));
    EXPECT_LE(cmp["relative_l2"].get<double>(), 1e-2);
    EXPECT_EQ(run_binary("cuts " + out + "/lowrank --longitudinal 1,1 --out "
                         + (dir / "cut.csv").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "cut.csv"));
    EXPECT_EQ(run_binary("cuts " + out + "/lowrank --longitudinal 5,1"), 2);
    EXPECT_EQ(run_binary("rank-report " + out + "/lowrank --k 2"), 0);
    fs::remove_all(dir);
}

}  // namespace pdlra::app
