// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "protondlra/dlra/bug.hpp"
#include "protondlra/domain/beam.hpp"
#include "protondlra/domain/phantom.hpp"
#include "protondlra/physics/physics_tables.hpp"

namespace pdlra::app
{
enum class SolverKind
{
    lowrank,
    fullrank,
    both
};

SolverKind parse_solver_kind(std::string const& name);
std::string to_string(SolverKind kind);

//! Energy table input: "builtin", "none" (straggling only) or a file path
struct TableSource
{
    std::string source = "builtin";
    int energy_column = 0;
    int value_column = 1;
};

struct PhysicsConfig
{
    TableSource stopping_power;
    TableSource straggling;
    //! "screened-rutherford", "none", "isotropic" or "tabulated"
    std::string scattering = "screened-rutherford";
    double isotropic_total = 0;  //!< cm^2/g, for "isotropic"
    std::string kernel_file;  //!< for "tabulated"
    //! Forward-delta order; negative selects N + 1
    int forward_delta = -1;
    double e_cutoff = 1.0;
    //! Upper end of the energy range; negative selects E_0 + 5 s_E
    double e_max = -1;
};

struct RunConfig
{
    std::string preset;
    domain::PhantomSpec phantom;
    domain::BeamSource beam;
    PhysicsConfig physics;
    int pn = 7;
    int groups = 128;
    int group_order = 2;
    double cfl = 0.1;
    dlra::BugConfig bug;
    SolverKind solver = SolverKind::lowrank;
    std::size_t max_dense_elements = 50'000'000;
    std::string output = "out";
    int threads = 1;

    double e_max() const;
    void validate() const;
};

//! Names: "homogeneous-90mev", "heterogeneous-90mev"
RunConfig preset(std::string const& name);

//! Parses a YAML document; an optional `preset` key selects the base
RunConfig parse_run_config(std::string const& text);
RunConfig load_run_config(std::string const& path);

nlohmann::json to_json(RunConfig const& config);

//! Builds the physics tables, checking that referenced files exist
physics::PhysicsTables build_physics(RunConfig const& config);

}  // namespace pdlra::app
