// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "run_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "protondlra/errors.hpp"
#include "protondlra/physics/pseudo_time.hpp"
#include "protondlra/physics/scattering.hpp"
#include "protondlra/physics/tables.hpp"

namespace pdlra::app
{
namespace
{
// Energy range of the built-in water tables
constexpr double builtin_e_lo = 0.5;
constexpr double builtin_e_hi = 300.0;
constexpr int builtin_points = 400;

void check_keys(YAML::Node const& node, std::string const& section,
                std::set<std::string> const& allowed)
{
    if (!node.IsMap())
    {
        throw ConfigError(fmt::format("section '{}' must be a mapping", section));
    }
    for (auto const& kv : node)
    {
        auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
        {
            throw ConfigError(fmt::format("unknown key '{}' in section '{}'", key, section));
        }
    }
}

template<class T>
void read(YAML::Node const& node, char const* key, T& out)
{
    if (auto value = node[key])
    {
        try
        {
            out = value.as<T>();
        }
        catch (YAML::Exception const& e)
        {
            throw ConfigError(fmt::format("bad value for '{}': {}", key, e.msg));
        }
    }
}

void read_table_source(YAML::Node const& node, char const* key, TableSource& out)
{
    auto value = node[key];
    if (!value)
    {
        return;
    }
    if (value.IsScalar())
    {
        out.source = value.as<std::string>();
        return;
    }
    check_keys(value, key, {"file", "energy_column", "value_column"});
    read(value, "file", out.source);
    read(value, "energy_column", out.energy_column);
    read(value, "value_column", out.value_column);
}

void read_phantom(YAML::Node const& node, domain::PhantomSpec& p)
{
    check_keys(node, "phantom",
               {"extent", "cells", "origin", "background_hu", "inserts", "density_floor"});
    read(node, "extent", p.extent);
    read(node, "cells", p.cells);
    read(node, "origin", p.origin);
    read(node, "background_hu", p.background_hu);
    read(node, "density_floor", p.density_floor);
    if (auto inserts = node["inserts"])
    {
        if (!inserts.IsSequence())
        {
            throw ConfigError("phantom.inserts must be a list");
        }
        p.inserts.clear();
        for (auto const& item : inserts)
        {
            check_keys(item, "phantom.inserts", {"lo", "hi", "hu"});
            domain::HuBox box;
            read(item, "lo", box.lo);
            read(item, "hi", box.hi);
            read(item, "hu", box.hu);
            p.inserts.push_back(box);
        }
    }
}

void read_beam(YAML::Node const& node, domain::BeamSource& b)
{
    check_keys(node, "beam",
               {"energy", "energy_sigma", "sigma", "weight", "face", "center"});
    read(node, "energy", b.energy);
    read(node, "energy_sigma", b.energy_sigma);
    read(node, "sigma", b.sigma);
    read(node, "weight", b.weight);
    if (auto face = node["face"])
    {
        try
        {
            b.face = domain::parse_face(face.as<std::string>());
        }
        catch (ValidationError const& e)
        {
            throw ConfigError(e.what());
        }
    }
    if (node["center"])
    {
        read(node, "center", b.center);
        b.center_set = true;
    }
}

void read_physics(YAML::Node const& node, PhysicsConfig& p)
{
    check_keys(node, "physics",
               {"stopping_power", "straggling", "scattering", "isotropic_total",
                "kernel_file", "forward_delta", "e_cutoff", "e_max"});
    read_table_source(node, "stopping_power", p.stopping_power);
    read_table_source(node, "straggling", p.straggling);
    read(node, "scattering", p.scattering);
    read(node, "isotropic_total", p.isotropic_total);
    read(node, "kernel_file", p.kernel_file);
    if (auto fd = node["forward_delta"])
    {
        if (fd.IsScalar() && fd.as<std::string>() == "auto")
        {
            p.forward_delta = -1;
        }
        else
        {
            read(node, "forward_delta", p.forward_delta);
        }
    }
    read(node, "e_cutoff", p.e_cutoff);
    if (auto e = node["e_max"])
    {
        if (e.IsScalar() && e.as<std::string>() == "auto")
        {
            p.e_max = -1;
        }
        else
        {
            read(node, "e_max", p.e_max);
        }
    }
}

void read_solver(YAML::Node const& node, RunConfig& c)
{
    check_keys(node, "solver",
               {"kind", "theta", "theta_mode", "r_max", "r0", "r_min", "max_dense_elements"});
    if (auto kind = node["kind"])
    {
        c.solver = parse_solver_kind(kind.as<std::string>());
    }
    read(node, "theta", c.bug.theta);
    if (auto mode = node["theta_mode"])
    {
        try
        {
            c.bug.mode = dlra::parse_theta_mode(mode.as<std::string>());
        }
        catch (ValidationError const& e)
        {
            throw ConfigError(e.what());
        }
    }
    read(node, "r_max", c.bug.r_max);
    read(node, "r0", c.bug.r0);
    read(node, "r_min", c.bug.r_min);
    read(node, "max_dense_elements", c.max_dense_elements);
}

void check_file(std::string const& path, char const* what)
{
    if (!std::filesystem::is_regular_file(path))
    {
        throw ConfigError(fmt::format("{} file not found: {}", what, path));
    }
}

bool is_file_source(TableSource const& t)
{
    return t.source != "builtin" && t.source != "none";
}
}  // namespace

SolverKind parse_solver_kind(std::string const& name)
{
    if (name == "lowrank")
    {
        return SolverKind::lowrank;
    }
    if (name == "fullrank")
    {
        return SolverKind::fullrank;
    }
    if (name == "both")
    {
        return SolverKind::both;
    }
    throw ConfigError(fmt::format("unknown solver '{}' (lowrank, fullrank, both)", name));
}

std::string to_string(SolverKind kind)
{
    switch (kind)
    {
        case SolverKind::lowrank:
            return "lowrank";
        case SolverKind::fullrank:
            return "fullrank";
        case SolverKind::both:
            return "both";
    }
    return "lowrank";
}

double RunConfig::e_max() const
{
    return physics.e_max > 0 ? physics.e_max : beam.energy + 5.0 * beam.energy_sigma;
}

void RunConfig::validate() const
{
    try
    {
        beam.validate();
        bug.validate();
    }
    catch (ValidationError const& e)
    {
        throw ConfigError(e.what());
    }
    if (pn < 0)
    {
        throw ConfigError(fmt::format("P_N degree must be nonnegative (got {})", pn));
    }
    if (groups < 1)
    {
        throw ConfigError(fmt::format("energy groups must be at least 1 (got {})", groups));
    }
    if (group_order < 0 || group_order > 2)
    {
        throw ConfigError(fmt::format("group polynomial order must be 0..2 (got {})",
                                      group_order));
    }
    if (!(cfl > 0))
    {
        throw ConfigError(fmt::format("CFL factor must be positive (got {})", cfl));
    }
    if (threads < 1)
    {
        throw ConfigError(fmt::format("thread count must be at least 1 (got {})", threads));
    }
    for (int axis = 0; axis < 3; ++axis)
    {
        if (phantom.cells[axis] < 1 || !(phantom.extent[axis] > 0))
        {
            throw ConfigError("phantom cells and extent must be positive");
        }
    }
    if (!(physics.e_cutoff > 0) || !(e_max() > physics.e_cutoff))
    {
        throw ConfigError(fmt::format("need 0 < E_cutoff ({}) < E_max ({})", physics.e_cutoff,
                                      e_max()));
    }
    if (beam.energy > e_max() || beam.energy <= physics.e_cutoff)
    {
        throw ConfigError(fmt::format("beam energy {} MeV outside (E_cutoff, E_max]",
                                      beam.energy));
    }
    if (is_file_source(physics.stopping_power))
    {
        check_file(physics.stopping_power.source, "stopping power");
    }
    else if (physics.stopping_power.source != "builtin")
    {
        throw ConfigError("stopping power must be 'builtin' or a file");
    }
    if (is_file_source(physics.straggling))
    {
        check_file(physics.straggling.source, "straggling");
    }
    auto const& s = physics.scattering;
    if (s == "tabulated")
    {
        check_file(physics.kernel_file, "scattering kernel");
    }
    else if (s == "isotropic")
    {
        if (!(physics.isotropic_total >= 0))
        {
            throw ConfigError("isotropic_total must be nonnegative");
        }
    }
    else if (s != "screened-rutherford" && s != "none")
    {
        throw ConfigError(fmt::format(
            "unknown scattering model '{}' (screened-rutherford, isotropic, tabulated, none)",
            s));
    }
}

RunConfig preset(std::string const& name)
{
    RunConfig c;
    c.preset = name;
    if (name == "homogeneous-90mev")
    {
        return c;
    }
    if (name == "heterogeneous-90mev")
    {
        c.phantom.inserts.push_back({{0.0, 0.0, 3.0}, {2.0, 1.0, 5.0}, -400.0});
        return c;
    }
    throw ConfigError(fmt::format(
        "unknown preset '{}' (homogeneous-90mev, heterogeneous-90mev)", name));
}

RunConfig parse_run_config(std::string const& text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (YAML::Exception const& e)
    {
        throw ConfigError(fmt::format("configuration is not valid YAML: {}", e.what()));
    }
    if (!root || root.IsNull())
    {
        return preset("homogeneous-90mev");
    }
    check_keys(root, "<root>",
               {"preset", "phantom", "beam", "physics", "discretization", "solver", "output",
                "threads"});
    RunConfig c = preset(root["preset"] ? root["preset"].as<std::string>()
                                        : std::string("homogeneous-90mev"));
    if (auto n = root["phantom"])
    {
        read_phantom(n, c.phantom);
    }
    if (auto n = root["beam"])
    {
        read_beam(n, c.beam);
    }
    if (auto n = root["physics"])
    {
        read_physics(n, c.physics);
    }
    if (auto n = root["discretization"])
    {
        check_keys(n, "discretization", {"pn", "groups", "group_order", "cfl"});
        read(n, "pn", c.pn);
        read(n, "groups", c.groups);
        read(n, "group_order", c.group_order);
        read(n, "cfl", c.cfl);
    }
    if (auto n = root["solver"])
    {
        read_solver(n, c);
    }
    read(root, "output", c.output);
    read(root, "threads", c.threads);
    return c;
}

RunConfig load_run_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot read configuration " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

nlohmann::json to_json(RunConfig const& c)
{
    using nlohmann::json;
    json inserts = json::array();
    for (auto const& box : c.phantom.inserts)
    {
        inserts.push_back({{"lo", box.lo}, {"hi", box.hi}, {"hu", box.hu}});
    }
    auto table = [](TableSource const& t) {
        return json{{"source", t.source},
                    {"energy_column", t.energy_column},
                    {"value_column", t.value_column}};
    };
    json beam{{"energy", c.beam.energy},
              {"energy_sigma", c.beam.energy_sigma},
              {"sigma", c.beam.sigma},
              {"weight", c.beam.weight},
              {"face", domain::to_string(c.beam.face)}};
    if (c.beam.center_set)
    {
        beam["center"] = c.beam.center;
    }
    return json{
        {"preset", c.preset},
        {"phantom",
         {{"extent", c.phantom.extent},
          {"cells", c.phantom.cells},
          {"origin", c.phantom.origin},
          {"background_hu", c.phantom.background_hu},
          {"density_floor", c.phantom.density_floor},
          {"inserts", inserts}}},
        {"beam", beam},
        {"physics",
         {{"stopping_power", table(c.physics.stopping_power)},
          {"straggling", table(c.physics.straggling)},
          {"scattering", c.physics.scattering},
          {"isotropic_total", c.physics.isotropic_total},
          {"kernel_file", c.physics.kernel_file},
          {"forward_delta", c.physics.forward_delta < 0 ? c.pn + 1 : c.physics.forward_delta},
          {"e_cutoff", c.physics.e_cutoff},
          {"e_max", c.e_max()}}},
        {"discretization",
         {{"pn", c.pn},
          {"moments", (c.pn + 1) * (c.pn + 1)},
          {"groups", c.groups},
          {"group_order", c.group_order},
          {"cfl", c.cfl}}},
        {"solver",
         {{"kind", to_string(c.solver)},
          {"theta", c.bug.theta},
          {"theta_mode", dlra::to_string(c.bug.mode)},
          {"r_max", c.bug.r_max},
          {"r0", c.bug.r0},
          {"r_min", c.bug.r_min},
          {"max_dense_elements", c.max_dense_elements}}},
        {"output", c.output},
        {"threads", c.threads}};
}

physics::PhysicsTables build_physics(RunConfig const& config)
{
    config.validate();
    auto const& pc = config.physics;
    double const e_cut = pc.e_cutoff;
    double const e_max = config.e_max();
    physics::PhysicsTables tables;

    if (pc.stopping_power.source == "builtin")
    {
        tables.csd = std::make_shared<physics::PseudoTimeMap const>(
            physics::water_stopping_power_table(builtin_e_lo, builtin_e_hi, builtin_points),
            e_cut, e_max);
    }
    else
    {
        tables.csd = std::make_shared<physics::PseudoTimeMap const>(
            physics::load_stopping_power(
                pc.stopping_power.source,
                {pc.stopping_power.energy_column, pc.stopping_power.value_column}),
            e_cut, e_max);
    }

    if (pc.straggling.source == "builtin")
    {
        tables.straggling = physics::water_straggling_table(builtin_e_lo, builtin_e_hi,
                                                            builtin_points);
    }
    else if (pc.straggling.source != "none")
    {
        tables.straggling = physics::load_straggling(
            pc.straggling.source, {pc.straggling.energy_column, pc.straggling.value_column});
    }

    int const delta = pc.forward_delta < 0 ? config.pn + 1 : pc.forward_delta;
    int const degree = std::max(config.pn, delta);
    if (pc.scattering == "screened-rutherford")
    {
        physics::ScreenedRutherfordWater model;
        tables.scatter = std::make_shared<physics::ScatterTable const>(model, e_cut, e_max,
                                                                       degree, delta);
    }
    else if (pc.scattering == "isotropic")
    {
        physics::IsotropicScattering model(pc.isotropic_total);
        tables.scatter = std::make_shared<physics::ScatterTable const>(model, e_cut, e_max,
                                                                       degree, delta);
    }
    else if (pc.scattering == "tabulated")
    {
        std::ifstream in(pc.kernel_file);
        auto model = physics::load_tabulated_kernel(in);
        tables.scatter = std::make_shared<physics::ScatterTable const>(*model, e_cut, e_max,
                                                                       degree, delta);
    }
    tables.validate();
    return tables;
}

}  // namespace pdlra::app
