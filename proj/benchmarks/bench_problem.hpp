// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <memory>

#include "protondlra/domain/phantom.hpp"
#include "protondlra/physics/physics_tables.hpp"
#include "protondlra/raytracer/uncollided.hpp"
#include "protondlra/solver/problem.hpp"

namespace pdlra::bench
{
inline physics::PhysicsTables water_physics(int degree, double e_max = 95.0)
{
    physics::PhysicsTables p;
    p.csd = std::make_shared<physics::PseudoTimeMap>(
        physics::water_stopping_power_table(0.5, 300, 400), 1.0, e_max);
    p.straggling = physics::water_straggling_table(0.5, 300, 400);
    physics::ScreenedRutherfordWater model;
    p.scatter = std::make_shared<physics::ScatterTable>(model, 1.0, e_max, degree + 1,
                                                        degree + 1);
    return p;
}

inline solver::CollidedProblem water_problem(std::size_t nxy, std::size_t nz, int degree)
{
    domain::PhantomSpec spec;
    spec.cells = {nxy, nxy, nz};
    auto density = domain::build_phantom(spec);
    auto physics = water_physics(degree);
    domain::BeamSource beam;
    raytracer::EnergyMesh mesh(95.0, 1.0, 64, 2);
    auto flux = std::make_shared<raytracer::UncollidedFlux const>(
        raytracer::trace_all(beam, density, physics, mesh));
    return solver::make_problem(density, physics, flux, degree, 0.1);
}
}  // namespace pdlra::bench
