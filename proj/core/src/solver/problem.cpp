// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/solver/problem.hpp"

#include <cmath>

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::solver
{
double CollidedProblem::max_step() const
{
    return cfl * density.min_density() * grid().min_spacing();
}

int CollidedProblem::step_count() const
{
    return std::max(1, static_cast<int>(std::ceil(final_time() / max_step() - 1e-12)));
}

double CollidedProblem::step() const
{
    return final_time() / step_count();
}

void CollidedProblem::validate() const
{
    if (!basis || !flux)
    {
        throw ValidationError("collided problem needs a basis and flux matrices");
    }
    if (!physics.csd)
    {
        throw ValidationError("collided problem needs a pseudo-time map");
    }
    int const n_m = basis->size();
    if (flux->size() != n_m)
    {
        throw ValidationError(
            fmt::format("flux matrices have {} moments, basis {}", flux->size(), n_m));
    }
    if (beam.size() != n_m)
    {
        throw ValidationError(fmt::format("beam moments have {} entries, basis {}",
                                          beam.size(), n_m));
    }
    if (scatter && scatter->size() != n_m)
    {
        throw ValidationError(fmt::format("scatter operator has {} moments, basis {}",
                                          scatter->size(), n_m));
    }
    if (uncollided && !(uncollided->grid() == grid()))
    {
        throw ValidationError("uncollided flux lives on a different grid");
    }
    if (!(cfl > 0) || !std::isfinite(cfl))
    {
        throw ValidationError(fmt::format("CFL factor must be positive (got {})", cfl));
    }
    if (!(weight >= 0))
    {
        throw ValidationError(fmt::format("particle weight must be nonnegative (got {})", weight));
    }
    if (density.rho().size() != grid().size())
    {
        throw ValidationError("density does not match the grid");
    }
}

CollidedProblem make_problem(domain::DensityGrid density,
                             physics::PhysicsTables physics,
                             std::shared_ptr<raytracer::UncollidedFlux const> uncollided,
                             int degree,
                             double cfl,
                             double weight)
{
    if (degree < 0)
    {
        throw ValidationError(fmt::format("P_N degree must be nonnegative (got {})", degree));
    }
    CollidedProblem p;
    p.density = std::move(density);
    auto basis = std::make_shared<pn::SHBasis const>(degree);
    p.flux = std::make_shared<pn::FluxMatrices const>(pn::build_flux_matrices(*basis));
    if (physics.scatter)
    {
        p.scatter = std::make_shared<pn::ScatterOperator const>(physics.scatter, *basis);
    }
    pn::Direction dir{0.0, 0.0, 1.0};
    if (uncollided)
    {
        dir = uncollided->direction();
    }
    p.beam = pn::beam_moments(*basis, dir);
    p.basis = std::move(basis);
    p.uncollided = std::move(uncollided);
    p.physics = std::move(physics);
    p.cfl = cfl;
    p.weight = weight;
    p.validate();
    return p;
}

}  // namespace pdlra::solver
