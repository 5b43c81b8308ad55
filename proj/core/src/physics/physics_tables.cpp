// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/physics/physics_tables.hpp"

#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::physics
{
void PhysicsTables::validate() const
{
    if (!csd)
    {
        throw ValidationError("physics tables need a stopping power map");
    }
    if (straggling && (!straggling->covers(e_cutoff()) || !straggling->covers(e_max())))
    {
        throw DomainError(fmt::format("straggling table does not cover [{}, {}] MeV",
                                      e_cutoff(), e_max()));
    }
    if (scatter && (scatter->min_energy() > e_cutoff() || scatter->max_energy() < e_max()))
    {
        throw DomainError(fmt::format("scatter table does not cover [{}, {}] MeV", e_cutoff(),
                                      e_max()));
    }
}

}  // namespace pdlra::physics
