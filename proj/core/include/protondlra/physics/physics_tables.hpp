// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "protondlra/physics/pseudo_time.hpp"
#include "protondlra/physics/scattering.hpp"
#include "protondlra/physics/tables.hpp"

namespace pdlra::physics
{
//! Water data used by the transport solvers. All quantities are per unit
//! density; the density scaling happens at the use sites.
struct PhysicsTables
{
    std::shared_ptr<PseudoTimeMap const> csd;
    //! Empty means no straggling
    std::optional<StragglingTable> straggling;
    //! Null means no scattering
    std::shared_ptr<ScatterTable const> scatter;

    double e_cutoff() const { return csd->e_cutoff(); }
    double e_max() const { return csd->e_max(); }
    double stopping_power(double energy) const { return csd->stopping_power(energy); }
    double straggling_coefficient(double energy) const
    {
        return straggling ? (*straggling)(energy) : 0.0;
    }
    //! Effective total cross section seen by the uncollided flux
    double total(double energy) const { return scatter ? scatter->total(energy) : 0.0; }

    void validate() const;
};

}  // namespace pdlra::physics
