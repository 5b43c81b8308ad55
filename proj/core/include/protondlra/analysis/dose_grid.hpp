// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "protondlra/domain/grid.hpp"
#include "protondlra/types.hpp"

namespace pdlra::analysis
{
//---------------------------------------------------------------------------//
/*!
 * Deposited energy per cell [MeV per particle], split by flux component.
 */
struct DoseGrid
{
    domain::Grid3 grid;
    Vector collided;
    Vector uncollided;
    Vector total;

    //! Builds total = collided + uncollided
    static DoseGrid combine(domain::Grid3 grid, Vector collided, Vector uncollided);
    static DoseGrid zero(domain::Grid3 grid);

    //! Throws ValidationError on size mismatch or non-finite entries
    void validate() const;
    DoseGrid& operator*=(double factor);
};

}  // namespace pdlra::analysis
