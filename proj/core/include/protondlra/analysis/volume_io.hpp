// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "protondlra/analysis/metrics.hpp"
#include "protondlra/domain/grid.hpp"
#include "protondlra/types.hpp"

namespace pdlra::analysis
{
struct NamedField
{
    std::string name;
    Vector values;
};

//! Legacy ASCII STRUCTURED_POINTS volume with one CELL_DATA scalar per field
void write_vtk(std::ostream& out, domain::Grid3 const& grid, std::vector<NamedField> const& fields);
void write_vtk(std::string const& path,
               domain::Grid3 const& grid,
               std::vector<NamedField> const& fields);
//! Reads files produced by write_vtk
std::pair<domain::Grid3, std::vector<NamedField>> read_vtk(std::istream& in);

/*!
 * Raw little-endian float64 blob `<base>.f64` with a JSON sidecar
 * `<base>.json` holding dims, spacing, origin and the field name.
 */
void write_raw(std::string const& base, domain::Grid3 const& grid, NamedField const& field);
std::pair<domain::Grid3, NamedField> read_raw(std::string const& base);

//! Writes collided, uncollided and total volumes as `<dir>/dose_<field>`
void write_dose(std::string const& directory, DoseGrid const& dose);
DoseGrid read_dose(std::string const& directory);

//! Delimited text with one coordinate column per varying axis
void write_cut(std::ostream& out, Cut const& cut);
void write_profile(std::ostream& out,
                   std::vector<double> const& coordinates,
                   std::vector<double> const& values,
                   std::string const& header);

}  // namespace pdlra::analysis
