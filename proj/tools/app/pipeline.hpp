// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "protondlra/analysis/metrics.hpp"
#include "run_config.hpp"

namespace pdlra::app
{
//! Runs the ray trace and collided solve(s) and writes all artifacts
//! below config.output. Returns the manifest that was written.
nlohmann::json run(RunConfig const& config, std::ostream& log);

struct Comparison
{
    double relative_l2 = 0;
    double max_abs_difference = 0;
    long peak_shift_cells = 0;
};

Comparison compare(analysis::DoseGrid const& a, analysis::DoseGrid const& b);
nlohmann::json to_json(Comparison const& c);

//! Locates the dose volumes of a run directory (a solver subdirectory
//! when both solvers were run and only one is present at the top).
std::string dose_directory(std::string const& run_dir);

}  // namespace pdlra::app
