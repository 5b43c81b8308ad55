// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <numbers>

namespace pdlra
{
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double four_pi = 4.0 * std::numbers::pi;

}  // namespace pdlra
