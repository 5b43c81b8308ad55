// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numeric>
#include <vector>

#include "protondlra/dlra/rhs.hpp"

namespace pdlra::test
{
//! F(u) = B u + u C - u diag(d), dense projections only
class LinearRhs final : public dlra::RhsSplit
{
  public:
    LinearRhs(Matrix b, Matrix c, Vector d) : b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
    {
    }

    Eigen::Index rows() const override { return b_.rows(); }
    Eigen::Index cols() const override { return c_.rows(); }
    void begin_step(double, double) override {}
    Vector stiff_diagonal() const override { return d_; }
    Matrix dense_explicit(Matrix const& u) const override { return b_ * u + u * c_; }

    Matrix full(Matrix const& u) const { return b_ * u + u * c_ - u * d_.asDiagonal(); }

  private:
    Matrix b_;
    Matrix c_;
    Vector d_;
};

//! Classical RK4 with many small steps
inline Matrix reference_solution(LinearRhs const& rhs, Matrix u, double t_end, int steps = 20000)
{
    double const h = t_end / steps;
    for (int s = 0; s < steps; ++s)
    {
        Matrix const k1 = rhs.full(u);
        Matrix const k2 = rhs.full(u + 0.5 * h * k1);
        Matrix const k3 = rhs.full(u + 0.5 * h * k2);
        Matrix const k4 = rhs.full(u + h * k3);
        u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return u;
}

//! Least-squares slope of y against x
inline double regression_slope(std::vector<double> const& x, std::vector<double> const& y)
{
    double const n = static_cast<double>(x.size());
    double const mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double const my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}
}  // namespace pdlra::test
