// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/physics/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "protondlra/errors.hpp"

namespace pdlra::physics
{
namespace
{
GaussLegendre build_rule(int n)
{
    GaussLegendre rule;
    if (n == 1)
    {
        rule.nodes = {0.0};
        rule.weights = {2.0};
        return rule;
    }
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int const half = (n + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double const dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
            {
                break;
            }
        }
        // Recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double const w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
    {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}
}  // namespace

GaussLegendre const& gauss_legendre(int n)
{
    if (n < 1)
    {
        throw ValidationError("Gauss-Legendre rule needs at least one point");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot)
    {
        slot = std::make_unique<GaussLegendre>(build_rule(n));
    }
    return *slot;
}

void legendre_values(double x, std::span<double> out)
{
    if (out.empty())
    {
        return;
    }
    out[0] = 1.0;
    if (out.size() > 1)
    {
        out[1] = x;
    }
    for (std::size_t l = 1; l + 1 < out.size(); ++l)
    {
        double const dl = static_cast<double>(l);
        out[l + 1] = ((2 * dl + 1) * x * out[l] - dl * out[l - 1]) / (dl + 1);
    }
}

void one_minus_legendre(double delta, std::span<double> out)
{
    // D_l = 1 - P_l(1 - delta):
    // (l+1) D_{l+1} = (2l+1) (D_l + delta (1 - D_l)) - l D_{l-1}
    if (out.empty())
    {
        return;
    }
    out[0] = 0.0;
    if (out.size() > 1)
    {
        out[1] = delta;
    }
    for (std::size_t l = 1; l + 1 < out.size(); ++l)
    {
        double const dl = static_cast<double>(l);
        out[l + 1] = ((2 * dl + 1) * (out[l] + delta * (1.0 - out[l]))
                      - dl * out[l - 1])
                     / (dl + 1);
    }
}

}  // namespace pdlra::physics
