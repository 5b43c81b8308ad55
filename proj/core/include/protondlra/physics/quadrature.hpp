// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace pdlra::physics
{
//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// Rule with n points, exact for polynomials of degree 2n-1. Results are
// cached, so repeated calls with the same n are cheap and thread-safe.
GaussLegendre const& gauss_legendre(int n);

// Legendre polynomials P_0(x) .. P_L(x) written to out (size L+1).
void legendre_values(double x, std::span<double> out);

// Stable 1 - P_l(1 - delta) for l = 0..L (size L+1). Accurate to relative
// precision even when delta is far below machine epsilon relative to 1.
void one_minus_legendre(double delta, std::span<double> out);

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template<class F>
double integrate(F&& f, double a, double b, int n)
{
    auto const& rule = gauss_legendre(n);
    double const half = 0.5 * (b - a);
    double const mid = 0.5 * (b + a);
    double sum = 0;
    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

}  // namespace pdlra::physics
