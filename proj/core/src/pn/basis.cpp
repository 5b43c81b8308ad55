// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/pn/basis.hpp"

#include <cmath>
#include <numbers>

#include "protondlra/errors.hpp"
#include "protondlra/physics/quadrature.hpp"

namespace pdlra::pn
{
namespace
{
// Flat index of the normalized associated Legendre function P_l^m, m >= 0
int plm_index(int l, int m)
{
    return l * (l + 1) / 2 + m;
}
}  // namespace

SphereQuadrature product_quadrature(int exactness)
{
    if (exactness < 0)
    {
        throw ValidationError("quadrature exactness must be nonnegative");
    }
    int const n_polar = exactness / 2 + 1;
    int const n_azimuth = exactness + 1;
    auto const& gl = physics::gauss_legendre(n_polar);
    SphereQuadrature quad;
    quad.directions.reserve(n_polar * n_azimuth);
    quad.weights.reserve(n_polar * n_azimuth);
    double const dphi = 2 * pi / n_azimuth;
    for (int p = 0; p < n_polar; ++p)
    {
        double const mu = gl.nodes[p];
        double const s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int a = 0; a < n_azimuth; ++a)
        {
            double const phi = (a + 0.5) * dphi;
            quad.directions.push_back({s * std::cos(phi), s * std::sin(phi), mu});
            quad.weights.push_back(gl.weights[p] * dphi);
        }
    }
    return quad;
}

SHBasis::SHBasis(int degree) : degree_(degree)
{
    if (degree < 0)
    {
        throw ValidationError("spherical harmonic degree must be nonnegative");
    }
    for (int l = 0; l <= degree_; ++l)
    {
        for (int m = -l; m <= l; ++m)
        {
            degrees_.push_back(l);
        }
    }
    a_.assign(plm_index(degree_, degree_) + 1, 0.0);
    b_.assign(a_.size(), 0.0);
    for (int m = 0; m <= degree_; ++m)
    {
        for (int l = m + 2; l <= degree_; ++l)
        {
            double const l2 = static_cast<double>(l) * l;
            double const m2 = static_cast<double>(m) * m;
            a_[plm_index(l, m)] = std::sqrt((4 * l2 - 1) / (l2 - m2));
            double const lm1 = l - 1.0;
            b_[plm_index(l, m)] = std::sqrt((lm1 * lm1 - m2) / (4 * lm1 * lm1 - 1));
        }
    }
}

void SHBasis::evaluate(Direction const& omega, std::span<double> out) const
{
    double const x = std::clamp(omega[2], -1.0, 1.0);
    double const s = std::hypot(omega[0], omega[1]);
    double const phi = s > 0 ? std::atan2(omega[1], omega[0]) : 0.0;

    // Normalized associated Legendre functions (orthonormal with e^{i m phi})
    std::vector<double> p(a_.size());
    p[0] = 1.0 / std::sqrt(4 * pi);
    for (int m = 1; m <= degree_; ++m)
    {
        p[plm_index(m, m)] = std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * p[plm_index(m - 1, m - 1)];
    }
    for (int m = 0; m < degree_; ++m)
    {
        p[plm_index(m + 1, m)] = std::sqrt(2.0 * m + 3) * x * p[plm_index(m, m)];
    }
    for (int m = 0; m <= degree_; ++m)
    {
        for (int l = m + 2; l <= degree_; ++l)
        {
            int const k = plm_index(l, m);
            p[k] = a_[k] * (x * p[plm_index(l - 1, m)] - b_[k] * p[plm_index(l - 2, m)]);
        }
    }

    for (int l = 0; l <= degree_; ++l)
    {
        out[index(l, 0)] = p[plm_index(l, 0)];
        for (int m = 1; m <= l; ++m)
        {
            double const scaled = std::numbers::sqrt2 * p[plm_index(l, m)];
            out[index(l, m)] = scaled * std::cos(m * phi);
            out[index(l, -m)] = scaled * std::sin(m * phi);
        }
    }
}

Vector SHBasis::evaluate(Direction const& omega) const
{
    Vector out(size());
    evaluate(omega, std::span<double>(out.data(), out.size()));
    return out;
}

SHBasis build_basis(int degree)
{
    return SHBasis(degree);
}

Matrix gram_matrix(SHBasis const& basis, SphereQuadrature const& quadrature)
{
    Matrix values(basis.size(), quadrature.size());
    for (std::size_t q = 0; q < quadrature.size(); ++q)
    {
        values.col(q) = basis.evaluate(quadrature.directions[q]) * std::sqrt(quadrature.weights[q]);
    }
    return values * values.transpose();
}

}  // namespace pdlra::pn
