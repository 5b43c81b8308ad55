// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/pn/flux_matrices.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "protondlra/errors.hpp"

namespace pdlra::pn
{
namespace
{
constexpr double symmetry_tolerance = 1e-10;
// Entries below this are quadrature noise in structurally zero positions
constexpr double zero_threshold = 1e-13;

std::vector<std::vector<int>> components(Matrix const& a)
{
    int const n = static_cast<int>(a.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i)
        {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (int j = 0; j < n; ++j)
    {
        for (int i = 0; i < j; ++i)
        {
            if (a(i, j) != 0.0)
            {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i)
    {
        groups[find(i)].push_back(i);
    }
    std::vector<std::vector<int>> result;
    for (auto& g : groups)
    {
        if (!g.empty())
        {
            result.push_back(std::move(g));
        }
    }
    return result;
}

void split(Matrix const& a, Matrix& plus, Matrix& minus, Vector& eigenvalues)
{
    int const n = static_cast<int>(a.rows());
    plus = Matrix::Zero(n, n);
    minus = Matrix::Zero(n, n);
    eigenvalues.resize(n);
    int offset = 0;
    for (auto const& comp : components(a))
    {
        int const k = static_cast<int>(comp.size());
        Matrix block(k, k);
        for (int j = 0; j < k; ++j)
        {
            for (int i = 0; i < k; ++i)
            {
                block(i, j) = a(comp[i], comp[j]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(block);
        Matrix const& q = eig.eigenvectors();
        Vector const& lambda = eig.eigenvalues();
        Matrix const bp = q * lambda.cwiseMax(0.0).asDiagonal() * q.transpose();
        Matrix const bm = q * lambda.cwiseMin(0.0).asDiagonal() * q.transpose();
        for (int j = 0; j < k; ++j)
        {
            for (int i = 0; i < k; ++i)
            {
                plus(comp[i], comp[j]) = bp(i, j);
                minus(comp[i], comp[j]) = bm(i, j);
            }
        }
        eigenvalues.segment(offset, k) = lambda;
        offset += k;
    }
    std::sort(eigenvalues.data(), eigenvalues.data() + n);
}
}  // namespace

FluxMatrices build_flux_matrices(SHBasis const& basis)
{
    int const n_m = basis.size();
    int const degree = basis.degree();
    auto const quad = product_quadrature(2 * degree + 2);
    int const n_q = static_cast<int>(quad.size());

    Matrix values(n_m, n_q);
    for (int q = 0; q < n_q; ++q)
    {
        values.col(q) = basis.evaluate(quad.directions[q]);
    }

    FluxMatrices result;
    for (int axis = 0; axis < 3; ++axis)
    {
        Vector weights(n_q);
        for (int q = 0; q < n_q; ++q)
        {
            weights[q] = quad.weights[q] * quad.directions[q][axis];
        }
        Matrix a = Matrix::Zero(n_m, n_m);
        for (int l = 0; l <= degree; ++l)
        {
            int const row = l * l;
            int const rows = 2 * l + 1;
            Matrix const weighted = values.middleRows(row, rows) * weights.asDiagonal();
            for (int lp : {l - 1, l + 1})
            {
                if (lp < 0 || lp > degree)
                {
                    continue;
                }
                a.block(row, lp * lp, rows, 2 * lp + 1)
                    = weighted * values.middleRows(lp * lp, 2 * lp + 1).transpose();
            }
        }
        a = (a.array().abs() < zero_threshold).select(0.0, a);
        double const asym = (a - a.transpose()).cwiseAbs().maxCoeff();
        result.asymmetry = std::max(result.asymmetry, asym);
        if (asym > symmetry_tolerance)
        {
            throw AccuracyError(fmt::format(
                "flux matrix A_{} asymmetric by {:.3e} after assembly", axis + 1, asym));
        }
        a = 0.5 * (a + a.transpose());
        split(a, result.plus[axis], result.minus[axis], result.eigenvalues[axis]);
        result.a[axis] = std::move(a);
    }
    return result;
}

}  // namespace pdlra::pn
