// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/dlra/low_rank.hpp"

#include <algorithm>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "protondlra/errors.hpp"

namespace pdlra::dlra
{
LowRankState LowRankState::zero(Eigen::Index n_x, Eigen::Index n_m, int rank)
{
    if (n_x < 1 || n_m < 1 || rank < 1 || rank > std::min(n_x, n_m))
    {
        throw ValidationError("zero state needs 1 <= rank <= min(n_x, n_m)");
    }
    // Deterministic orthonormal X whose first column is uniform
    Matrix seed = Matrix::Zero(n_x, rank);
    seed.col(0).setOnes();
    for (int j = 1; j < rank; ++j)
    {
        seed(j, j) = 1.0;
    }
    LowRankState state;
    state.x = orthonormalize(seed);
    state.s = Matrix::Zero(rank, rank);
    state.v = Matrix::Identity(n_m, rank);
    return state;
}

LowRankState LowRankState::from_dense(Matrix const& u, double tolerance)
{
    Eigen::BDCSVD<Matrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector const& sigma = svd.singularValues();
    int r = 0;
    while (r < sigma.size() && sigma[r] > tolerance)
    {
        ++r;
    }
    if (r == 0)
    {
        return zero(u.rows(), u.cols());
    }
    LowRankState state;
    state.x = svd.matrixU().leftCols(r);
    state.s = sigma.head(r).asDiagonal();
    state.v = svd.matrixV().leftCols(r);
    return state;
}

double orthonormality_error(Matrix const& basis)
{
    return (basis.transpose() * basis - Matrix::Identity(basis.cols(), basis.cols())).norm();
}

Matrix orthonormalize(Matrix const& a)
{
    Eigen::Index const cols = std::min(a.rows(), a.cols());
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(a.rows(), cols);
}

}  // namespace pdlra::dlra
