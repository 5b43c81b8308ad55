// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "protondlra/types.hpp"

namespace pdlra::dlra
{
//---------------------------------------------------------------------------//
/*!
 * Factored matrix u = X S V^T with orthonormal columns in X (n_x x r) and
 * V (n_m x r).
 */
struct LowRankState
{
    Matrix x;
    Matrix s;
    Matrix v;

    int rank() const { return static_cast<int>(s.rows()); }
    Eigen::Index rows() const { return x.rows(); }
    Eigen::Index cols() const { return v.rows(); }

    //! Number of stored scalars, r (n_x + n_m) + r^2
    std::size_t element_count() const
    {
        return static_cast<std::size_t>(x.size() + s.size() + v.size());
    }

    Matrix dense() const { return x * s * v.transpose(); }

    //! Column k of u without forming the dense matrix
    Vector column(Eigen::Index k) const { return x * (s * v.row(k).transpose()); }

    //! Zero matrix at the given rank with S = 0
    static LowRankState zero(Eigen::Index n_x, Eigen::Index n_m, int rank = 1);
    //! Exact factorization of a dense matrix (SVD, zero singular values dropped)
    static LowRankState from_dense(Matrix const& u, double tolerance = 0.0);
};

//! ||X^T X - I||_F
double orthonormality_error(Matrix const& basis);

//! Thin Q factor of a Householder QR, capped at min(rows, cols) columns
Matrix orthonormalize(Matrix const& a);

}  // namespace pdlra::dlra
