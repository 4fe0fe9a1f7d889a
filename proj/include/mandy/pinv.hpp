#pragma once

#include "mandy/basis.hpp"
#include "mandy/linalg.hpp"
#include "mandy/tensor_train.hpp"

#include <vector>

namespace mandy {

/**
 * Pseudoinverse of the matricization T = mat(T | n_1..n_d ; m) of a tensor
 * train with d+1 cores, kept in factored form
 *
 *     T^+ = V^T diag(1/sigma) U~^T
 *
 * where U~ is the (n_1 ... n_d) x s matrix represented by `left_cores`
 * (all left-orthonormal, the last one with right rank s) and `right_core`
 * is the s x m factor with orthonormal rows. Read as a tensor with the
 * sample mode in front, this is a cyclic tensor train.
 */
struct TTPseudoinverse {
    std::vector<Core> left_cores;
    Matrix right_core;       ///< s x m
    Vector singular_values;  ///< descending, strictly positive
    Vector inverse_singular_values;
    double threshold_used = 0.0;

    Index rank() const { return singular_values.size(); }
    Index samples() const { return right_core.cols(); }
    std::vector<Index> row_modes() const;

    /// U~ as a dense (n_1 ... n_d) x s matrix.
    Matrix left_factor_dense(std::size_t cap = SizeCaps{}.dense_entries) const;
    /// The m x (n_1 ... n_d) pseudoinverse, densified.
    Matrix to_dense(std::size_t cap = SizeCaps{}.dense_entries) const;
};

/**
 * Pseudoinverts a TT with at least two cores, treating the last mode as the
 * column index. Left-orthonormalizes cores 1..d-1, right-orthonormalizes the
 * last core (skipped when `last_core_right_orthonormal` is set), then splits
 * core d with a truncated SVD. Every SVD discards sigma_k with
 * sigma_k / sigma_max < threshold (compact SVD for threshold 0).
 *
 * Throws DegenerateInput for an all-zero matricization.
 */
TTPseudoinverse tt_pinv(const TensorTrain& t, double threshold = 0.0,
                        bool last_core_right_orthonormal = false);

/**
 * Same algorithm specialised to a sparse basis tensor. The block-diagonal
 * cores are never expanded: the carried factor S V^T (s x m) of each SVD is
 * scaled block-wise into the next core, so the largest dense array is one
 * s x n x m core. The identity last core is right-orthonormal already.
 */
TTPseudoinverse tt_pinv(const BasisTensorTT& psi, double threshold = 0.0);

/**
 * Contracts a data matrix y (d_out x m) with the pseudoinverse: returns the
 * TT with modes (n_1, ..., n_d, d_out) whose first d cores are the
 * pseudoinverse's left cores and whose last core is diag(1/sigma) V y^T.
 * Its matricization X (features x d_out) satisfies X^T = y T^+.
 */
TensorTrain pinv_apply_left(const TTPseudoinverse& p, const Matrix& y);

} // namespace mandy
