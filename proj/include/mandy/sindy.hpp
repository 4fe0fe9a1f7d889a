#pragma once

#include "mandy/linalg.hpp"

#include <vector>

namespace mandy {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense coefficient fit Y ~ Xi^T Psi.
struct SindyResult {
    Matrix xi;              ///< features x d
    double residual = 0.0;  ///< ||Y - Xi^T Psi||_F
    BoolMatrix active_mask; ///< retained coefficients; inactive entries of xi are exactly 0
    int iterations = 0;
    /// Output dimensions whose support became empty (their column is zero).
    std::vector<Index> empty_columns;
};

/// Least-squares fit Xi^T = Y Psi^+ through the SVD pseudoinverse
/// (minimum-norm for rank-deficient Psi). psi is features x m, y is d x m.
SindyResult sindy_lstsq(const Matrix& psi, const Matrix& y, double threshold = 0.0);

/// Same fit, consuming psi so that large basis matrices are factorized in
/// place; the residual is recovered from the row space of psi.
SindyResult sindy_lstsq(Matrix&& psi, const Matrix& y, double threshold = 0.0);

/**
 * Sequentially thresholded least squares: fit, zero every |xi_jk| < cutoff,
 * refit each output column on its surviving features, and repeat until the
 * support stops changing or max_iter refits have been done. A column whose
 * support empties is reported in empty_columns and left at zero.
 */
SindyResult sindy_threshold(const Matrix& psi, const Matrix& y, double cutoff, int max_iter = 10);

} // namespace mandy
