#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace mandy {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative cutoff applied when a caller asks for a compact (untruncated)
/// SVD. Singular values below this fraction of the largest are treated as
/// exact zeros.
inline constexpr double kCompactTolerance = 1e-14;

/// Thin singular value decomposition A = U diag(s) Vt with descending s.
struct Svd {
    Matrix u;
    Vector s;
    Matrix vt;
};

/// Thin SVD through LAPACK (divide and conquer, falling back to QR iteration
/// if that fails to converge). Consumes its argument.
Svd thin_svd(Matrix a);

/// Number of leading singular values kept under the relative threshold rule
/// sigma_k / sigma_max >= max(threshold, kCompactTolerance). Returns 0 for an
/// all-zero spectrum.
Index retained_rank(const Vector& s, double threshold);

/// Truncates an SVD in place to its first `rank` triplets.
void truncate(Svd& svd, Index rank);

/// Minimum-norm least-squares solution of A * X = B via an SVD-based
/// pseudoinverse of A, discarding singular values below the relative
/// threshold. A is consumed (factorized in place when tall).
Matrix pinv_solve(Matrix a, const Matrix& b, double threshold = 0.0);

/// Returns (A^+)^T * C, i.e. the minimum-norm solution X of A^T X = C.
/// A (rows x cols) is consumed; C must have `cols` rows. Tall inputs are
/// reduced by an in-place QR first so only A itself is held densely.
/// If `row_space` is given it receives an orthonormal basis (cols x rank)
/// of the row space of A, so A^+ A = row_space * row_space^T.
Matrix pinv_transpose_times(Matrix a, const Matrix& c, double threshold = 0.0,
                            Matrix* row_space = nullptr);

/// Dense SVD pseudoinverse with the same cutoff rule as pinv_solve.
Matrix pseudoinverse(const Matrix& a, double threshold = 0.0);

/// Entry caps guarding densification. Overridable through the environment
/// variables MANDY_DENSE_CAP and MANDY_BASIS_CAP.
struct SizeCaps {
    /// Largest dense tensor materialized by tt_to_full and friends.
    std::size_t dense_entries = 10'000'000;
    /// Largest dense basis matrix (features x snapshots) built for SINDy.
    std::size_t basis_matrix_entries = 150'000'000;

    static SizeCaps from_environment();
};

} // namespace mandy
