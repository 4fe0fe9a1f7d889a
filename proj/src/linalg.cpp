#include "mandy/linalg.hpp"

#include "mandy/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace mandy {

namespace {

lapack_int as_lapack(Index n) {
    return static_cast<lapack_int>(n);
}

std::size_t env_cap(const char* name, std::size_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    try {
        const double value = std::stod(raw);
        if (value < 1.0) {
            throw ConfigError(std::string(name) + " must be a positive entry count");
        }
        return static_cast<std::size_t>(value);
    } catch (const std::logic_error&) {
        throw ConfigError(std::string(name) + " is not a number: " + raw);
    }
}

} // namespace

Svd thin_svd(Matrix a) {
    const Index rows = a.rows();
    const Index cols = a.cols();
    const Index k = std::min(rows, cols);
    Svd out;
    out.s.resize(k);
    out.u.resize(rows, k);
    out.vt.resize(k, cols);
    if (k == 0) {
        return out;
    }
    Matrix backup;
    // dgesdd overwrites its input; keep a copy only if the fallback is needed.
    const bool small = rows * cols <= 1'000'000;
    if (small) {
        backup = a;
    }
    lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', as_lapack(rows), as_lapack(cols),
                                     a.data(), as_lapack(rows), out.s.data(), out.u.data(),
                                     as_lapack(rows), out.vt.data(), as_lapack(k));
    if (info > 0 && small) {
        Vector superb(std::max<Index>(k - 1, 1));
        info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'S', 'S', as_lapack(rows), as_lapack(cols),
                              backup.data(), as_lapack(rows), out.s.data(), out.u.data(),
                              as_lapack(rows), out.vt.data(), as_lapack(k), superb.data());
    }
    if (info != 0) {
        throw NumericalError("SVD failed (LAPACK info " + std::to_string(info) + ")");
    }
    return out;
}

Index retained_rank(const Vector& s, double threshold) {
    if (s.size() == 0 || !(s(0) > 0.0)) {
        return 0;
    }
    const double cutoff = std::max(threshold, kCompactTolerance) * s(0);
    Index rank = 0;
    while (rank < s.size() && s(rank) >= cutoff) {
        ++rank;
    }
    return rank;
}

void truncate(Svd& svd, Index rank) {
    svd.u.conservativeResize(Eigen::NoChange, rank);
    svd.s.conservativeResize(rank);
    svd.vt.conservativeResize(rank, Eigen::NoChange);
}

Matrix pinv_transpose_times(Matrix a, const Matrix& c, double threshold, Matrix* row_space) {
    const Index rows = a.rows();
    const Index cols = a.cols();
    if (c.rows() != cols) {
        throw ShapeMismatch("pinv_transpose_times: operand has " + std::to_string(c.rows()) +
                            " rows, expected " + std::to_string(cols));
    }
    if (rows < cols) {
        Svd svd = thin_svd(std::move(a));
        truncate(svd, retained_rank(svd.s, threshold));
        if (row_space != nullptr) {
            *row_space = svd.vt.transpose();
        }
        Matrix z = svd.vt * c;
        z = svd.s.cwiseInverse().asDiagonal() * z;
        return svd.u * z;
    }

    // Tall case: a = Q R, then SVD of the small triangular factor.
    Vector tau(cols);
    lapack_int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, as_lapack(rows), as_lapack(cols), a.data(),
                                     as_lapack(rows), tau.data());
    if (info != 0) {
        throw NumericalError("QR factorization failed (LAPACK info " + std::to_string(info) + ")");
    }
    Matrix r = a.topRows(cols).triangularView<Eigen::Upper>();
    Svd svd = thin_svd(std::move(r));
    truncate(svd, retained_rank(svd.s, threshold));
    if (row_space != nullptr) {
        *row_space = svd.vt.transpose();
    }
    Matrix z = svd.vt * c;
    z = svd.s.cwiseInverse().asDiagonal() * z;
    Matrix result = Matrix::Zero(rows, c.cols());
    result.topRows(cols) = svd.u * z;
    if (c.cols() > 0) {
        info = LAPACKE_dormqr(LAPACK_COL_MAJOR, 'L', 'N', as_lapack(rows), as_lapack(c.cols()),
                              as_lapack(cols), a.data(), as_lapack(rows), tau.data(),
                              result.data(), as_lapack(rows));
        if (info != 0) {
            throw NumericalError("applying Q failed (LAPACK info " + std::to_string(info) + ")");
        }
    }
    return result;
}

Matrix pinv_solve(Matrix a, const Matrix& b, double threshold) {
    if (b.rows() != a.rows()) {
        throw ShapeMismatch("pinv_solve: right-hand side row count does not match");
    }
    // A^+ B = ((A^T)^+)^T B
    Matrix at = a.transpose();
    a.resize(0, 0);
    return pinv_transpose_times(std::move(at), b, threshold);
}

Matrix pseudoinverse(const Matrix& a, double threshold) {
    Svd svd = thin_svd(a);
    truncate(svd, retained_rank(svd.s, threshold));
    return svd.vt.transpose() * svd.s.cwiseInverse().asDiagonal() * svd.u.transpose();
}

SizeCaps SizeCaps::from_environment() {
    SizeCaps caps;
    caps.dense_entries = env_cap("MANDY_DENSE_CAP", caps.dense_entries);
    caps.basis_matrix_entries = env_cap("MANDY_BASIS_CAP", caps.basis_matrix_entries);
    return caps;
}

} // namespace mandy
