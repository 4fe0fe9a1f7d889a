#include "mandy/sindy.hpp"

#include "mandy/errors.hpp"

#include <stdexcept>
#include <string>

namespace mandy {

namespace {

void check_shapes(const Matrix& psi, const Matrix& y) {
    if (psi.cols() != y.cols()) {
        throw ShapeMismatch("sindy: basis matrix has " + std::to_string(psi.cols()) +
                            " columns but data has " + std::to_string(y.cols()));
    }
}

double residual_of(const Matrix& psi, const Matrix& y, const Matrix& xi) {
    return (y - xi.transpose() * psi).norm();
}

} // namespace

SindyResult sindy_lstsq(Matrix&& psi, const Matrix& y, double threshold) {
    check_shapes(psi, y);
    SindyResult result;
    Matrix row_space;
    result.xi = pinv_transpose_times(std::move(psi), y.transpose(), threshold, &row_space);
    // Xi^T Psi = Y Psi^+ Psi = Y P P^T with P the row space basis.
    const Matrix fitted = (y * row_space) * row_space.transpose();
    result.residual = (y - fitted).norm();
    result.active_mask = BoolMatrix::Constant(result.xi.rows(), result.xi.cols(), true);
    result.iterations = 1;
    return result;
}

SindyResult sindy_lstsq(const Matrix& psi, const Matrix& y, double threshold) {
    return sindy_lstsq(Matrix(psi), y, threshold);
}

SindyResult sindy_threshold(const Matrix& psi, const Matrix& y, double cutoff, int max_iter) {
    if (cutoff < 0.0) {
        throw std::invalid_argument("sindy_threshold: cutoff must be non-negative");
    }
    SindyResult result = sindy_lstsq(psi, y);
    if (cutoff == 0.0) {
        return result;
    }
    const Index features = psi.rows();
    BoolMatrix mask = result.xi.cwiseAbs().array() >= cutoff;
    for (int iter = 0; iter < max_iter; ++iter) {
        Matrix xi = Matrix::Zero(features, y.rows());
        result.empty_columns.clear();
        for (Index col = 0; col < y.rows(); ++col) {
            std::vector<Index> support;
            for (Index f = 0; f < features; ++f) {
                if (mask(f, col)) {
                    support.push_back(f);
                }
            }
            if (support.empty()) {
                result.empty_columns.push_back(col);
                continue;
            }
            Matrix sub(static_cast<Index>(support.size()), psi.cols());
            for (std::size_t s = 0; s < support.size(); ++s) {
                sub.row(static_cast<Index>(s)) = psi.row(support[s]);
            }
            const Matrix coef = pinv_transpose_times(std::move(sub), y.row(col).transpose());
            for (std::size_t s = 0; s < support.size(); ++s) {
                xi(support[s], col) = coef(static_cast<Index>(s), 0);
            }
        }
        result.xi = std::move(xi);
        result.iterations = iter + 2;
        const BoolMatrix next = mask.array() && (result.xi.cwiseAbs().array() >= cutoff);
        if (next == mask) {
            break;
        }
        mask = next;
        // Entries that fell below the cutoff are dropped before the next refit.
        result.xi = mask.select(result.xi, 0.0);
    }
    result.active_mask = mask;
    result.xi = mask.select(result.xi, 0.0);
    result.residual = residual_of(psi, y, result.xi);
    return result;
}

} // namespace mandy
