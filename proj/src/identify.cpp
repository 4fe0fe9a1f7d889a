#include "mandy/identify.hpp"

#include "mandy/errors.hpp"
#include "mandy/pinv.hpp"

#include <chrono>

namespace mandy {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_data(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw ShapeMismatch("identify: X and Y must have the same shape");
    }
    if (x.cols() < 1 || x.rows() < 1) {
        throw ShapeMismatch("identify: need at least one snapshot of a non-empty state");
    }
}

std::vector<Index> full_modes(const CoefficientTensor& xi) {
    std::vector<Index> modes = xi.feature_modes();
    modes.push_back(xi.state_dim);
    return modes;
}

} // namespace

std::size_t CoefficientTensor::storage() const {
    if (const auto* m = std::get_if<Matrix>(&xi)) {
        return static_cast<std::size_t>(m->size());
    }
    return std::get<TensorTrain>(xi).storage();
}

CoefficientTensor mandy_identify(const Matrix& x, const Matrix& y, const Dictionary& dict,
                                 double threshold) {
    check_data(x, y);
    dict.validate();
    const auto start = Clock::now();
    const BasisTensorTT psi = build_basis_tt(dict, x);
    const TTPseudoinverse p = tt_pinv(psi, threshold);
    TensorTrain xi = pinv_apply_left(p, y);
    CoefficientTensor out{std::move(xi), dict, x.rows(), {}};
    out.meta.method = "mandy";
    out.meta.threshold = threshold;
    out.meta.samples = x.cols();
    out.meta.wall_time = seconds_since(start);
    return out;
}

CoefficientTensor sindy_identify(const Matrix& x, const Matrix& y, const Dictionary& dict,
                                 double cutoff, double threshold, std::size_t cap,
                                 SindyResult* details) {
    check_data(x, y);
    dict.validate();
    Matrix psi = build_basis_matrix(dict, x, cap);
    const auto start = Clock::now();
    SindyResult fit = cutoff > 0.0 ? sindy_threshold(psi, y, cutoff)
                                   : sindy_lstsq(std::move(psi), y, threshold);
    CoefficientTensor out{fit.xi, dict, x.rows(), {}};
    out.meta.wall_time = seconds_since(start);
    out.meta.method = "sindy";
    out.meta.threshold = threshold;
    out.meta.cutoff = cutoff;
    out.meta.samples = x.cols();
    out.meta.residual = fit.residual;
    if (details != nullptr) {
        *details = std::move(fit);
    }
    return out;
}

CoefficientTensor exact_coefficient_tensor(const SystemParams& system) {
    const Dictionary dict = reference_dictionary(system);
    CoefficientTensor out{exact_coefficients(system, dict), dict, state_dimension(system), {}};
    out.meta.method = "exact";
    return out;
}

Vector evaluate_rhs(const CoefficientTensor& xi, const Vector& x) {
    if (x.size() != xi.state_dim) {
        throw ShapeMismatch("evaluate_rhs: state has wrong dimension");
    }
    if (const auto* m = std::get_if<Matrix>(&xi.xi)) {
        return m->transpose() * feature_vector(xi.dictionary, x);
    }
    const TensorTrain& t = std::get<TensorTrain>(xi.xi);
    const std::vector<Vector> factors = eval_rank_one(xi.dictionary, x);
    if (static_cast<Index>(factors.size()) + 1 != t.order()) {
        throw ModeMismatch("evaluate_rhs: dictionary does not match the coefficient tensor");
    }
    // w runs over the current rank index; each core is contracted with its
    // factor through the right unfolding (column index j + n b).
    Eigen::RowVectorXd w = Eigen::RowVectorXd::Ones(1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Core& c = t.core(static_cast<Index>(i));
        const Eigen::RowVectorXd wr = w * c.right_unfolding();
        const Eigen::Map<const Matrix> slab(wr.data(), c.mode_size(), c.right_rank());
        w = factors[i].transpose() * slab;
    }
    return (w * t.cores().back().right_unfolding()).transpose();
}

Matrix to_dense_matrix(const CoefficientTensor& xi, std::size_t cap) {
    if (const auto* m = std::get_if<Matrix>(&xi.xi)) {
        if (static_cast<std::size_t>(m->size()) > cap) {
            throw SizeCapExceeded("to_dense_matrix: coefficient matrix exceeds the size cap");
        }
        return *m;
    }
    const DenseTensor full = tt_to_full(std::get<TensorTrain>(xi.xi), cap);
    return full.matricize(full.order() - 1);
}

TensorTrain to_tensor_train(const CoefficientTensor& xi) {
    if (const auto* t = std::get_if<TensorTrain>(&xi.xi)) {
        return *t;
    }
    const Matrix& m = std::get<Matrix>(xi.xi);
    return tt_from_full(DenseTensor(full_modes(xi), Eigen::Map<const Vector>(m.data(), m.size())));
}

double relative_error(const CoefficientTensor& a, const CoefficientTensor& b, std::size_t cap) {
    if (a.state_dim != b.state_dim || !(a.dictionary == b.dictionary)) {
        throw ModeMismatch("relative_error: coefficient tensors use different features");
    }
    const std::size_t entries = checked_product(full_modes(a));
    if (entries <= cap) {
        const Matrix da = to_dense_matrix(a, cap);
        const Matrix db = to_dense_matrix(b, cap);
        return (da - db).norm() / db.norm();
    }
    const TensorTrain ta = to_tensor_train(a);
    const TensorTrain tb = to_tensor_train(b);
    return tt_distance(ta, tb) / tt_frobenius_norm(tb);
}

double model_residual(const CoefficientTensor& xi, const Matrix& x, const Matrix& y) {
    check_data(x, y);
    double sq = 0.0;
    for (Index k = 0; k < x.cols(); ++k) {
        sq += (y.col(k) - evaluate_rhs(xi, x.col(k))).squaredNorm();
    }
    return std::sqrt(sq);
}

} // namespace mandy
