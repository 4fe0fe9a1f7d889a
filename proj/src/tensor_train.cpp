#include "mandy/tensor_train.hpp"

#include "mandy/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mandy {

namespace {

std::string shape_string(const std::vector<Index>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out + ")";
}

void require_same_modes(const TensorTrain& a, const TensorTrain& b, const char* op) {
    if (a.mode_sizes() != b.mode_sizes()) {
        throw ModeMismatch(std::string(op) + ": mode sizes " + shape_string(a.mode_sizes()) +
                           " and " + shape_string(b.mode_sizes()) + " differ");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// DenseTensor

std::size_t checked_product(const std::vector<Index>& sizes) {
    std::size_t total = 1;
    for (Index n : sizes) {
        const auto u = static_cast<std::size_t>(n);
        if (u != 0 && total > std::numeric_limits<std::size_t>::max() / u) {
            return std::numeric_limits<std::size_t>::max();
        }
        total *= u;
    }
    return total;
}

DenseTensor::DenseTensor(std::vector<Index> shape_) : shape(std::move(shape_)) {
    data = Vector::Zero(static_cast<Index>(checked_product(shape)));
}

DenseTensor::DenseTensor(std::vector<Index> shape_, Vector data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
    if (static_cast<std::size_t>(data.size()) != checked_product(shape)) {
        throw ShapeMismatch("DenseTensor: data length does not match shape " + shape_string(shape));
    }
}

Index DenseTensor::linear_index(const std::vector<Index>& index) const {
    if (index.size() != shape.size()) {
        throw ShapeMismatch("DenseTensor: index has wrong order");
    }
    Index pos = 0;
    for (std::size_t k = shape.size(); k-- > 0;) {
        pos = pos * shape[k] + index[k];
    }
    return pos;
}

Matrix DenseTensor::matricize(Index split) const {
    const std::vector<Index> rows_modes(shape.begin(), shape.begin() + split);
    const auto rows = static_cast<Index>(checked_product(rows_modes));
    return Eigen::Map<const Matrix>(data.data(), rows, rows == 0 ? 0 : data.size() / rows);
}

// ---------------------------------------------------------------------------
// Core and unfoldings

Core::Core(Index left_rank, Index mode_size, Index right_rank)
    : left_rank_(left_rank), mode_size_(mode_size), right_rank_(right_rank),
      data_(Matrix::Zero(left_rank * mode_size, right_rank)) {
    if (left_rank < 1 || mode_size < 1 || right_rank < 1) {
        throw ShapeMismatch("Core: ranks and mode size must be positive");
    }
}

Core Core::from_left_unfolding(Matrix left, Index left_rank, Index mode_size) {
    if (left.rows() != left_rank * mode_size) {
        throw ShapeMismatch("Core::from_left_unfolding: row count is not r*n");
    }
    Core core(left_rank, mode_size, left.cols());
    core.data_ = std::move(left);
    return core;
}

Core Core::from_right_unfolding(const Matrix& right, Index mode_size, Index right_rank) {
    if (right.cols() != mode_size * right_rank) {
        throw ShapeMismatch("Core::from_right_unfolding: column count is not n*r");
    }
    Core core(right.rows(), mode_size, right_rank);
    core.data_ = Eigen::Map<const Matrix>(right.data(), right.rows() * mode_size, right_rank);
    return core;
}

Unfolding left_unfold(const Core& core) {
    return {core.left_unfolding(), {core.left_rank(), core.mode_size()}, {core.right_rank()}};
}

Unfolding right_unfold(const Core& core) {
    return {core.right_unfolding(), {core.left_rank()}, {core.mode_size(), core.right_rank()}};
}

Core fold_left(const Unfolding& u) {
    if (u.row_modes.size() != 2 || u.col_modes.size() != 1) {
        throw ShapeMismatch("fold_left: expected (r, n) x r' unfolding");
    }
    return Core::from_left_unfolding(u.matrix, u.row_modes[0], u.row_modes[1]);
}

Core fold_right(const Unfolding& u) {
    if (u.row_modes.size() != 1 || u.col_modes.size() != 2) {
        throw ShapeMismatch("fold_right: expected r x (n, r') unfolding");
    }
    return Core::from_right_unfolding(u.matrix, u.col_modes[0], u.col_modes[1]);
}

// ---------------------------------------------------------------------------
// TensorTrain

TensorTrain::TensorTrain(std::vector<Core> cores) : cores_(std::move(cores)) {
    if (cores_.empty()) {
        throw ShapeMismatch("TensorTrain: at least one core is required");
    }
    if (cores_.front().left_rank() != 1 || cores_.back().right_rank() != 1) {
        throw ShapeMismatch("TensorTrain: boundary ranks must be 1");
    }
    for (std::size_t i = 0; i + 1 < cores_.size(); ++i) {
        if (cores_[i].right_rank() != cores_[i + 1].left_rank()) {
            throw ShapeMismatch("TensorTrain: rank mismatch between cores " + std::to_string(i) +
                                " and " + std::to_string(i + 1));
        }
    }
}

TensorTrain TensorTrain::zeros(const std::vector<Index>& mode_sizes) {
    std::vector<Core> cores;
    cores.reserve(mode_sizes.size());
    for (Index n : mode_sizes) {
        cores.emplace_back(1, n, 1);
    }
    return TensorTrain(std::move(cores));
}

TensorTrain TensorTrain::rank_one(const std::vector<Vector>& factors) {
    std::vector<Core> cores;
    cores.reserve(factors.size());
    for (const Vector& f : factors) {
        cores.push_back(Core::from_left_unfolding(f, 1, f.size()));
    }
    return TensorTrain(std::move(cores));
}

std::vector<Index> TensorTrain::mode_sizes() const {
    std::vector<Index> out;
    out.reserve(cores_.size());
    for (const Core& c : cores_) {
        out.push_back(c.mode_size());
    }
    return out;
}

std::vector<Index> TensorTrain::ranks() const {
    std::vector<Index> out{1};
    for (const Core& c : cores_) {
        out.push_back(c.right_rank());
    }
    return out;
}

std::size_t TensorTrain::storage() const {
    std::size_t total = 0;
    for (const Core& c : cores_) {
        total += static_cast<std::size_t>(c.size());
    }
    return total;
}

// ---------------------------------------------------------------------------
// Conversion

DenseTensor tt_to_full(const TensorTrain& t, std::size_t cap) {
    const std::vector<Index> modes = t.mode_sizes();
    const std::size_t total = checked_product(modes);
    if (total > cap) {
        throw SizeCapExceeded("tt_to_full: " + std::to_string(total) + " entries exceed cap " +
                              std::to_string(cap));
    }
    // Contract right to left; acc is r_{i-1} x (n_i ... n_d) in colex order.
    const Core& last = t.cores().back();
    Matrix acc = last.right_unfolding();
    for (Index i = t.order() - 2; i >= 0; --i) {
        const Core& c = t.core(i);
        Matrix product = c.left_unfolding() * acc;
        acc = Eigen::Map<const Matrix>(product.data(), c.left_rank(),
                                       c.mode_size() * product.cols());
    }
    return DenseTensor(modes, Eigen::Map<const Vector>(acc.data(), acc.size()));
}

TensorTrain tt_from_full(const DenseTensor& a, double threshold, Index max_rank) {
    if (a.order() < 1) {
        throw ShapeMismatch("tt_from_full: array must have at least one mode");
    }
    if (threshold < 0.0 || threshold >= 1.0) {
        throw std::invalid_argument("tt_from_full: threshold must lie in [0, 1)");
    }
    const std::vector<Index>& modes = a.shape;
    const Index d = a.order();
    std::vector<Core> cores;
    cores.reserve(static_cast<std::size_t>(d));
    Index prev_rank = 1;
    Index rest = a.size();
    Matrix carry = Eigen::Map<const Matrix>(a.data.data(), 1, a.size());
    for (Index i = 0; i + 1 < d; ++i) {
        const Index n = modes[static_cast<std::size_t>(i)];
        rest /= n;
        Matrix unfolding = Eigen::Map<const Matrix>(carry.data(), prev_rank * n, rest);
        Svd svd = thin_svd(std::move(unfolding));
        const Index rank = std::min(retained_rank(svd.s, threshold), max_rank);
        if (rank == 0) {
            return TensorTrain::zeros(modes);
        }
        truncate(svd, rank);
        cores.push_back(Core::from_left_unfolding(std::move(svd.u), prev_rank, n));
        carry = svd.s.asDiagonal() * svd.vt;
        prev_rank = rank;
    }
    cores.push_back(Core::from_left_unfolding(
        Eigen::Map<const Matrix>(carry.data(), prev_rank * modes.back(), 1), prev_rank,
        modes.back()));
    return TensorTrain(std::move(cores));
}

// ---------------------------------------------------------------------------
// Orthonormalization

TensorTrain orthonormalize_left(const TensorTrain& t, Index upto, double threshold) {
    if (upto < 0 || upto > t.order() - 1) {
        throw std::out_of_range("orthonormalize_left: upto must lie in [0, order-1]");
    }
    std::vector<Core> cores = t.cores();
    for (Index i = 0; i < upto; ++i) {
        auto& core = cores[static_cast<std::size_t>(i)];
        auto& next = cores[static_cast<std::size_t>(i + 1)];
        Svd svd = thin_svd(core.left_unfolding());
        const Index rank = retained_rank(svd.s, threshold);
        if (rank == 0) {
            return TensorTrain::zeros(t.mode_sizes());
        }
        truncate(svd, rank);
        const Index r0 = core.left_rank();
        const Index n = core.mode_size();
        core = Core::from_left_unfolding(std::move(svd.u), r0, n);
        const Matrix carry = svd.s.asDiagonal() * svd.vt;
        next = Core::from_right_unfolding(carry * next.right_unfolding(), next.mode_size(),
                                          next.right_rank());
    }
    return TensorTrain(std::move(cores));
}

TensorTrain orthonormalize_right(const TensorTrain& t, Index from, double threshold) {
    if (from < 1 || from > t.order()) {
        throw std::out_of_range("orthonormalize_right: from must lie in [1, order]");
    }
    std::vector<Core> cores = t.cores();
    for (Index i = t.order() - 1; i >= from; --i) {
        auto& core = cores[static_cast<std::size_t>(i)];
        auto& prev = cores[static_cast<std::size_t>(i - 1)];
        Svd svd = thin_svd(Matrix(core.right_unfolding()));
        const Index rank = retained_rank(svd.s, threshold);
        if (rank == 0) {
            return TensorTrain::zeros(t.mode_sizes());
        }
        truncate(svd, rank);
        core = Core::from_right_unfolding(svd.vt, core.mode_size(), core.right_rank());
        const Matrix carry = svd.u * svd.s.asDiagonal();
        prev = Core::from_left_unfolding(prev.left_unfolding() * carry, prev.left_rank(),
                                         prev.mode_size());
    }
    return TensorTrain(std::move(cores));
}

// ---------------------------------------------------------------------------
// Arithmetic

TensorTrain tt_add(const TensorTrain& a, const TensorTrain& b) {
    require_same_modes(a, b, "tt_add");
    const Index d = a.order();
    if (d == 1) {
        Core sum = a.core(0);
        sum.left_unfolding() += b.core(0).left_unfolding();
        return TensorTrain({sum});
    }
    std::vector<Core> cores;
    cores.reserve(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
        const Core& ca = a.core(i);
        const Core& cb = b.core(i);
        const Index n = ca.mode_size();
        const bool first = i == 0;
        const bool last = i == d - 1;
        const Index r0 = first ? 1 : ca.left_rank() + cb.left_rank();
        const Index r1 = last ? 1 : ca.right_rank() + cb.right_rank();
        Core c(r0, n, r1);
        const Index a0 = first ? 0 : ca.left_rank();
        const Index a1 = last ? 0 : ca.right_rank();
        for (Index j = 0; j < n; ++j) {
            for (Index x = 0; x < ca.left_rank(); ++x) {
                for (Index y = 0; y < ca.right_rank(); ++y) {
                    c(x, j, y) = ca(x, j, y);
                }
            }
            for (Index x = 0; x < cb.left_rank(); ++x) {
                for (Index y = 0; y < cb.right_rank(); ++y) {
                    c(a0 + x, j, a1 + y) = cb(x, j, y);
                }
            }
        }
        cores.push_back(std::move(c));
    }
    return TensorTrain(std::move(cores));
}

TensorTrain tt_scale(const TensorTrain& a, double s) {
    std::vector<Core> cores = a.cores();
    cores.front().left_unfolding() *= s;
    return TensorTrain(std::move(cores));
}

double tt_dot(const TensorTrain& a, const TensorTrain& b) {
    require_same_modes(a, b, "tt_dot");
    Matrix w = Matrix::Ones(1, 1);
    for (Index i = 0; i < a.order(); ++i) {
        const Core& ca = a.core(i);
        const Core& cb = b.core(i);
        // (W * B_j) for all j, laid out as an (ra0 * n) x rb1 left unfolding.
        Matrix wb = w * cb.right_unfolding();
        Eigen::Map<const Matrix> stacked(wb.data(), ca.left_rank() * ca.mode_size(),
                                         cb.right_rank());
        w = ca.left_unfolding().transpose() * stacked;
    }
    return w(0, 0);
}

double tt_frobenius_norm(const TensorTrain& a) {
    return std::sqrt(std::max(0.0, tt_dot(a, a)));
}

double tt_distance(const TensorTrain& a, const TensorTrain& b) {
    const TensorTrain diff = tt_add(a, tt_scale(b, -1.0));
    // Householder sweep: orthogonal transforms only, nothing is truncated.
    Matrix carry = Matrix::Ones(1, 1);
    for (Index i = 0; i < diff.order(); ++i) {
        const Core& c = diff.core(i);
        Matrix merged = carry * c.right_unfolding();
        Matrix left = Eigen::Map<const Matrix>(merged.data(), carry.rows() * c.mode_size(),
                                               c.right_rank());
        if (i + 1 == diff.order()) {
            return left.norm();
        }
        Eigen::HouseholderQR<Matrix> qr(left);
        const Index k = std::min(left.rows(), left.cols());
        carry = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    }
    return 0.0;
}

TensorTrain tt_random(const std::vector<Index>& mode_sizes, const std::vector<Index>& ranks,
                      std::mt19937_64& rng) {
    if (ranks.size() + 1 != mode_sizes.size()) {
        throw ShapeMismatch("tt_random: need order-1 interior ranks");
    }
    std::normal_distribution<double> normal;
    std::vector<Core> cores;
    for (std::size_t i = 0; i < mode_sizes.size(); ++i) {
        const Index r0 = i == 0 ? 1 : ranks[i - 1];
        const Index r1 = i + 1 == mode_sizes.size() ? 1 : ranks[i];
        Core c(r0, mode_sizes[i], r1);
        for (Index k = 0; k < c.left_unfolding().size(); ++k) {
            c.left_unfolding().data()[k] = normal(rng);
        }
        cores.push_back(std::move(c));
    }
    return TensorTrain(std::move(cores));
}

double left_orthonormality_defect(const Core& core) {
    const Matrix& l = core.left_unfolding();
    return (l.transpose() * l - Matrix::Identity(l.cols(), l.cols())).cwiseAbs().maxCoeff();
}

double right_orthonormality_defect(const Core& core) {
    const auto r = core.right_unfolding();
    return (r * r.transpose() - Matrix::Identity(r.rows(), r.rows())).cwiseAbs().maxCoeff();
}

} // namespace mandy
