#pragma once

#include "mandy/linalg.hpp"

#include <cstddef>
#include <limits>
#include <random>
#include <vector>

namespace mandy {

/**
 * Multi-index bijection used throughout the library: the first mode varies
 * fastest (colexicographic order), i.e. for modes (n_1, ..., n_d)
 *
 *     (j_1, ..., j_d) -> j_1 + n_1 * (j_2 + n_2 * (j_3 + ...)).
 *
 * Dense tensors are stored in this order, core unfoldings follow it, and the
 * columns of every matricization are vectorizations in this order.
 */
enum class IndexOrder { colexicographic };

/// Dense d-way array stored in colexicographic order.
struct DenseTensor {
    std::vector<Index> shape;
    Vector data;

    DenseTensor() = default;
    explicit DenseTensor(std::vector<Index> shape_);
    DenseTensor(std::vector<Index> shape_, Vector data_);

    static DenseTensor zeros(std::vector<Index> shape_) { return DenseTensor(std::move(shape_)); }

    Index size() const { return data.size(); }
    Index order() const { return static_cast<Index>(shape.size()); }

    /// Linear position of a multi-index under the global bijection.
    Index linear_index(const std::vector<Index>& index) const;
    double operator()(const std::vector<Index>& index) const { return data(linear_index(index)); }
    double& operator()(const std::vector<Index>& index) { return data(linear_index(index)); }

    /// Matricization with rows = modes [0, split) and columns = [split, d).
    Matrix matricize(Index split) const;
};

/// Product of mode sizes, saturating at SIZE_MAX instead of overflowing.
std::size_t checked_product(const std::vector<Index>& sizes);

/**
 * Order-3 TT core of shape (r_{i-1}, n_i, r_i).
 *
 * Internally the entries are kept as the left unfolding, a column-major
 * (r_{i-1} n_i) x r_i matrix with row index a + r_{i-1} j. The right
 * unfolding r_{i-1} x (n_i r_i) is the same memory read with column index
 * j + n_i b, so neither unfolding needs a copy.
 */
class Core {
public:
    Core() : Core(1, 1, 1) {}
    Core(Index left_rank, Index mode_size, Index right_rank);

    /// Builds a core from its left unfolding ((left_rank * mode_size) x r).
    static Core from_left_unfolding(Matrix left, Index left_rank, Index mode_size);
    /// Builds a core from its right unfolding (r x (mode_size * right_rank)).
    static Core from_right_unfolding(const Matrix& right, Index mode_size, Index right_rank);

    Index left_rank() const { return left_rank_; }
    Index mode_size() const { return mode_size_; }
    Index right_rank() const { return right_rank_; }
    Index size() const { return data_.size(); }

    double operator()(Index a, Index j, Index b) const { return data_(a + left_rank_ * j, b); }
    double& operator()(Index a, Index j, Index b) { return data_(a + left_rank_ * j, b); }

    const Matrix& left_unfolding() const { return data_; }
    Matrix& left_unfolding() { return data_; }
    Eigen::Map<const Matrix> right_unfolding() const {
        return {data_.data(), left_rank_, mode_size_ * right_rank_};
    }

    /// The r_{i-1} x r_i matrix T(:, j, :).
    Eigen::Map<const Matrix, 0, Eigen::OuterStride<>> slice(Index j) const {
        return {data_.data() + left_rank_ * j, left_rank_, right_rank_,
                Eigen::OuterStride<>(left_rank_ * mode_size_)};
    }

    bool is_zero() const { return data_.isZero(0.0); }

private:
    Index left_rank_;
    Index mode_size_;
    Index right_rank_;
    Matrix data_;
};

/// Matricization of a single core together with its mode split.
struct Unfolding {
    Matrix matrix;
    std::vector<Index> row_modes;
    std::vector<Index> col_modes;
    IndexOrder index_order = IndexOrder::colexicographic;
};

/// L(T): rows (r_{i-1}, n_i), columns r_i.
Unfolding left_unfold(const Core& core);
/// R(T): rows r_{i-1}, columns (n_i, r_i).
Unfolding right_unfold(const Core& core);
/// Inverse of left_unfold.
Core fold_left(const Unfolding& unfolding);
/// Inverse of right_unfold.
Core fold_right(const Unfolding& unfolding);

/// Tensor train: a chain of order-3 cores with boundary ranks 1.
class TensorTrain {
public:
    TensorTrain() = default;
    /// Validates r_0 = r_d = 1, matching adjacent ranks and positive sizes.
    explicit TensorTrain(std::vector<Core> cores);

    /// Rank-one zero tensor with the given modes.
    static TensorTrain zeros(const std::vector<Index>& mode_sizes);
    /// Rank-one tensor from one vector per mode.
    static TensorTrain rank_one(const std::vector<Vector>& factors);

    Index order() const { return static_cast<Index>(cores_.size()); }
    const std::vector<Core>& cores() const { return cores_; }
    const Core& core(Index i) const { return cores_[static_cast<std::size_t>(i)]; }

    std::vector<Index> mode_sizes() const;
    /// r_0, ..., r_d.
    std::vector<Index> ranks() const;
    /// Total number of stored core entries.
    std::size_t storage() const;

private:
    std::vector<Core> cores_;
};

/// Densifies a TT. Throws SizeCapExceeded above `cap` entries.
DenseTensor tt_to_full(const TensorTrain& t, std::size_t cap = SizeCaps{}.dense_entries);

/// TT-SVD of a dense array with the relative singular value cutoff of
/// retained_rank, optionally limiting every rank to `max_rank`.
TensorTrain tt_from_full(const DenseTensor& a, double threshold = 0.0,
                         Index max_rank = std::numeric_limits<Index>::max());

/// Makes cores [0, upto) left-orthonormal (upto <= order - 1). Ranks may
/// shrink to the compact SVD rank, or further when threshold > 0.
TensorTrain orthonormalize_left(const TensorTrain& t, Index upto, double threshold = 0.0);
/// Makes cores [from, order) right-orthonormal (from >= 1).
TensorTrain orthonormalize_right(const TensorTrain& t, Index from, double threshold = 0.0);

TensorTrain tt_add(const TensorTrain& a, const TensorTrain& b);
TensorTrain tt_scale(const TensorTrain& a, double s);

/// Inner product by sequential core contraction.
double tt_dot(const TensorTrain& a, const TensorTrain& b);
double tt_frobenius_norm(const TensorTrain& a);

/// Frobenius norm of a - b computed stably: the difference is
/// left-orthonormalized and the norm read off its last core.
double tt_distance(const TensorTrain& a, const TensorTrain& b);

/// Random TT with standard normal core entries; `ranks` holds r_1..r_{d-1}.
TensorTrain tt_random(const std::vector<Index>& mode_sizes, const std::vector<Index>& ranks,
                      std::mt19937_64& rng);

/// max |L^T L - I| over the left unfolding of a core.
double left_orthonormality_defect(const Core& core);
/// max |R R^T - I| over the right unfolding of a core.
double right_orthonormality_defect(const Core& core);

} // namespace mandy
