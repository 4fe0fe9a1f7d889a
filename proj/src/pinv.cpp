#include "mandy/pinv.hpp"

#include "mandy/errors.hpp"

#include <stdexcept>
#include <string>

namespace mandy {

namespace {

void check_threshold(double threshold) {
    if (threshold < 0.0 || threshold >= 1.0) {
        throw std::invalid_argument("tt_pinv: threshold must lie in [0, 1)");
    }
}

TTPseudoinverse assemble(std::vector<Core> left_cores, Svd middle, const Matrix& last_right,
                         double threshold) {
    const Index s = retained_rank(middle.s, threshold);
    if (s == 0) {
        throw DegenerateInput("tt_pinv: matricization is zero");
    }
    truncate(middle, s);
    const Core& pre = left_cores.back();
    left_cores.back() = Core::from_left_unfolding(std::move(middle.u), pre.left_rank(),
                                                  pre.mode_size());
    TTPseudoinverse p;
    p.left_cores = std::move(left_cores);
    p.right_core = middle.vt * last_right;
    p.singular_values = std::move(middle.s);
    p.inverse_singular_values = p.singular_values.cwiseInverse();
    p.threshold_used = threshold;
    return p;
}

} // namespace

std::vector<Index> TTPseudoinverse::row_modes() const {
    std::vector<Index> modes;
    for (const Core& c : left_cores) {
        modes.push_back(c.mode_size());
    }
    return modes;
}

Matrix TTPseudoinverse::left_factor_dense(std::size_t cap) const {
    // Close the open rank index with an identity core and densify.
    std::vector<Core> cores = left_cores;
    Core closing(rank(), rank(), 1);
    for (Index k = 0; k < rank(); ++k) {
        closing(k, k, 0) = 1.0;
    }
    cores.push_back(std::move(closing));
    const DenseTensor full = tt_to_full(TensorTrain(std::move(cores)), cap);
    return full.matricize(full.order() - 1);
}

Matrix TTPseudoinverse::to_dense(std::size_t cap) const {
    const Matrix u = left_factor_dense(cap);
    return right_core.transpose() * inverse_singular_values.asDiagonal() * u.transpose();
}

TTPseudoinverse tt_pinv(const TensorTrain& t, double threshold,
                        bool last_core_right_orthonormal) {
    check_threshold(threshold);
    if (t.order() < 2) {
        throw ShapeMismatch("tt_pinv: need at least two cores");
    }
    for (const Core& c : t.cores()) {
        if (c.is_zero()) {
            throw DegenerateInput("tt_pinv: matricization is zero");
        }
    }
    const Index d = t.order() - 1;
    TensorTrain work = orthonormalize_left(t, d - 1, threshold);
    if (!last_core_right_orthonormal) {
        work = orthonormalize_right(work, d, threshold);
    }
    if (work.core(d).is_zero()) {
        throw DegenerateInput("tt_pinv: matricization is zero");
    }
    std::vector<Core> left(work.cores().begin(), work.cores().begin() + d);
    Svd middle = thin_svd(left.back().left_unfolding());
    return assemble(std::move(left), std::move(middle), Matrix(work.core(d).right_unfolding()),
                    threshold);
}

TTPseudoinverse tt_pinv(const BasisTensorTT& psi, double threshold) {
    check_threshold(threshold);
    const Index m = psi.samples;
    std::vector<Core> left;
    Matrix unfolding = psi.first; // (r * n) x m left unfolding of the current core
    Index prev_rank = 1;
    Index n = psi.first.rows();
    for (std::size_t i = 0;; ++i) {
        const bool last = i == psi.middle.size();
        Svd svd = thin_svd(std::move(unfolding));
        if (last) {
            left.push_back(Core(prev_rank, n, 1));
            // The identity core keeps V^T unchanged.
            return assemble(std::move(left), std::move(svd), Matrix::Identity(m, m), threshold);
        }
        const Index rank = retained_rank(svd.s, threshold);
        if (rank == 0) {
            throw DegenerateInput("tt_pinv: matricization is zero");
        }
        truncate(svd, rank);
        left.push_back(Core::from_left_unfolding(std::move(svd.u), prev_rank, n));
        const Matrix carry = svd.s.asDiagonal() * svd.vt; // rank x m

        // Absorb the carry into the next block-diagonal core:
        // next(a, j, k) = carry(a, block k) * block_k(j).
        const BlockDiagonalCore& core = psi.middle[i];
        n = core.mode_size;
        unfolding = Matrix::Zero(rank * n, m);
        for (Index b = 0; b < core.rank(); ++b) {
            const Index k = core.block_index[static_cast<std::size_t>(b)];
            for (Index j = 0; j < n; ++j) {
                unfolding.col(k).segment(j * rank, rank) = core.blocks(j, b) * carry.col(k);
            }
        }
        prev_rank = rank;
    }
}

TensorTrain pinv_apply_left(const TTPseudoinverse& p, const Matrix& y) {
    if (y.cols() != p.samples()) {
        throw ShapeMismatch("pinv_apply_left: data has " + std::to_string(y.cols()) +
                            " columns, pseudoinverse expects " + std::to_string(p.samples()));
    }
    const Matrix last = p.inverse_singular_values.asDiagonal() * (p.right_core * y.transpose());
    std::vector<Core> cores = p.left_cores;
    cores.push_back(Core::from_left_unfolding(
        Eigen::Map<const Matrix>(last.data(), last.size(), 1), p.rank(), y.rows()));
    return TensorTrain(std::move(cores));
}

} // namespace mandy
