#pragma once

// Independent oracles and hand-rolled generators shared by the unit tests.
// Nothing here calls into the library's dense conversion or SVD paths.

#include "mandy/tensor_train.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <vector>

namespace testing {

using mandy::Index;
using mandy::Matrix;
using mandy::Vector;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline Index uniform_int(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng());
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Matrix random_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < m.size(); ++i) {
        m.data()[i] = uniform();
    }
    return m;
}

inline std::vector<Index> random_modes(Index max_order, Index max_size, Index min_order = 1) {
    std::vector<Index> modes(static_cast<std::size_t>(uniform_int(min_order, max_order)));
    for (auto& n : modes) {
        n = uniform_int(1, max_size);
    }
    return modes;
}

inline std::vector<Index> random_ranks(std::size_t count, Index max_rank) {
    std::vector<Index> ranks(count);
    for (auto& r : ranks) {
        r = uniform_int(1, max_rank);
    }
    return ranks;
}

// Entry of a TT by explicit slice products: T(j) = G1(j1) G2(j2) ... Gd(jd).
inline double tt_entry(const mandy::TensorTrain& t, const std::vector<Index>& index) {
    Matrix acc = Matrix::Ones(1, 1);
    for (Index i = 0; i < t.order(); ++i) {
        const auto& c = t.core(i);
        Matrix slice(c.left_rank(), c.right_rank());
        for (Index a = 0; a < c.left_rank(); ++a) {
            for (Index b = 0; b < c.right_rank(); ++b) {
                slice(a, b) = c(a, index[static_cast<std::size_t>(i)], b);
            }
        }
        acc = acc * slice;
    }
    return acc(0, 0);
}

// Full tensor by enumerating multi-indices with the first index fastest.
inline Vector tt_dense_oracle(const mandy::TensorTrain& t) {
    const auto modes = t.mode_sizes();
    Index total = 1;
    for (Index n : modes) {
        total *= n;
    }
    Vector out(total);
    std::vector<Index> idx(modes.size(), 0);
    for (Index lin = 0; lin < total; ++lin) {
        out(lin) = tt_entry(t, idx);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < modes[k]) {
                break;
            }
            idx[k] = 0;
        }
    }
    return out;
}

// Reshape of a colexicographic vector into rows = first `split` modes.
inline Matrix reshape(const Vector& v, const std::vector<Index>& modes, std::size_t split) {
    Index rows = 1;
    for (std::size_t k = 0; k < split; ++k) {
        rows *= modes[k];
    }
    return Eigen::Map<const Matrix>(v.data(), rows, v.size() / rows);
}

// Moore-Penrose inverse through Eigen's one-sided Jacobi SVD.
inline Matrix jacobi_pinv(const Matrix& a, double rel_cut = 1e-13) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    Vector inv = Vector::Zero(s.size());
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > rel_cut * s(0)) {
            inv(k) = 1.0 / s(k);
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

inline double rel(const Matrix& a, const Matrix& b) {
    const double nb = b.norm();
    return nb == 0.0 ? a.norm() : (a - b).norm() / nb;
}

inline mandy::TensorTrain random_tt(const std::vector<Index>& modes, Index max_rank) {
    return mandy::tt_random(modes, random_ranks(modes.size() - 1, max_rank), rng());
}

} // namespace testing
