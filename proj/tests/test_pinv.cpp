#include "support.hpp"

#include "mandy/basis.hpp"
#include "mandy/errors.hpp"
#include "mandy/pinv.hpp"

#include <doctest.h>

using namespace mandy;
using namespace testing;

namespace {

// mat(T | n_1..n_d ; m) through the independent slice-product oracle.
Matrix matricization(const TensorTrain& t) {
    const auto modes = t.mode_sizes();
    return reshape(tt_dense_oracle(t), modes, modes.size() - 1);
}

struct Penrose {
    double tpt, ptp, sym_tp, sym_pt;
};

Penrose penrose(const Matrix& t, const Matrix& p) {
    const Matrix tp = t * p;
    const Matrix pt = p * t;
    return {rel(tp * t, t), rel(pt * p, p), rel(tp.transpose(), tp), rel(pt.transpose(), pt)};
}

TensorTrain identity_train(Index n) {
    Core first(1, n, n);
    Core second(n, n, 1);
    for (Index j = 0; j < n; ++j) {
        first(0, j, j) = 1.0;
        second(j, j, 0) = 1.0;
    }
    return TensorTrain({first, second});
}

} // namespace

TEST_CASE("identity is its own pseudoinverse") {
    const TTPseudoinverse p = tt_pinv(identity_train(4));
    CHECK(p.rank() == 4);
    CHECK((p.singular_values.array() - 1.0).abs().maxCoeff() <= 1e-14);
    CHECK(rel(p.to_dense(), Matrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("Moore-Penrose conditions on a (3,3) x 5 train") {
    const TensorTrain t = tt_random({3, 3, 5}, {3, 3}, rng());
    const Matrix dense = matricization(t);
    const TTPseudoinverse p = tt_pinv(t);
    const Matrix pd = p.to_dense();
    const Penrose c = penrose(dense, pd);
    CHECK(c.tpt <= 1e-10);
    CHECK(c.ptp <= 1e-10);
    CHECK(c.sym_tp <= 1e-10);
    CHECK(c.sym_pt <= 1e-10);
    CHECK(rel(pd, jacobi_pinv(dense)) <= 1e-10);
}

TEST_CASE("threshold drops a tiny singular value") {
    // 9 x 5 matricization with singular values (1, 0.5, 0.25, 1e-12).
    const Eigen::HouseholderQR<Matrix> qu(random_matrix(9, 4));
    const Eigen::HouseholderQR<Matrix> qv(random_matrix(5, 4));
    const Matrix u = qu.householderQ() * Matrix::Identity(9, 4);
    const Matrix v = qv.householderQ() * Matrix::Identity(5, 4);
    const Vector s = (Vector(4) << 1.0, 0.5, 0.25, 1e-12).finished();
    const Matrix a = u * s.asDiagonal() * v.transpose();
    const TensorTrain t = tt_from_full(DenseTensor({3, 3, 5}, Eigen::Map<const Vector>(a.data(), a.size())));

    const TTPseudoinverse full = tt_pinv(t, 0.0);
    CHECK(full.rank() == 4);
    const TTPseudoinverse cut = tt_pinv(t, 1e-10);
    CHECK(cut.rank() == 3);
    CHECK(cut.threshold_used == 1e-10);
    const Vector inv = (Vector(4) << 1.0, 2.0, 4.0, 0.0).finished();
    const Matrix oracle = v * inv.asDiagonal() * u.transpose();
    CHECK(rel(cut.to_dense(), oracle) <= 1e-8);
}

TEST_CASE("pseudoinverse factor invariants") {
    for (int trial = 0; trial < 20; ++trial) {
        auto modes = random_modes(3, 4);
        modes.push_back(uniform_int(2, 30));
        const TensorTrain t = random_tt(modes, 4);
        const double eps = trial % 2 ? 0.0 : 1e-3;
        const TTPseudoinverse p = tt_pinv(t, eps);
        const Vector& s = p.singular_values;
        CHECK((s.array() > 0.0).all());
        for (Index k = 1; k < s.size(); ++k) {
            CHECK(s(k) <= s(k - 1));
        }
        CHECK(s(s.size() - 1) / s(0) >= eps);
        CHECK(rel(p.inverse_singular_values, s.cwiseInverse()) <= 1e-15);
        const Matrix u = p.left_factor_dense();
        CHECK((u.transpose() * u - Matrix::Identity(p.rank(), p.rank())).cwiseAbs().maxCoeff() <= 1e-12);
        const Matrix& v = p.right_core;
        CHECK((v * v.transpose() - Matrix::Identity(p.rank(), p.rank())).cwiseAbs().maxCoeff() <= 1e-12);
        for (std::size_t i = 0; i + 1 < p.left_cores.size(); ++i) {
            CHECK(left_orthonormality_defect(p.left_cores[i]) <= 1e-12);
        }
    }
}

TEST_CASE("property: four Moore-Penrose conditions on random trains") {
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto modes = random_modes(4, 5);
        modes.push_back(uniform_int(1, 50));
        if (checked_product(modes) > 2000 * 50) {
            continue;
        }
        const TensorTrain t = random_tt(modes, 5);
        const Matrix dense = matricization(t);
        const Penrose c = penrose(dense, tt_pinv(t).to_dense());
        CHECK(c.tpt <= 1e-10);
        CHECK(c.ptp <= 1e-10);
        CHECK(c.sym_tp <= 1e-10);
        CHECK(c.sym_pt <= 1e-10);
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("skipping the right sweep is exact for right-orthonormal last cores") {
    auto t = random_tt({3, 4, 6}, 3);
    t = orthonormalize_right(t, 2);
    const Matrix a = tt_pinv(t, 0.0, false).to_dense();
    const Matrix b = tt_pinv(t, 0.0, true).to_dense();
    CHECK(rel(b, a) <= 1e-12);
}

TEST_CASE("sparse basis path agrees with the generic path") {
    for (int trial = 0; trial < 10; ++trial) {
        const Index d = uniform_int(1, 3);
        const Index m = uniform_int(2, 25);
        const Matrix x = random_matrix(d, m);
        const Dictionary dict = trial % 2
            ? Dictionary{{BasisFunction::constant(), BasisFunction::monomial(1), BasisFunction::monomial(2)},
                         Layout::coordinate_major, false}
            : Dictionary{{BasisFunction::sine(), BasisFunction::cosine()}, Layout::function_major, true};
        const BasisTensorTT psi = build_basis_tt(dict, x);
        const Matrix sparse = tt_pinv(psi).to_dense();
        const Matrix generic = tt_pinv(psi.to_tensor_train()).to_dense();
        const Matrix oracle = jacobi_pinv(build_basis_matrix(dict, x));
        CHECK(rel(sparse, generic) <= 1e-9);
        CHECK(rel(sparse, oracle) <= 1e-9);
    }
}

TEST_CASE("pinv_apply_left") {
    SUBCASE("reproduces the data in the full-rank case") {
        // Matricization 12 x 8 with full column rank: Xi^T T = Y exactly.
        const TensorTrain t = tt_random({3, 4, 8}, {3, 8}, rng());
        const Matrix dense = matricization(t);
        const Matrix y = random_matrix(2, 12) * dense;
        const TensorTrain xi = pinv_apply_left(tt_pinv(t), y);
        CHECK(xi.mode_sizes() == std::vector<Index>{3, 4, 2});
        const Matrix xim = reshape(tt_dense_oracle(xi), xi.mode_sizes(), 2);
        CHECK(rel(xim.transpose() * dense, y) <= 1e-10);
        CHECK(rel(xim.transpose(), y * jacobi_pinv(dense)) <= 1e-10);
    }
    SUBCASE("zero data gives the zero tensor") {
        const TensorTrain t = random_tt({3, 3, 6}, 3);
        const TensorTrain xi = pinv_apply_left(tt_pinv(t), Matrix::Zero(3, 6));
        CHECK(tt_frobenius_norm(xi) == 0.0);
    }
    SUBCASE("column count must match") {
        const TensorTrain t = random_tt({3, 3, 6}, 3);
        CHECK_THROWS_AS(pinv_apply_left(tt_pinv(t), Matrix::Zero(2, 5)), ShapeMismatch);
    }
}

TEST_CASE("input validation") {
    const TensorTrain t = random_tt({3, 3, 4}, 2);
    CHECK_THROWS(tt_pinv(t, -0.1));
    CHECK_THROWS(tt_pinv(t, 1.0));
    CHECK_THROWS_AS(tt_pinv(TensorTrain::zeros({3, 3, 4})), DegenerateInput);
    CHECK_THROWS_AS(tt_pinv(TensorTrain::zeros({3})), ShapeMismatch);
    const Dictionary dict{{BasisFunction::monomial(1)}, Layout::coordinate_major, false};
    CHECK_THROWS_AS(tt_pinv(build_basis_tt(dict, Matrix::Zero(2, 5))), DegenerateInput);
}
