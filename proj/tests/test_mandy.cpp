#include "support.hpp"

#include "mandy/errors.hpp"
#include "mandy/identify.hpp"
#include "mandy/systems.hpp"

#include <doctest.h>

#include <cmath>

using namespace mandy;
using namespace testing;

namespace {

SnapshotSet chua_snapshots() {
    SnapshotSpec spec;
    spec.system = ChuaParams{};
    spec.mode = SamplingMode::trajectory;
    spec.grid = TimeGrid::over(0.0, 20.0, 0.01, false);
    return generate_snapshots(spec);
}

SnapshotSet kuramoto_snapshots(Index d, double t_end, std::uint64_t seed) {
    SnapshotSpec spec;
    spec.system = KuramotoParams::equidistant(d);
    spec.mode = SamplingMode::trajectory;
    spec.grid = TimeGrid::over(0.0, t_end, 0.1, true);
    spec.seed = seed;
    return generate_snapshots(spec);
}

SnapshotSet fpu_snapshots(Index d, Index m, std::uint64_t seed) {
    SnapshotSpec spec;
    spec.system = FpuParams{d, 0.7};
    spec.m = m;
    spec.seed = seed;
    return generate_snapshots(spec);
}

// max_x ||fit(x) - F(x)|| / (1 + ||F(x)||) over random states in the box.
double fidelity(const CoefficientTensor& xi, const SystemParams& system, double lo, double hi) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        Vector x(state_dimension(system));
        for (Index i = 0; i < x.size(); ++i) {
            x(i) = uniform(lo, hi);
        }
        const Vector f = system_rhs(system, x);
        worst = std::max(worst, (evaluate_rhs(xi, x) - f).norm() / (1.0 + f.norm()));
    }
    return worst;
}

CoefficientTensor as_tt(const CoefficientTensor& dense) {
    CoefficientTensor out = dense;
    out.xi = to_tensor_train(dense);
    return out;
}

} // namespace

TEST_CASE("evaluate_rhs on exact tensors") {
    const CoefficientTensor chua = exact_coefficient_tensor(ChuaParams{});
    CHECK(evaluate_rhs(chua, Vector::Zero(3)).norm() == 0.0);
    const Vector e1 = (Vector(3) << 1, 0, 0).finished();
    const Vector expected = (Vector(3) << 50.0 / 63.0, 1.0, 0.0).finished();
    CHECK((evaluate_rhs(chua, e1) - expected).norm() <= 1e-14);

    const KuramotoParams kp = KuramotoParams::equidistant(7);
    const CoefficientTensor kur = exact_coefficient_tensor(kp);
    CHECK((evaluate_rhs(kur, Vector::Zero(7)) - kp.omega).norm() <= 1e-13);

    CHECK_THROWS_AS(evaluate_rhs(chua, Vector::Zero(4)), ShapeMismatch);
}

TEST_CASE("relative_error") {
    const SnapshotSet s = fpu_snapshots(3, 200, 5);
    const CoefficientTensor dense = sindy_identify(s.x, s.y, fpu_dictionary());
    CHECK(relative_error(dense, dense) <= 1e-12);
    const CoefficientTensor tt = as_tt(dense);
    CHECK(relative_error(tt, dense) <= 1e-10);
    CHECK(relative_error(dense, tt) <= 1e-10);
    // Forcing the tensor-train path must give the same answer.
    CHECK(relative_error(tt, dense, 1) <= 1e-10);
    const CoefficientTensor exact = exact_coefficient_tensor(FpuParams{3, 0.7});
    CHECK(std::abs(relative_error(dense, exact) - relative_error(dense, exact, 1)) <= 1e-10);

    const SnapshotSet other = fpu_snapshots(4, 300, 5);
    CHECK_THROWS_AS(relative_error(dense, sindy_identify(other.x, other.y, fpu_dictionary())), ModeMismatch);
}

TEST_CASE("Chua with the function-major dictionary is recovered exactly") {
    const SnapshotSet s = chua_snapshots();
    REQUIRE(s.x.cols() == 2000);
    const CoefficientTensor exact = exact_coefficient_tensor(ChuaParams{});
    const CoefficientTensor fit = mandy_identify(s.x, s.y, chua_function_major_dictionary());
    CHECK(fit.is_tt());
    CHECK(fit.meta.method == "mandy");
    CHECK(fit.meta.samples == 2000);
    CHECK(fit.meta.wall_time >= 0.0);
    CHECK(relative_error(fit, exact) <= 1e-8);
    CHECK(model_residual(fit, s.x, s.y) <= 1e-8 * s.y.norm());
}

TEST_CASE("Kuramoto desk-scale recovery") {
    // d = 10: (d+1)^2 = 121 features per output, t_end = 100 gives 1001 samples.
    const SnapshotSet s = kuramoto_snapshots(10, 100.0, 3);
    REQUIRE(s.x.cols() >= 2 * 121);
    const CoefficientTensor fit = mandy_identify(s.x, s.y, kuramoto_dictionary());
    CHECK(relative_error(fit, exact_coefficient_tensor(s.system)) <= 1e-4);
}

TEST_CASE("property: mandy agrees with sindy on well-conditioned problems") {
    // Dictionaries whose product features are well separated on [-1, 1]:
    // the agreement is limited by the conditioning of Psi, not by the method.
    const std::vector<Dictionary> dictionaries{
        {{BasisFunction::constant(), BasisFunction::monomial(1), BasisFunction::monomial(2)},
         Layout::coordinate_major, false},
        {{BasisFunction::sine(), BasisFunction::cosine()}, Layout::function_major, true},
        {{BasisFunction::monomial(1), BasisFunction::absolute()}, Layout::function_major, true},
    };
    for (int trial = 0; trial < 30; ++trial) {
        const Dictionary& dict = dictionaries[static_cast<std::size_t>(trial % 3)];
        const Index d = uniform_int(1, 4);
        const Index features = static_cast<Index>(dict.feature_count(d));
        const Index m = uniform_int(1, 3 * features);
        if (static_cast<std::size_t>(features * m) > 1000000) {
            continue;
        }
        const Matrix x = random_matrix(d, m);
        const Matrix y = random_matrix(d, m);
        const CoefficientTensor a = mandy_identify(x, y, dict);
        const CoefficientTensor b = sindy_identify(x, y, dict);
        CHECK(relative_error(a, b) <= 1e-8);
    }
}

TEST_CASE("property: tensor-train and dense evaluation agree") {
    for (int trial = 0; trial < 10; ++trial) {
        const Index d = uniform_int(2, 5);
        const SnapshotSet s = fpu_snapshots(d, uniform_int(50, 400), static_cast<std::uint64_t>(trial));
        const CoefficientTensor tt = mandy_identify(s.x, s.y, fpu_dictionary());
        CoefficientTensor dense = tt;
        dense.xi = to_dense_matrix(tt);
        for (int k = 0; k < 20; ++k) {
            const Vector x = random_matrix(d, 1) * 0.1;
            const Vector a = evaluate_rhs(tt, x);
            CHECK((a - evaluate_rhs(dense, x)).norm() <= 1e-10 * std::max(1.0, a.norm()));
        }
    }
}

TEST_CASE("model fidelity on exactly representable systems") {
    SUBCASE("Chua") {
        const SnapshotSet s = chua_snapshots();
        const CoefficientTensor fit = mandy_identify(s.x, s.y, chua_function_major_dictionary());
        CHECK(fidelity(fit, s.system, -2.0, 2.0) <= 1e-4);
    }
    SUBCASE("FPU") {
        const SnapshotSet s = fpu_snapshots(3, 400, 9);
        const CoefficientTensor fit = mandy_identify(s.x, s.y, fpu_dictionary());
        CHECK(fidelity(fit, s.system, -0.1, 0.1) <= 1e-4);
    }
    SUBCASE("Kuramoto") {
        const SnapshotSet s = kuramoto_snapshots(4, 30.0, 4);
        const CoefficientTensor fit = mandy_identify(s.x, s.y, kuramoto_dictionary());
        CHECK(fidelity(fit, s.system, 0.0, 2.0 * M_PI) <= 1e-4);
    }
}

TEST_CASE("storage and dense conversion") {
    const SnapshotSet s = fpu_snapshots(3, 100, 1);
    const CoefficientTensor sindy = sindy_identify(s.x, s.y, fpu_dictionary());
    CHECK(sindy.storage() == 64 * 3);
    CHECK(sindy.meta.residual >= 0.0);
    const CoefficientTensor mandy = mandy_identify(s.x, s.y, fpu_dictionary());
    CHECK(mandy.storage() == std::get<TensorTrain>(mandy.xi).storage());
    CHECK_THROWS_AS(to_dense_matrix(mandy, 100), SizeCapExceeded);
    CHECK_THROWS_AS(sindy_identify(s.x, s.y, fpu_dictionary(), 0.0, 0.0, 100), SizeCapExceeded);
    CHECK_THROWS_AS(mandy_identify(s.x, s.y.leftCols(50), fpu_dictionary()), ShapeMismatch);
    CHECK(std::abs(model_residual(sindy, s.x, s.y) - sindy.meta.residual) <= 1e-12);
}
