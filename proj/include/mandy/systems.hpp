#pragma once

#include "mandy/basis.hpp"
#include "mandy/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mandy {

/// Chua's circuit with the piecewise-smooth nonlinearity
/// g(z) = delta1 z + delta2 z |z|.
struct ChuaParams {
    double alpha = 10.0;
    double beta = 14.87;
    double delta1 = -8.0 / 7.0;
    double delta2 = 4.0 / 63.0;
};

/// Fermi-Pasta-Ulam-Tsingou chain with cubic forcing and fixed ends
/// x_0 = x_{d+1} = 0. Second-order: the right-hand side is the acceleration.
struct FpuParams {
    Index d = 10;
    double beta = 0.7;
};

/// Kuramoto oscillators with uniform coupling K and external forcing h.
struct KuramotoParams {
    Index d = 10;
    double coupling = 2.0;
    double forcing = 0.2;
    Vector omega;

    /// Natural frequencies equidistant on [lo, hi].
    static KuramotoParams equidistant(Index d, double coupling = 2.0, double forcing = 0.2,
                                      double lo = -5.0, double hi = 5.0);
};

using SystemParams = std::variant<ChuaParams, FpuParams, KuramotoParams>;

Vector chua_rhs(const ChuaParams& p, const Vector& x);
Vector fpu_rhs(const FpuParams& p, const Vector& x);
Vector kuramoto_rhs(const KuramotoParams& p, const Vector& x);

Vector system_rhs(const SystemParams& system, const Vector& x);
Index state_dimension(const SystemParams& system);
/// 1 for first-order systems, 2 for FPU.
int derivative_order(const SystemParams& system);
std::string system_name(const SystemParams& system);

/// Dictionaries used by the reference experiments.
Dictionary chua_monomial_dictionary();       ///< cm {1, x, x^2}
Dictionary chua_function_major_dictionary(); ///< fm {x, |x|} with constants
Dictionary fpu_dictionary();                 ///< cm {1, x, x^2, x^3}
Dictionary kuramoto_dictionary();            ///< fm {sin, cos} with constants
/// The dictionary under which exact_coefficients has a closed form.
Dictionary reference_dictionary(const SystemParams& system);

/**
 * Closed-form coefficient tensor Xi (feature modes..., d) with
 * Xi^T Psi(x) = F(x) for the reference dictionary of each system. Throws
 * UnsupportedLayout if `dict` is not that dictionary.
 */
TensorTrain exact_coefficients(const SystemParams& system, const Dictionary& dict);

/// Uniform time grid t_k = t0 + k dt, k = 0..count-1.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.01;
    Index count = 0;

    /// Grid over [t0, t_end]; the endpoint is included only if requested.
    static TimeGrid over(double t0, double t_end, double dt, bool include_end);
    double time(Index k) const { return t0 + static_cast<double>(k) * dt; }
    double end() const { return time(count - 1); }
};

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

struct Trajectory {
    std::vector<double> times;
    Matrix states; ///< state dim x samples
};

using RhsFunction = std::function<Vector(const Vector&)>;

/// Adaptive Dormand-Prince integration of x' = f(x) sampled on the grid.
/// Throws StepFailure when the state becomes non-finite.
Trajectory integrate(const RhsFunction& f, const Vector& x0, const TimeGrid& grid,
                     const IntegratorOptions& options = {});

/// Integrates a benchmark system. For FPU the companion first-order system
/// (x, v) is integrated from (x0, v0) and only positions are returned.
Trajectory integrate(const SystemParams& system, const Vector& x0, const TimeGrid& grid,
                     const IntegratorOptions& options = {},
                     const std::optional<Vector>& v0 = std::nullopt);

/// How snapshot states are produced.
enum class SamplingMode {
    uniform,   ///< i.i.d. uniform states on [lo, hi]^d, no integration
    trajectory ///< samples of one integrated trajectory
};

struct SnapshotSpec {
    SystemParams system;
    SamplingMode mode = SamplingMode::uniform;
    Index m = 1000;          ///< uniform mode
    double lo = -0.1;        ///< uniform mode
    double hi = 0.1;         ///< uniform mode
    TimeGrid grid;           ///< trajectory mode
    std::optional<Vector> x0; ///< trajectory mode; random when empty
    std::uint64_t seed = 0;
    IntegratorOptions integrator;
};

/// States X and exact derivatives Y = F(X), d x m each.
struct SnapshotSet {
    Matrix x;
    Matrix y;
    int derivative_order = 1;
    std::optional<TimeGrid> grid;
    std::uint64_t seed = 0;
    SystemParams system;
};

/// Deterministic for a fixed spec. Trajectory mode draws a missing x0
/// uniformly from [0, 2 pi)^d for Kuramoto and from [lo, hi]^d otherwise;
/// Chua defaults to (-1.13, 0.004, 0.45).
SnapshotSet generate_snapshots(const SnapshotSpec& spec);

} // namespace mandy
