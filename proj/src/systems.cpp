#include "mandy/systems.hpp"

#include "mandy/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace mandy {

KuramotoParams KuramotoParams::equidistant(Index d, double coupling, double forcing, double lo,
                                           double hi) {
    KuramotoParams p;
    p.d = d;
    p.coupling = coupling;
    p.forcing = forcing;
    p.omega = d == 1 ? Vector(Vector::Constant(1, 0.5 * (lo + hi))) : Vector(Vector::LinSpaced(d, lo, hi));
    return p;
}

Vector chua_rhs(const ChuaParams& p, const Vector& x) {
    if (x.size() != 3) {
        throw ShapeMismatch("chua_rhs: state must have 3 components");
    }
    const double g = p.delta1 * x(0) + p.delta2 * x(0) * std::abs(x(0));
    Vector dx(3);
    dx << p.alpha * (x(1) - x(0) - g), x(0) - x(1) + x(2), -p.beta * x(1);
    return dx;
}

Vector fpu_rhs(const FpuParams& p, const Vector& x) {
    if (x.size() != p.d) {
        throw ShapeMismatch("fpu_rhs: state dimension does not match d");
    }
    Vector ddx(p.d);
    for (Index i = 0; i < p.d; ++i) {
        const double left = i > 0 ? x(i - 1) : 0.0;
        const double right = i + 1 < p.d ? x(i + 1) : 0.0;
        const double fwd = right - x(i);
        const double bwd = x(i) - left;
        // Written so that reversing x reverses ddx bit for bit.
        ddx(i) = ((left + right) - 2.0 * x(i)) + p.beta * (fwd * fwd * fwd - bwd * bwd * bwd);
    }
    return ddx;
}

Vector kuramoto_rhs(const KuramotoParams& p, const Vector& x) {
    if (x.size() != p.d || p.omega.size() != p.d) {
        throw ShapeMismatch("kuramoto_rhs: state or frequency dimension does not match d");
    }
    // sum_j sin(x_j - x_i) = cos(x_i) S - sin(x_i) C with S = sum sin, C = sum cos
    const Vector s = x.array().sin();
    const Vector c = x.array().cos();
    const double sum_s = s.sum();
    const double sum_c = c.sum();
    const double k = p.coupling / static_cast<double>(p.d);
    Vector dx(p.d);
    for (Index i = 0; i < p.d; ++i) {
        dx(i) = p.omega(i) + k * (c(i) * sum_s - s(i) * sum_c) + p.forcing * s(i);
    }
    return dx;
}

Vector system_rhs(const SystemParams& system, const Vector& x) {
    return std::visit(
        [&x](const auto& p) -> Vector {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ChuaParams>) {
                return chua_rhs(p, x);
            } else if constexpr (std::is_same_v<P, FpuParams>) {
                return fpu_rhs(p, x);
            } else {
                return kuramoto_rhs(p, x);
            }
        },
        system);
}

Index state_dimension(const SystemParams& system) {
    return std::visit(
        [](const auto& p) -> Index {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ChuaParams>) {
                return 3;
            } else {
                return p.d;
            }
        },
        system);
}

int derivative_order(const SystemParams& system) {
    return std::holds_alternative<FpuParams>(system) ? 2 : 1;
}

std::string system_name(const SystemParams& system) {
    switch (system.index()) {
    case 0:
        return "chua";
    case 1:
        return "fpu";
    default:
        return "kuramoto";
    }
}

// ---------------------------------------------------------------------------
// Reference dictionaries

Dictionary chua_monomial_dictionary() {
    return {{BasisFunction::constant(), BasisFunction::monomial(1), BasisFunction::monomial(2)},
            Layout::coordinate_major,
            false};
}

Dictionary chua_function_major_dictionary() {
    return {{BasisFunction::monomial(1), BasisFunction::absolute()}, Layout::function_major, true};
}

Dictionary fpu_dictionary() {
    return {{BasisFunction::constant(), BasisFunction::monomial(1), BasisFunction::monomial(2),
             BasisFunction::monomial(3)},
            Layout::coordinate_major,
            false};
}

Dictionary kuramoto_dictionary() {
    return {{BasisFunction::sine(), BasisFunction::cosine()}, Layout::function_major, true};
}

Dictionary reference_dictionary(const SystemParams& system) {
    switch (system.index()) {
    case 0:
        return chua_function_major_dictionary();
    case 1:
        return fpu_dictionary();
    default:
        return kuramoto_dictionary();
    }
}

// ---------------------------------------------------------------------------
// Exact coefficient tensors

namespace {

Core unit_core(Index n, Index j) {
    Core c(1, n, 1);
    c(0, j, 0) = 1.0;
    return c;
}

// Row or column of unit vectors: selects the mode index as rank index.
Core selector_row(Index n) {
    Core c(1, n, n);
    for (Index j = 0; j < n; ++j) {
        c(0, j, j) = 1.0;
    }
    return c;
}

Core selector_column(Index n) {
    Core c(n, n, 1);
    for (Index j = 0; j < n; ++j) {
        c(j, j, 0) = 1.0;
    }
    return c;
}

TensorTrain chua_exact(const ChuaParams& p) {
    Core first(1, 4, 4);
    first(0, 1, 0) = -p.alpha * (1.0 + p.delta1);
    first(0, 2, 0) = p.alpha;
    first(0, 1, 1) = -p.alpha * p.delta2;
    first(0, 1, 2) = 1.0;
    first(0, 2, 2) = -1.0;
    first(0, 3, 2) = 1.0;
    first(0, 2, 3) = -p.beta;

    Core second(4, 4, 3);
    second(0, 0, 0) = 1.0;
    second(1, 1, 0) = 1.0;
    second(2, 0, 1) = 1.0;
    second(3, 0, 2) = 1.0;

    return TensorTrain({std::move(first), std::move(second), selector_column(3)});
}

TensorTrain fpu_exact(const FpuParams& p) {
    const Index d = p.d;
    const double b = p.beta;
    // Coefficient polynomials in the local coordinate, indexed by the power
    // of the neighbour they multiply.
    std::vector<Vector> poly(4, Vector::Zero(4));
    poly[0] << 0.0, -2.0, 0.0, -2.0 * b;
    poly[1] << 1.0, 0.0, 3.0 * b, 0.0;
    poly[2] << 0.0, -3.0 * b, 0.0, 0.0;
    poly[3] << b, 0.0, 0.0, 0.0;

    auto unit_output = [d](Index i) {
        Core c(1, d, 1);
        c(0, i, 0) = 1.0;
        return c;
    };

    if (d == 1) {
        Core only(1, 4, 1);
        only.left_unfolding().col(0) = poly[0];
        return TensorTrain({std::move(only), unit_output(0)});
    }

    std::optional<TensorTrain> sum;
    for (Index i = 0; i < d; ++i) {
        std::vector<Core> cores;
        for (Index k = 0; k < d; ++k) {
            if (k == i - 1) {
                cores.push_back(selector_row(4));
            } else if (k == i + 1) {
                cores.push_back(selector_column(4));
            } else if (k != i) {
                cores.push_back(unit_core(4, 0));
            } else {
                const Index left = i == 0 ? 1 : 4;
                const Index right = i + 1 == d ? 1 : 4;
                Core centre(left, 4, right);
                // Row 0 pairs the centre polynomial with powers of x_{i+1};
                // column 0 pairs it with powers of x_{i-1}.
                for (Index a = 0; a < left; ++a) {
                    for (Index c = 0; c < right; ++c) {
                        if (a != 0 && c != 0) {
                            continue;
                        }
                        const Vector& coeff = poly[static_cast<std::size_t>(a + c)];
                        for (Index j = 0; j < 4; ++j) {
                            centre(a, j, c) = coeff(j);
                        }
                    }
                }
                cores.push_back(std::move(centre));
            }
        }
        cores.push_back(unit_output(i));
        TensorTrain term(std::move(cores));
        sum = sum ? tt_add(*sum, term) : term;
    }
    return *sum;
}

TensorTrain kuramoto_exact(const KuramotoParams& p) {
    const Index d = p.d;
    const Index n = d + 1;
    const double k = p.coupling / static_cast<double>(d);

    // omega block: 1 (x) 1 (x) omega
    Core omega_out(1, d, 1);
    omega_out.left_unfolding().col(0) = p.omega;
    TensorTrain xi({unit_core(n, 0), unit_core(n, 0), std::move(omega_out)});

    // Remaining blocks share the shape (1, n, d) (x) (d, n, d) (x) identity:
    // the first core fixes the sin factor, the second the cos factor, the
    // rank index carries the output equation.
    auto block = [&](auto&& sin_weight, auto&& cos_index) {
        Core sin_core(1, n, d);
        Core cos_core(d, n, d);
        for (Index eq = 0; eq < d; ++eq) {
            for (Index l = 0; l < d; ++l) {
                sin_core(0, l + 1, eq) = sin_weight(l, eq);
            }
            cos_core(eq, cos_index(eq), eq) = 1.0;
        }
        return TensorTrain({std::move(sin_core), std::move(cos_core), selector_column(d)});
    };

    // h sin(x_k)
    xi = tt_add(xi, block([&](Index l, Index eq) { return l == eq ? p.forcing : 0.0; },
                          [](Index) { return Index{0}; }));
    // (K/d) sum_{l != k} sin(x_l) cos(x_k)
    xi = tt_add(xi, block([&](Index l, Index eq) { return l == eq ? 0.0 : k; },
                          [](Index eq) { return eq + 1; }));
    // -(K/d) sum_{l != k} sin(x_k) cos(x_l)
    Core sin_core(1, n, d);
    Core cos_core(d, n, d);
    for (Index eq = 0; eq < d; ++eq) {
        sin_core(0, eq + 1, eq) = -k;
        for (Index l = 0; l < d; ++l) {
            if (l != eq) {
                cos_core(eq, l + 1, eq) = 1.0;
            }
        }
    }
    return tt_add(xi, TensorTrain({std::move(sin_core), std::move(cos_core), selector_column(d)}));
}

} // namespace

TensorTrain exact_coefficients(const SystemParams& system, const Dictionary& dict) {
    if (!(dict == reference_dictionary(system))) {
        throw UnsupportedLayout("exact coefficients for " + system_name(system) +
                                " exist only for its reference dictionary");
    }
    switch (system.index()) {
    case 0:
        return chua_exact(std::get<ChuaParams>(system));
    case 1:
        return fpu_exact(std::get<FpuParams>(system));
    default:
        return kuramoto_exact(std::get<KuramotoParams>(system));
    }
}

// ---------------------------------------------------------------------------
// Integration

TimeGrid TimeGrid::over(double t0, double t_end, double dt, bool include_end) {
    if (!(dt > 0.0) || t_end < t0) {
        throw ConfigError("time grid needs dt > 0 and t_end >= t0");
    }
    const auto steps = static_cast<Index>(std::floor((t_end - t0) / dt + 1e-9));
    return {t0, dt, steps + (include_end ? 1 : 0)};
}

Trajectory integrate(const RhsFunction& f, const Vector& x0, const TimeGrid& grid,
                     const IntegratorOptions& options) {
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;

    Trajectory out;
    out.states.resize(x0.size(), grid.count);
    out.times.reserve(static_cast<std::size_t>(grid.count));
    if (grid.count == 0) {
        return out;
    }
    if (!x0.allFinite()) {
        throw StepFailure("integrate: initial state is not finite");
    }
    State state(x0.data(), x0.data() + x0.size());
    std::vector<double> times;
    for (Index k = 0; k < grid.count; ++k) {
        times.push_back(grid.time(k));
    }
    auto system = [&f](const State& s, State& ds, double /*t*/) {
        const Vector dx = f(Eigen::Map<const Vector>(s.data(), static_cast<Index>(s.size())));
        ds.assign(dx.data(), dx.data() + dx.size());
    };
    Index column = 0;
    auto observer = [&](const State& s, double t) {
        const Eigen::Map<const Vector> v(s.data(), static_cast<Index>(s.size()));
        if (!v.allFinite()) {
            throw StepFailure("integrate: state became non-finite at t = " + std::to_string(t));
        }
        out.states.col(column++) = v;
        out.times.push_back(t);
    };
    auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                             odeint::runge_kutta_dopri5<State>());
    const double initial_dt = grid.count > 1 ? std::min(grid.dt, 1e-3) : 1e-3;
    try {
        odeint::integrate_times(stepper, system, state, times.begin(), times.end(), initial_dt,
                                observer);
    } catch (const StepFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StepFailure(std::string("integrate: ") + e.what());
    }
    return out;
}

Trajectory integrate(const SystemParams& system, const Vector& x0, const TimeGrid& grid,
                     const IntegratorOptions& options, const std::optional<Vector>& v0) {
    const Index d = state_dimension(system);
    if (x0.size() != d) {
        throw ShapeMismatch("integrate: initial state has wrong dimension");
    }
    if (derivative_order(system) == 1) {
        return integrate([&system](const Vector& x) { return system_rhs(system, x); }, x0, grid,
                         options);
    }
    Vector z(2 * d);
    z << x0, (v0 ? *v0 : Vector::Zero(d));
    auto companion = [&system, d](const Vector& s) {
        Vector ds(2 * d);
        ds << s.tail(d), system_rhs(system, s.head(d));
        return ds;
    };
    Trajectory full = integrate(companion, z, grid, options);
    full.states = full.states.topRows(d).eval();
    return full;
}

// ---------------------------------------------------------------------------
// Snapshots

SnapshotSet generate_snapshots(const SnapshotSpec& spec) {
    const Index d = state_dimension(spec.system);
    std::mt19937_64 rng(spec.seed);
    SnapshotSet out;
    out.system = spec.system;
    out.seed = spec.seed;
    out.derivative_order = derivative_order(spec.system);

    if (spec.mode == SamplingMode::uniform) {
        if (spec.m < 1 || !(spec.hi > spec.lo)) {
            throw ConfigError("uniform sampling needs m >= 1 and hi > lo");
        }
        std::uniform_real_distribution<double> uniform(spec.lo, spec.hi);
        out.x.resize(d, spec.m);
        for (Index k = 0; k < spec.m; ++k) {
            for (Index i = 0; i < d; ++i) {
                out.x(i, k) = uniform(rng);
            }
        }
    } else {
        Vector x0;
        if (spec.x0) {
            x0 = *spec.x0;
        } else if (std::holds_alternative<ChuaParams>(spec.system)) {
            x0 = Vector(3);
            x0 << -1.13, 0.004, 0.45;
        } else {
            const bool ring = std::holds_alternative<KuramotoParams>(spec.system);
            std::uniform_real_distribution<double> uniform(ring ? 0.0 : spec.lo,
                                                           ring ? 2.0 * std::numbers::pi : spec.hi);
            x0.resize(d);
            for (Index i = 0; i < d; ++i) {
                x0(i) = uniform(rng);
            }
        }
        if (spec.grid.count < 1) {
            throw ConfigError("trajectory sampling needs a non-empty time grid");
        }
        out.x = integrate(spec.system, x0, spec.grid, spec.integrator).states;
        out.grid = spec.grid;
    }
    out.y.resize(d, out.x.cols());
    for (Index k = 0; k < out.x.cols(); ++k) {
        out.y.col(k) = system_rhs(spec.system, out.x.col(k));
    }
    return out;
}

} // namespace mandy
