// Acceptance suite: one verdict line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]   (all ten when none are given)

#include "support.hpp"

#include "mandy/diagnostics.hpp"
#include "mandy/identify.hpp"
#include "mandy/pinv.hpp"
#include "mandy/systems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace mandy;
using namespace testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kMasterSeed = 2024;

struct Verdict {
    bool pass = true;
    std::string summary;
};

void detail(const char* fmt, auto... args) {
    std::printf("    ");
    std::printf(fmt, args...);
    std::printf("\n");
    std::fflush(stdout);
}

std::string sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SnapshotSet chua_data() {
    SnapshotSpec spec;
    spec.system = ChuaParams{};
    spec.mode = SamplingMode::trajectory;
    spec.grid = TimeGrid::over(0.0, 20.0, 0.01, false);
    return generate_snapshots(spec);
}

SnapshotSet fpu_data(Index d, Index m) {
    SnapshotSpec spec;
    spec.system = FpuParams{d, 0.7};
    spec.m = m;
    spec.seed = cell_seed(kMasterSeed, d, m);
    return generate_snapshots(spec);
}

// MANDy error against the exact FPU tensor, shared by criteria 4 and 5.
std::map<std::pair<Index, Index>, double> g_fpu_mandy_error;

double fpu_mandy_error(Index d, Index m) {
    const auto key = std::make_pair(d, m);
    if (auto it = g_fpu_mandy_error.find(key); it != g_fpu_mandy_error.end()) {
        return it->second;
    }
    const SnapshotSet s = fpu_data(d, m);
    const double e = relative_error(mandy_identify(s.x, s.y, fpu_dictionary()),
                                    exact_coefficient_tensor(s.system));
    g_fpu_mandy_error[key] = e;
    return e;
}

// ---------------------------------------------------------------------------

Verdict chua_exact_recovery() {
    const SnapshotSet s = chua_data();
    const Dictionary dict = chua_function_major_dictionary();
    const CoefficientTensor exact = exact_coefficient_tensor(ChuaParams{});
    const CoefficientTensor m = mandy_identify(s.x, s.y, dict);
    const CoefficientTensor q = sindy_identify(s.x, s.y, dict);
    const double em = relative_error(m, exact);
    const double eq = relative_error(q, exact);
    detail("m = %ld snapshots; MANDy error %.3e, SINDy error %.3e", static_cast<long>(s.x.cols()), em, eq);

    // x1' coefficients on x1, x2 and x1|x1| (feature j1 + 4 j2).
    const Matrix xi = to_dense_matrix(m);
    const double c[3] = {xi(1, 0), xi(2, 0), xi(1 + 4 * 1, 0)};
    const double want[3] = {10.0 / 7.0, 10.0, -40.0 / 63.0};
    bool digits = true;
    for (int k = 0; k < 3; ++k) {
        detail("coefficient %s (expected %s)", sig(c[k], 4).c_str(), sig(want[k], 4).c_str());
        digits = digits && sig(c[k], 4) == sig(want[k], 4);
    }
    return {em <= 1e-8 && eq <= 1e-8 && digits,
            fmt("errors %.2e (MANDy), %.2e (SINDy) <= 1e-8; coefficients %s, %s, %s", em, eq,
                sig(c[0], 4).c_str(), sig(c[1], 4).c_str(), sig(c[2], 4).c_str())};
}

Verdict chua_wrong_dictionary() {
    const SnapshotSet s = chua_data();
    const Dictionary dict = chua_monomial_dictionary();
    bool pass = true;
    std::string summary;
    for (const CoefficientTensor& fit : {sindy_identify(s.x, s.y, dict), mandy_identify(s.x, s.y, dict)}) {
        const Matrix xi = to_dense_matrix(fit);
        // Features x1, x2, x3 sit at 1, 3 and 9.
        const bool row2 = sig(xi(1, 1), 3) == "1" && sig(xi(3, 1), 3) == "-1" && sig(xi(9, 1), 3) == "1";
        const bool row3 = sig(xi(3, 2), 3) == "-14.9"; // -14.87 to three digits
        const Matrix r = s.y - xi.transpose() * build_basis_matrix(dict, s.x);
        const double res1 = r.row(0).norm();
        detail("%s: x2' = %s x1 %s x2 + %s x3, x3' = %s x2, residual x1' %.3e (x2' %.1e, x3' %.1e)",
               fit.meta.method.c_str(), sig(xi(1, 1), 3).c_str(), sig(xi(3, 1), 3).c_str(),
               sig(xi(9, 1), 3).c_str(), sig(xi(3, 2), 3).c_str(), res1, r.row(1).norm(), r.row(2).norm());
        pass = pass && row2 && row3 && res1 > 1e-3;
        summary += fmt("%s residual x1' %.2e; ", fit.meta.method.c_str(), res1);
    }
    return {pass, summary + "rows 2 and 3 exact to 3 digits"};
}

Verdict chua_storage() {
    const SnapshotSet s = chua_data();
    const BasisTensorTT psi = build_basis_tt(chua_function_major_dictionary(), s.x);
    const std::size_t nnz = psi.nnz_count();
    const std::size_t dense = static_cast<std::size_t>(build_basis_matrix(chua_function_major_dictionary(), s.x).size());
    return {nnz == 18000 && dense == 32000 && psi.dense_count() == dense,
            fmt("TT nnz %zu, dense %zu", nnz, dense)};
}

Verdict oracle_equivalence() {
    bool pass = true;
    double worst = 0.0;
    int failed = 0;
    for (Index d : {4, 6, 8}) {
        for (Index m : {500, 1000, 2000}) {
            const SnapshotSet s = fpu_data(d, m);
            const CoefficientTensor a = mandy_identify(s.x, s.y, fpu_dictionary());
            const CoefficientTensor b = sindy_identify(s.x, s.y, fpu_dictionary());
            const double mutual = relative_error(a, b);
            g_fpu_mandy_error[{d, m}] = relative_error(a, exact_coefficient_tensor(s.system));
            std::string note;
            if (b.meta.wall_time < 2.0) {
                // Sensitivity of the dense solve itself to a 1 ulp relative change of X.
                std::mt19937_64 gen(7);
                std::uniform_real_distribution<double> u(-1.0, 1.0);
                Matrix xp = s.x;
                for (Index i = 0; i < xp.size(); ++i) {
                    xp.data()[i] *= 1.0 + 1.1e-16 * u(gen);
                }
                note = fmt(", SINDy vs SINDy on X perturbed by 1 ulp %.2e",
                           relative_error(sindy_identify(xp, s.y, fpu_dictionary()), b));
            }
            detail("d=%ld m=%-5ld mutual %.3e (MANDy %.1f s, SINDy %.1f s)%s", static_cast<long>(d),
                   static_cast<long>(m), mutual, a.meta.wall_time, b.meta.wall_time, note.c_str());
            worst = std::max(worst, mutual);
            if (!(mutual <= 1e-8)) {
                pass = false;
                ++failed;
            }
        }
    }
    return {pass, fmt("worst mutual relative difference %.2e (tolerance 1e-8), %d of 9 cells above", worst, failed)};
}

Verdict fpu_error_trend() {
    std::vector<double> e;
    for (Index m : {500, 1000, 2000, 4000}) {
        const auto start = Clock::now();
        e.push_back(fpu_mandy_error(8, m));
        detail("d=8 m=%-5ld MANDy error vs exact %.3e (%.1f s)", static_cast<long>(m), e.back(), seconds_since(start));
    }
    bool pass = true;
    for (std::size_t k = 1; k < e.size(); ++k) {
        pass = pass && e[k] <= 1.1 * e[k - 1];
    }
    return {pass, fmt("errors %.2e, %.2e, %.2e, %.2e", e[0], e[1], e[2], e[3])};
}

Verdict beyond_dense() {
    const Index d = 14, m = 2000;
    const BenchCell cell{FpuParams{d, 0.7}, fpu_dictionary(), m, 0.0, true, false};
    const std::vector<BenchRecord> dense = run_benchmark({cell}, kMasterSeed);
    detail("dense cell: status %s, basis entries %zu", dense[0].status.c_str(), dense[0].storage_entries);

    const SnapshotSet s = fpu_data(d, m);
    const CoefficientTensor fit = mandy_identify(s.x, s.y, fpu_dictionary());
    Matrix f(d, 100), g(d, 100);
    for (Index k = 0; k < 100; ++k) {
        const Vector x = random_matrix(d, 1) * 0.1;
        f.col(k) = fpu_rhs(FpuParams{d, 0.7}, x);
        g.col(k) = evaluate_rhs(fit, x);
    }
    double worst = 0.0;
    for (Index k = 0; k < 100; ++k) {
        worst = std::max(worst, (g.col(k) - f.col(k)).norm() / f.col(k).norm());
    }
    const double err = (g - f).norm() / f.norm();
    detail("MANDy %.1f s, coefficient storage %zu, max per-state error %.3e", fit.meta.wall_time, fit.storage(), worst);
    return {dense[0].status == "skipped" && err <= 1e-2,
            fmt("dense %s; RHS relative error on 100 states %.2e <= 1e-2", dense[0].status.c_str(), err)};
}

Verdict kuramoto_recovery() {
    const Index d = 10;
    const KuramotoParams p = KuramotoParams::equidistant(d, 2.0, 0.2, -5.0, 5.0);
    const CoefficientTensor exact = exact_coefficient_tensor(p);
    double worst = 0.0;
    std::optional<CoefficientTensor> model;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SnapshotSpec spec;
        spec.system = p;
        spec.mode = SamplingMode::trajectory;
        spec.grid = TimeGrid::over(0.0, 100.0, 0.1, true);
        spec.seed = seed;
        const SnapshotSet s = generate_snapshots(spec);
        const CoefficientTensor fit = mandy_identify(s.x, s.y, kuramoto_dictionary());
        const double e = relative_error(fit, exact);
        detail("seed %lu: m = %ld (need >= %ld), error %.3e", static_cast<unsigned long>(seed),
               static_cast<long>(s.x.cols()), static_cast<long>(2 * (d + 1) * (d + 1)), e);
        worst = std::max(worst, e);
        if (!model) {
            model = fit;
        }
    }

    // Trajectories of the recovered and true dynamics from a fresh initial state.
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ring(0.0, 2.0 * M_PI);
    Vector x0(d);
    for (Index i = 0; i < d; ++i) {
        x0(i) = ring(gen);
    }
    const TimeGrid grid = TimeGrid::over(0.0, 10.0, 0.1, true);
    const Trajectory truth = integrate(p, x0, grid);
    const Trajectory recovered = integrate([&](const Vector& x) { return evaluate_rhs(*model, x); }, x0, grid);
    double angle = 0.0;
    for (Index i = 0; i < truth.states.size(); ++i) {
        const double diff = std::remainder(recovered.states.data()[i] - truth.states.data()[i], 2.0 * M_PI);
        angle = std::max(angle, std::abs(diff));
    }
    detail("trajectory over [0, 10]: max angle error %.3e rad", angle);
    return {worst <= 1e-4 && angle <= 0.1,
            fmt("worst error over 5 seeds %.2e <= 1e-4; max angle error %.2e <= 0.1", worst, angle)};
}

Verdict pinv_properties() {
    std::mt19937_64& gen = rng();
    gen.seed(kMasterSeed);
    double worst_mp = 0.0, worst_orth = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Index> modes = random_modes(4, 4);
        modes.push_back(uniform_int(1, 40));
        const TensorTrain t = random_tt(modes, 4);
        const Matrix a = reshape(tt_dense_oracle(t), modes, modes.size() - 1);
        const Matrix p = tt_pinv(t, 0.0).to_dense();
        const Matrix ap = a * p, pa = p * a;
        worst_mp = std::max({worst_mp, rel(ap * a, a), rel(pa * p, p), rel(ap.transpose(), ap),
                             rel(pa.transpose(), pa)});
        const Vector full = tt_dense_oracle(t);
        for (Index k = 0; k < t.order(); ++k) {
            worst_orth = std::max(worst_orth, rel(tt_dense_oracle(orthonormalize_left(t, k)), full));
            worst_orth = std::max(worst_orth, rel(tt_dense_oracle(orthonormalize_right(t, k + 1)), full));
        }
    }
    return {worst_mp <= 1e-10 && worst_orth <= 1e-12,
            fmt("worst Moore-Penrose residual %.2e <= 1e-10; orthonormalization change %.2e <= 1e-12", worst_mp,
                worst_orth)};
}

Verdict entropy_bound() {
    std::mt19937_64& gen = rng();
    gen.seed(kMasterSeed + 1);
    const std::vector<Index> modes{2, 2, 2, 2};
    double worst_ratio = 0.0, worst_gap = -1e300;
    bool pass = true;
    for (int trial = 0; trial < 20; ++trial) {
        const Vector x = random_matrix(16, 1);
        const TruncationProfile p = truncation_profile(x, modes);
        for (Index r = 1; r <= 3; ++r) {
            const double err = (tt_dense_oracle(truncated_sweep(x, modes, r)) - x).squaredNorm();
            const double bound = p.bound(r);
            // Relative slack of 1e-12 absorbs rounding when the bound is attained.
            pass = pass && err <= bound * (1.0 + 1e-12) + 1e-30;
            if (bound > 0.0) {
                worst_ratio = std::max(worst_ratio, err / bound);
            }
            for (Index l = 1; l <= p.cuts(); ++l) {
                const double e = p.eps(l, r);
                if (e > 0.0) {
                    const double gap = std::log(e) - (p.renyi_half[static_cast<std::size_t>(l - 1)] - std::log(2.0 * r));
                    worst_gap = std::max(worst_gap, gap);
                    pass = pass && gap <= 0.0;
                }
            }
        }
    }
    return {pass, fmt("max error/bound %.3f <= 1; max log eps - (S - log 2r) %.3f <= 0", worst_ratio, worst_gap)};
}

Verdict complexity_scaling() {
    // Generic tensor train with the ranks of a d = 6, n = 4 basis train.
    std::mt19937_64 gen(kMasterSeed);
    std::vector<double> logm, logt;
    for (Index m : {250, 500, 1000, 2000}) {
        std::vector<Index> modes(6, 4);
        modes.push_back(m);
        std::vector<Index> ranks;
        Index r = 1;
        for (int i = 0; i < 6; ++i) {
            r *= 4;
            ranks.push_back(std::min(r, m));
        }
        const TensorTrain t = tt_random(modes, ranks, gen);
        double best = 1e300;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = Clock::now();
            const TTPseudoinverse p = tt_pinv(t, 0.0);
            best = std::min(best, seconds_since(start));
            if (p.rank() < 1) {
                std::abort();
            }
        }
        detail("m=%-5ld best of 3: %.3f s", static_cast<long>(m), best);
        logm.push_back(std::log(static_cast<double>(m)));
        logt.push_back(std::log(best));
    }
    // Least-squares slope in log-log space.
    const double n = static_cast<double>(logm.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < logm.size(); ++k) {
        sx += logm[k];
        sy += logt[k];
        sxx += logm[k] * logm[k];
        sxy += logm[k] * logt[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope >= 2.3 && slope <= 3.7, fmt("power-law exponent %.2f in [2.3, 3.7]", slope)};
}

struct Criterion {
    int id;
    const char* name;
    double limit; // seconds, 0 when unconstrained
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "Chua exact recovery", 30, chua_exact_recovery},
        {2, "Chua wrong dictionary", 30, chua_wrong_dictionary},
        {3, "Chua storage counts", 0, chua_storage},
        {4, "SINDy-MANDy oracle equivalence", 300, oracle_equivalence},
        {5, "FPU error trend", 0, fpu_error_trend},
        {6, "FPU beyond dense feasibility", 900, beyond_dense},
        {7, "Kuramoto recovery", 600, kuramoto_recovery},
        {8, "pseudoinverse properties", 60, pinv_properties},
        {9, "truncation and entropy bound", 60, entropy_bound},
        {10, "complexity scaling", 0, complexity_scaling},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const Criterion& c : all) {
        if (!selected.empty() && !selected.count(c.id)) {
            continue;
        }
        std::printf("criterion %d: %s\n", c.id, c.name);
        std::fflush(stdout);
        const auto start = Clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double took = seconds_since(start);
        std::string timing = fmt("%.1f s", took);
        if (c.limit > 0) {
            timing += fmt(" of %.0f s allowed", c.limit);
            v.pass = v.pass && took <= c.limit;
        }
        std::printf("%s %2d %s: %s (%s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.summary.c_str(),
                    timing.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
