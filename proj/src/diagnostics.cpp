#include "mandy/diagnostics.hpp"

#include "mandy/errors.hpp"
#include "mandy/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mandy {

double TruncationProfile::eps(Index cut, Index r) const {
    if (cut < 1 || cut > cuts()) {
        throw std::out_of_range("TruncationProfile::eps: cut out of range");
    }
    const auto& t = tails[static_cast<std::size_t>(cut - 1)];
    const auto k = static_cast<std::size_t>(std::max<Index>(r, 0));
    return k < t.size() ? t[k] : 0.0;
}

double TruncationProfile::bound(Index r) const {
    double sum = 0.0;
    for (Index l = 1; l <= cuts(); ++l) {
        sum += eps(l, r);
    }
    return 2.0 * sum;
}

TruncationProfile truncation_profile(const Vector& x, const std::vector<Index>& mode_sizes,
                                     std::size_t cap) {
    if (checked_product(mode_sizes) != static_cast<std::size_t>(x.size())) {
        throw ShapeMismatch("truncation_profile: vector length does not match the modes");
    }
    if (static_cast<std::size_t>(x.size()) > cap) {
        throw SizeCapExceeded("truncation_profile: vector exceeds the dense size cap");
    }
    const DenseTensor t(mode_sizes, x);
    TruncationProfile p;
    p.mode_sizes = mode_sizes;
    for (Index l = 1; l < t.order(); ++l) {
        // Eigenvalues of M M^T are the squared singular values of M.
        const Svd svd = thin_svd(t.matricize(l));
        Vector mu = svd.s.array().square();
        std::vector<double> tail(static_cast<std::size_t>(mu.size()) + 1, 0.0);
        for (Index r = mu.size() - 1; r >= 0; --r) {
            tail[static_cast<std::size_t>(r)] = tail[static_cast<std::size_t>(r) + 1] + mu(r);
        }
        p.renyi_half.push_back(2.0 * std::log(svd.s.sum()));
        p.spectra.push_back(std::move(mu));
        p.tails.push_back(std::move(tail));
    }
    return p;
}

TensorTrain truncated_sweep(const Vector& x, const std::vector<Index>& mode_sizes, Index r) {
    if (r < 1) {
        throw std::invalid_argument("truncated_sweep: rank must be positive");
    }
    return tt_from_full(DenseTensor(mode_sizes, x), 0.0, r);
}

std::uint64_t cell_seed(std::uint64_t master, Index d, Index m) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(m)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

SnapshotSet cell_snapshots(const BenchCell& cell, std::uint64_t seed) {
    SnapshotSpec spec;
    spec.system = cell.system;
    spec.seed = seed;
    spec.m = cell.m;
    if (std::holds_alternative<ChuaParams>(cell.system)) {
        spec.mode = SamplingMode::trajectory;
        spec.grid = {0.0, 0.01, cell.m};
    } else if (std::holds_alternative<KuramotoParams>(cell.system)) {
        spec.mode = SamplingMode::trajectory;
        spec.grid = {0.0, 0.1, cell.m};
    }
    return generate_snapshots(spec);
}

double cell_error(const CoefficientTensor& fit, const BenchCell& cell, const SnapshotSet& data,
                  std::size_t cap) {
    if (fit.dictionary == reference_dictionary(cell.system)) {
        return relative_error(fit, exact_coefficient_tensor(cell.system), cap);
    }
    return model_residual(fit, data.x, data.y) / data.y.norm();
}

} // namespace

std::vector<BenchRecord> run_benchmark(const std::vector<BenchCell>& grid, std::uint64_t seed,
                                       const SizeCaps& caps) {
    std::vector<BenchRecord> records;
    for (const BenchCell& cell : grid) {
        const Index d = state_dimension(cell.system);
        BenchRecord base;
        base.d = d;
        base.m = cell.m;
        base.epsilon = cell.threshold;

        SnapshotSet data;
        try {
            data = cell_snapshots(cell, cell_seed(seed, d, cell.m));
        } catch (const std::exception& e) {
            for (const char* method : {"sindy", "mandy"}) {
                BenchRecord r = base;
                r.method = method;
                r.status = std::string("failed: ") + e.what();
                records.push_back(r);
            }
            continue;
        }

        if (cell.run_sindy) {
            BenchRecord r = base;
            r.method = "sindy";
            const std::size_t features = cell.dictionary.feature_count(d);
            // Exact product unless it overflows, in which case it saturates.
            const std::size_t m = static_cast<std::size_t>(cell.m);
            const std::size_t dense = features > std::numeric_limits<std::size_t>::max() / std::max<std::size_t>(m, 1)
                                          ? std::numeric_limits<std::size_t>::max()
                                          : features * m;
            r.storage_entries = dense;
            if (dense > caps.basis_matrix_entries) {
                r.status = "skipped";
            } else {
                try {
                    const CoefficientTensor fit = sindy_identify(
                        data.x, data.y, cell.dictionary, 0.0, cell.threshold, caps.basis_matrix_entries);
                    r.seconds = fit.meta.wall_time;
                    r.rel_error = cell_error(fit, cell, data, caps.dense_entries);
                } catch (const std::exception& e) {
                    r.status = std::string("failed: ") + e.what();
                }
            }
            records.push_back(r);
        }
        if (cell.run_mandy) {
            BenchRecord r = base;
            r.method = "mandy";
            try {
                r.storage_entries = build_basis_tt(cell.dictionary, data.x).nnz_count();
                const CoefficientTensor fit =
                    mandy_identify(data.x, data.y, cell.dictionary, cell.threshold);
                r.seconds = fit.meta.wall_time;
                r.rel_error = cell_error(fit, cell, data, caps.dense_entries);
            } catch (const std::exception& e) {
                r.status = std::string("failed: ") + e.what();
            }
            records.push_back(r);
        }
    }
    return records;
}

} // namespace mandy
