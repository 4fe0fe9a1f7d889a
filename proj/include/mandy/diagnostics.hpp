#pragma once

#include "mandy/basis.hpp"
#include "mandy/linalg.hpp"
#include "mandy/systems.hpp"
#include "mandy/tensor_train.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mandy {

/**
 * Correlation structure of a vector X read as a tensor with the given modes.
 * Cut l (1 <= l < D) separates modes [0, l) from [l, D); R_l is the partial
 * trace of X X^T over the right modes, i.e. M M^T for the cut unfolding M.
 */
struct TruncationProfile {
    std::vector<Index> mode_sizes;
    std::vector<Vector> spectra;            ///< eigenvalues of R_l, descending, cut l at [l - 1]
    std::vector<std::vector<double>> tails; ///< tails[l - 1][r] = eps_l(r), r = 0..rank
    std::vector<double> renyi_half;         ///< 2 log tr(R_l^{1/2})

    Index cuts() const { return static_cast<Index>(spectra.size()); }
    /// eps_l(r): sum of the eigenvalues of R_l beyond the r largest.
    double eps(Index cut, Index r) const;
    /// 2 sum_l eps_l(r).
    double bound(Index r) const;
};

/// Throws SizeCapExceeded when the vector is longer than `cap`.
TruncationProfile truncation_profile(const Vector& x, const std::vector<Index>& mode_sizes,
                                     std::size_t cap = SizeCaps{}.dense_entries);

/// Sequential truncated-SVD sweep keeping at most r singular values per cut.
TensorTrain truncated_sweep(const Vector& x, const std::vector<Index>& mode_sizes, Index r);

/// One benchmark configuration: a system, a dictionary, a sample count and an
/// SVD cutoff. FPU cells sample uniformly on [-0.1, 0.1]^d; Chua and
/// Kuramoto cells sample a trajectory with m points (steps 0.01 and 0.1).
struct BenchCell {
    SystemParams system;
    Dictionary dictionary;
    Index m = 1000;
    double threshold = 0.0;
    bool run_sindy = true;
    bool run_mandy = true;
};

/**
 * seconds follows the identification timing rules; storage_entries counts
 * the basis representation (TT nnz or dense matrix entries); rel_error is
 * measured against the exact tensor when the dictionary has one and is the
 * relative model residual ||Y - Xi^T Psi||/||Y|| otherwise. status is "ok",
 * "skipped" (dense basis above the cap) or "failed: <reason>".
 */
struct BenchRecord {
    std::string method;
    Index d = 0;
    Index m = 0;
    double epsilon = 0.0;
    double seconds = 0.0;
    std::size_t storage_entries = 0;
    double rel_error = 0.0;
    std::string status = "ok";
};

/// Seed of a cell's snapshot generator, derived from the master seed and (d, m).
std::uint64_t cell_seed(std::uint64_t master, Index d, Index m);

/// Runs every cell; failures are recorded per record and never abort the run.
std::vector<BenchRecord> run_benchmark(const std::vector<BenchCell>& grid, std::uint64_t seed,
                                       const SizeCaps& caps = SizeCaps::from_environment());

} // namespace mandy
