#pragma once

#include "mandy/linalg.hpp"
#include "mandy/tensor_train.hpp"

#include <string>
#include <vector>

namespace mandy {

/// Scalar basis function psi: R -> R.
struct BasisFunction {
    enum class Kind { constant, monomial, sine, cosine, absolute, x_abs_x };

    Kind kind = Kind::constant;
    int power = 0; ///< exponent, monomials only

    static BasisFunction constant() { return {Kind::constant, 0}; }
    static BasisFunction monomial(int k) { return {Kind::monomial, k}; }
    static BasisFunction sine() { return {Kind::sine, 0}; }
    static BasisFunction cosine() { return {Kind::cosine, 0}; }
    static BasisFunction absolute() { return {Kind::absolute, 0}; }
    static BasisFunction x_abs_x() { return {Kind::x_abs_x, 0}; }

    double operator()(double x) const;
    /// Display name with the argument spelled out, e.g. "x2^3" or "sin(x1)".
    std::string name(const std::string& arg) const;

    friend bool operator==(const BasisFunction&, const BasisFunction&) = default;
};

enum class Layout { coordinate_major, function_major };

/**
 * Ordered dictionary psi_1..psi_p together with the rank-one layout used to
 * build product features.
 *
 * Coordinate-major: d cores, core i holds (psi_1(x_i), ..., psi_p(x_i)).
 * Function-major: p cores, core j holds (psi_j(x_1), ..., psi_j(x_d)),
 * optionally preceded by a constant 1 in every core.
 */
struct Dictionary {
    std::vector<BasisFunction> functions;
    Layout layout = Layout::coordinate_major;
    bool prepend_constant = false; ///< function-major only

    /// Throws ConfigError for an empty dictionary or a constant prepended
    /// to a coordinate-major layout.
    void validate() const;

    Index size() const { return static_cast<Index>(functions.size()); }
    /// Mode sizes of the feature tensor for states of dimension d.
    std::vector<Index> feature_modes(Index state_dim) const;
    /// Total number of product features (rows of the basis matrix).
    std::size_t feature_count(Index state_dim) const;
    /// Human-readable product feature at a linear (colexicographic) index.
    std::string feature_name(Index feature, Index state_dim) const;

    friend bool operator==(const Dictionary&, const Dictionary&) = default;
};

/// Evaluates one rank-one factor per core for a single state.
std::vector<Vector> eval_rank_one_cm(const Dictionary& dict, const Vector& x);
std::vector<Vector> eval_rank_one_fm(const Dictionary& dict, const Vector& x);
/// Dispatches on dict.layout.
std::vector<Vector> eval_rank_one(const Dictionary& dict, const Vector& x);

/// Vectorized rank-one feature tensor of a single state (length
/// feature_count), first factor varying fastest.
Vector feature_vector(const Dictionary& dict, const Vector& x);

/// Dense basis matrix Psi(X) with one column per snapshot (columns of X).
/// Throws SizeCapExceeded if features x snapshots exceeds `cap`.
Matrix build_basis_matrix(const Dictionary& dict, const Matrix& x,
                          std::size_t cap = SizeCaps{}.basis_matrix_entries);

/// Block-diagonal core of shape (m, n, m): block k is the mode-n vector at
/// rank position (k, k). Stored as a coordinate list of dense blocks.
struct BlockDiagonalCore {
    Index mode_size = 0;
    std::vector<Index> block_index; ///< rank position of each block
    Matrix blocks;                  ///< n x (number of blocks), one column per block

    Index rank() const { return static_cast<Index>(block_index.size()); }
    std::size_t nnz() const { return static_cast<std::size_t>(blocks.size()); }
};

/**
 * Basis tensor Psi(X) in TT format with modes (n_1, ..., n_c, m):
 *
 *   core 1:        1 x n x m, column k is the first factor of snapshot k
 *   cores 2..c:    m x n x m block diagonal, block k is factor i of snapshot k
 *   core c+1:      m x m x 1 identity
 *
 * All interior ranks equal m. The matricization (feature modes vs. sample
 * mode) equals build_basis_matrix.
 */
struct BasisTensorTT {
    Matrix first;                          ///< n_1 x m
    std::vector<BlockDiagonalCore> middle; ///< cores 2..c
    Index samples = 0;

    std::vector<Index> mode_sizes() const;
    std::vector<Index> feature_modes() const;
    /// Stored entries: every factor entry plus the m diagonal ones of the
    /// identity core.
    std::size_t nnz_count() const;
    /// Entries of the dense basis matrix (features x m).
    std::size_t dense_count() const;

    /// Expands the sparse cores into a generic TT. Throws SizeCapExceeded if
    /// the dense cores would exceed `cap` entries.
    TensorTrain to_tensor_train(std::size_t cap = SizeCaps{}.dense_entries) const;
};

BasisTensorTT build_basis_tt(const Dictionary& dict, const Matrix& x);

} // namespace mandy
