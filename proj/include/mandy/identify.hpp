#pragma once

#include "mandy/basis.hpp"
#include "mandy/linalg.hpp"
#include "mandy/sindy.hpp"
#include "mandy/systems.hpp"
#include "mandy/tensor_train.hpp"

#include <string>
#include <variant>

namespace mandy {

struct IdentifyMeta {
    std::string method;      ///< "mandy", "sindy" or "exact"
    double threshold = 0.0;  ///< SVD cutoff epsilon
    double cutoff = 0.0;     ///< hard threshold lambda (SINDy only)
    Index samples = 0;
    double wall_time = 0.0;  ///< seconds; MANDy includes the basis build, SINDy only the solve
    double residual = -1.0;  ///< ||Y - Xi^T Psi(X)||_F, negative when not computed
};

/**
 * Recovered coefficients Xi: either a features x d matrix or a TT with
 * modes (feature modes..., d). Feature order follows the dictionary's
 * colexicographic enumeration in both cases.
 */
struct CoefficientTensor {
    std::variant<Matrix, TensorTrain> xi;
    Dictionary dictionary;
    Index state_dim = 0;
    IdentifyMeta meta;

    bool is_tt() const { return std::holds_alternative<TensorTrain>(xi); }
    std::vector<Index> feature_modes() const { return dictionary.feature_modes(state_dim); }
    /// Entries actually stored by this representation.
    std::size_t storage() const;
};

/// Xi = pinv_apply_left(tt_pinv(build_basis_tt(dict, X), eps), Y).
CoefficientTensor mandy_identify(const Matrix& x, const Matrix& y, const Dictionary& dict,
                                 double threshold = 0.0);

/// Dense SINDy fit on build_basis_matrix(dict, X); lambda = 0 is plain least
/// squares. Throws SizeCapExceeded if the basis matrix exceeds `cap`.
CoefficientTensor sindy_identify(const Matrix& x, const Matrix& y, const Dictionary& dict,
                                 double cutoff = 0.0, double threshold = 0.0,
                                 std::size_t cap = SizeCaps{}.basis_matrix_entries,
                                 SindyResult* details = nullptr);

/// Closed-form coefficients of a benchmark system under its reference dictionary.
CoefficientTensor exact_coefficient_tensor(const SystemParams& system);

/// Xi^T psi(x), contracting the TT with the rank-one features of x.
Vector evaluate_rhs(const CoefficientTensor& xi, const Vector& x);

/// ||a - b||_F / ||b||_F. Densifies when both fit under `cap`, otherwise
/// works on tensor trains. Throws ModeMismatch for different dictionaries
/// or state dimensions.
double relative_error(const CoefficientTensor& a, const CoefficientTensor& b,
                      std::size_t cap = SizeCaps{}.dense_entries);

/// Features x d matrix. Throws SizeCapExceeded above `cap` entries.
Matrix to_dense_matrix(const CoefficientTensor& xi, std::size_t cap = SizeCaps{}.dense_entries);

/// TT representation (exact TT-SVD of the matrix for the dense variant).
TensorTrain to_tensor_train(const CoefficientTensor& xi);

/// ||Y - Xi^T Psi(X)||_F by per-snapshot evaluation.
double model_residual(const CoefficientTensor& xi, const Matrix& x, const Matrix& y);

} // namespace mandy
