#include "mandy/basis.hpp"

#include "mandy/errors.hpp"

#include <cmath>

namespace mandy {

double BasisFunction::operator()(double x) const {
    switch (kind) {
    case Kind::constant:
        return 1.0;
    case Kind::monomial:
        return std::pow(x, power);
    case Kind::sine:
        return std::sin(x);
    case Kind::cosine:
        return std::cos(x);
    case Kind::absolute:
        return std::abs(x);
    case Kind::x_abs_x:
        return x * std::abs(x);
    }
    return 0.0;
}

std::string BasisFunction::name(const std::string& arg) const {
    switch (kind) {
    case Kind::constant:
        return "1";
    case Kind::monomial:
        if (power == 0) {
            return "1";
        }
        return power == 1 ? arg : arg + "^" + std::to_string(power);
    case Kind::sine:
        return "sin(" + arg + ")";
    case Kind::cosine:
        return "cos(" + arg + ")";
    case Kind::absolute:
        return "|" + arg + "|";
    case Kind::x_abs_x:
        return arg + "|" + arg + "|";
    }
    return "?";
}

void Dictionary::validate() const {
    if (functions.empty()) {
        throw ConfigError("dictionary must contain at least one function");
    }
    if (prepend_constant && layout != Layout::function_major) {
        throw ConfigError("prepend_constant is only defined for the function-major layout");
    }
    for (const BasisFunction& f : functions) {
        if (f.kind == BasisFunction::Kind::monomial && f.power < 0) {
            throw ConfigError("monomial power must be non-negative");
        }
    }
}

std::vector<Index> Dictionary::feature_modes(Index state_dim) const {
    if (layout == Layout::coordinate_major) {
        return std::vector<Index>(static_cast<std::size_t>(state_dim), size());
    }
    return std::vector<Index>(functions.size(), state_dim + (prepend_constant ? 1 : 0));
}

std::size_t Dictionary::feature_count(Index state_dim) const {
    return checked_product(feature_modes(state_dim));
}

std::string Dictionary::feature_name(Index feature, Index state_dim) const {
    const std::vector<Index> modes = feature_modes(state_dim);
    std::string out;
    auto append = [&out](const std::string& factor) {
        if (factor == "1") {
            return;
        }
        out += out.empty() ? factor : "*" + factor;
    };
    for (std::size_t core = 0; core < modes.size(); ++core) {
        const Index j = feature % modes[core];
        feature /= modes[core];
        if (layout == Layout::coordinate_major) {
            append(functions[static_cast<std::size_t>(j)].name("x" + std::to_string(core + 1)));
        } else {
            const Index coord = prepend_constant ? j - 1 : j;
            if (coord >= 0) {
                append(functions[core].name("x" + std::to_string(coord + 1)));
            }
        }
    }
    return out.empty() ? "1" : out;
}

std::vector<Vector> eval_rank_one_cm(const Dictionary& dict, const Vector& x) {
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) {
        Vector v(dict.size());
        for (Index j = 0; j < dict.size(); ++j) {
            v(j) = dict.functions[static_cast<std::size_t>(j)](x(i));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vector> eval_rank_one_fm(const Dictionary& dict, const Vector& x) {
    const Index offset = dict.prepend_constant ? 1 : 0;
    std::vector<Vector> out;
    out.reserve(dict.functions.size());
    for (const BasisFunction& f : dict.functions) {
        Vector v(x.size() + offset);
        if (offset == 1) {
            v(0) = 1.0;
        }
        for (Index i = 0; i < x.size(); ++i) {
            v(offset + i) = f(x(i));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vector> eval_rank_one(const Dictionary& dict, const Vector& x) {
    return dict.layout == Layout::coordinate_major ? eval_rank_one_cm(dict, x)
                                                   : eval_rank_one_fm(dict, x);
}

namespace {

// Kronecker product with the first factor varying fastest.
Vector colex_kron(const std::vector<Vector>& factors) {
    Vector v = Vector::Ones(1);
    for (const Vector& f : factors) {
        Vector next(v.size() * f.size());
        for (Index j = 0; j < f.size(); ++j) {
            next.segment(j * v.size(), v.size()) = f(j) * v;
        }
        v = std::move(next);
    }
    return v;
}

} // namespace

Vector feature_vector(const Dictionary& dict, const Vector& x) {
    return colex_kron(eval_rank_one(dict, x));
}

Matrix build_basis_matrix(const Dictionary& dict, const Matrix& x, std::size_t cap) {
    dict.validate();
    const std::size_t rows = dict.feature_count(x.rows());
    const auto cols = static_cast<std::size_t>(x.cols());
    if (cols != 0 && rows > cap / cols) {
        throw SizeCapExceeded("basis matrix with " + std::to_string(rows) + " x " +
                              std::to_string(cols) + " entries exceeds cap " +
                              std::to_string(cap));
    }
    Matrix psi(static_cast<Index>(rows), x.cols());
    for (Index k = 0; k < x.cols(); ++k) {
        psi.col(k) = feature_vector(dict, x.col(k));
    }
    return psi;
}

std::vector<Index> BasisTensorTT::feature_modes() const {
    std::vector<Index> modes{first.rows()};
    for (const BlockDiagonalCore& c : middle) {
        modes.push_back(c.mode_size);
    }
    return modes;
}

std::vector<Index> BasisTensorTT::mode_sizes() const {
    std::vector<Index> modes = feature_modes();
    modes.push_back(samples);
    return modes;
}

std::size_t BasisTensorTT::nnz_count() const {
    std::size_t total = static_cast<std::size_t>(first.size());
    for (const BlockDiagonalCore& c : middle) {
        total += c.nnz();
    }
    return total + static_cast<std::size_t>(samples);
}

std::size_t BasisTensorTT::dense_count() const {
    return checked_product(mode_sizes());
}

TensorTrain BasisTensorTT::to_tensor_train(std::size_t cap) const {
    std::size_t entries = static_cast<std::size_t>(first.size() + samples * samples);
    for (const BlockDiagonalCore& c : middle) {
        entries += static_cast<std::size_t>(samples * samples * c.mode_size);
    }
    if (entries > cap) {
        throw SizeCapExceeded("basis TT with dense cores needs " + std::to_string(entries) +
                              " entries, cap is " + std::to_string(cap));
    }
    std::vector<Core> cores;
    cores.push_back(Core::from_left_unfolding(first, 1, first.rows()));
    for (const BlockDiagonalCore& c : middle) {
        Core core(samples, c.mode_size, samples);
        for (Index b = 0; b < c.rank(); ++b) {
            const Index k = c.block_index[static_cast<std::size_t>(b)];
            for (Index j = 0; j < c.mode_size; ++j) {
                core(k, j, k) = c.blocks(j, b);
            }
        }
        cores.push_back(std::move(core));
    }
    Core identity(samples, samples, 1);
    for (Index k = 0; k < samples; ++k) {
        identity(k, k, 0) = 1.0;
    }
    cores.push_back(std::move(identity));
    return TensorTrain(std::move(cores));
}

BasisTensorTT build_basis_tt(const Dictionary& dict, const Matrix& x) {
    dict.validate();
    if (x.cols() < 1) {
        throw ShapeMismatch("build_basis_tt: at least one snapshot is required");
    }
    const std::vector<Index> modes = dict.feature_modes(x.rows());
    const Index m = x.cols();
    BasisTensorTT psi;
    psi.samples = m;
    psi.first.resize(modes.front(), m);
    for (std::size_t i = 1; i < modes.size(); ++i) {
        BlockDiagonalCore core;
        core.mode_size = modes[i];
        core.block_index.resize(static_cast<std::size_t>(m));
        core.blocks.resize(modes[i], m);
        psi.middle.push_back(std::move(core));
    }
    for (Index k = 0; k < m; ++k) {
        const std::vector<Vector> factors = eval_rank_one(dict, x.col(k));
        psi.first.col(k) = factors.front();
        for (std::size_t i = 1; i < factors.size(); ++i) {
            psi.middle[i - 1].block_index[static_cast<std::size_t>(k)] = k;
            psi.middle[i - 1].blocks.col(k) = factors[i];
        }
    }
    return psi;
}

} // namespace mandy
