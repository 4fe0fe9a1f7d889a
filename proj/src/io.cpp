#include "mandy/io.hpp"

#include "mandy/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mandy {

namespace fs = std::filesystem;

namespace {

// nlohmann reports type errors as exceptions of its own; callers only see
// ConfigError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, Index rows, Index cols) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
        throw ConfigError("matrix has the wrong number of rows");
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ConfigError("matrix has the wrong number of columns");
        }
        for (Index k = 0; k < cols; ++k) {
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    }
    return m;
}

Json vector_to_json(const Vector& v) {
    return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector vector_from_json(const Json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

Json core_to_json(const Core& c) {
    Json out = Json::array();
    for (Index a = 0; a < c.left_rank(); ++a) {
        Json slab = Json::array();
        for (Index j = 0; j < c.mode_size(); ++j) {
            Json fibre = Json::array();
            for (Index b = 0; b < c.right_rank(); ++b) {
                fibre.push_back(c(a, j, b));
            }
            slab.push_back(std::move(fibre));
        }
        out.push_back(std::move(slab));
    }
    return out;
}

Core core_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty() || !j[0][0].is_array() ||
        j[0][0].empty()) {
        throw ConfigError("core must be a non-empty r x n x r' nested array");
    }
    const auto r0 = static_cast<Index>(j.size());
    const auto n = static_cast<Index>(j[0].size());
    const auto r1 = static_cast<Index>(j[0][0].size());
    Core c(r0, n, r1);
    for (Index a = 0; a < r0; ++a) {
        const Json& slab = j[static_cast<std::size_t>(a)];
        if (!slab.is_array() || static_cast<Index>(slab.size()) != n) {
            throw ConfigError("core slabs must share one mode size");
        }
        for (Index jj = 0; jj < n; ++jj) {
            const Json& fibre = slab[static_cast<std::size_t>(jj)];
            if (!fibre.is_array() || static_cast<Index>(fibre.size()) != r1) {
                throw ConfigError("core fibres must share one right rank");
            }
            for (Index b = 0; b < r1; ++b) {
                c(a, jj, b) = fibre[static_cast<std::size_t>(b)].get<double>();
            }
        }
    }
    return c;
}

std::string kind_name(BasisFunction::Kind k) {
    switch (k) {
    case BasisFunction::Kind::constant:
        return "constant";
    case BasisFunction::Kind::monomial:
        return "monomial";
    case BasisFunction::Kind::sine:
        return "sine";
    case BasisFunction::Kind::cosine:
        return "cosine";
    case BasisFunction::Kind::absolute:
        return "absolute";
    case BasisFunction::Kind::x_abs_x:
        return "x_abs_x";
    }
    return "constant";
}

BasisFunction::Kind kind_from_name(const std::string& s) {
    using K = BasisFunction::Kind;
    if (s == "constant") return K::constant;
    if (s == "monomial") return K::monomial;
    if (s == "sine" || s == "sin") return K::sine;
    if (s == "cosine" || s == "cos") return K::cosine;
    if (s == "absolute" || s == "abs") return K::absolute;
    if (s == "x_abs_x") return K::x_abs_x;
    throw ConfigError("unknown basis function kind '" + s + "'");
}

void require_keys(const Json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const char* what) {
    if (!j.is_object()) {
        throw ConfigError(std::string(what) + " must be a JSON object");
    }
    for (const char* k : required) {
        if (!j.contains(k)) {
            throw ConfigError(std::string(what) + ": missing key '" + k + "'");
        }
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) {
            throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw ConfigError("trailing characters in number '" + s + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse number '" + s + "'");
    }
}

} // namespace

// ---------------------------------------------------------------------------

Json tt_to_json(const TensorTrain& t) {
    Json cores = Json::array();
    for (const Core& c : t.cores()) {
        cores.push_back(core_to_json(c));
    }
    return {{"mode_sizes", t.mode_sizes()}, {"ranks", t.ranks()}, {"cores", std::move(cores)}};
}

TensorTrain tt_from_json(const Json& j) {
    return guarded("tensor train", [&] {
        require_keys(j, {"mode_sizes", "ranks", "cores"}, {}, "tensor train");
        std::vector<Core> cores;
        for (const Json& c : j.at("cores")) {
            cores.push_back(core_from_json(c));
        }
        TensorTrain t(std::move(cores));
        if (t.mode_sizes() != j.at("mode_sizes").get<std::vector<Index>>() ||
            t.ranks() != j.at("ranks").get<std::vector<Index>>()) {
            throw ConfigError("tensor train: mode_sizes or ranks disagree with the cores");
        }
        return t;
    });
}

Json pinv_to_json(const TTPseudoinverse& p) {
    Json cores = Json::array();
    for (const Core& c : p.left_cores) {
        cores.push_back(core_to_json(c));
    }
    return {{"left_cores", std::move(cores)},
            {"right_core", matrix_to_json(p.right_core)},
            {"singular_values", vector_to_json(p.singular_values)},
            {"threshold_used", p.threshold_used}};
}

TTPseudoinverse pinv_from_json(const Json& j) {
    return guarded("pseudoinverse", [&] {
        require_keys(j, {"left_cores", "right_core", "singular_values", "threshold_used"}, {},
                     "pseudoinverse");
        TTPseudoinverse p;
        for (const Json& c : j.at("left_cores")) {
            p.left_cores.push_back(core_from_json(c));
        }
        p.singular_values = vector_from_json(j.at("singular_values"));
        const Index s = p.singular_values.size();
        if (p.left_cores.empty() || s == 0 || p.left_cores.back().right_rank() != s ||
            (p.singular_values.array() <= 0.0).any()) {
            throw ConfigError("pseudoinverse: inconsistent rank or non-positive singular values");
        }
        const Json& rc = j.at("right_core");
        const Index m = rc.is_array() && !rc.empty() ? static_cast<Index>(rc[0].size()) : 0;
        p.right_core = matrix_from_json(rc, s, m);
        p.inverse_singular_values = p.singular_values.cwiseInverse();
        p.threshold_used = j.at("threshold_used").get<double>();
        return p;
    });
}

Json dictionary_to_json(const Dictionary& d) {
    Json functions = Json::array();
    for (const BasisFunction& f : d.functions) {
        Json e = {{"kind", kind_name(f.kind)}};
        if (f.kind == BasisFunction::Kind::monomial) {
            e["power"] = f.power;
        }
        functions.push_back(std::move(e));
    }
    return {{"layout", d.layout == Layout::coordinate_major ? "coordinate_major" : "function_major"},
            {"prepend_constant", d.prepend_constant},
            {"functions", std::move(functions)}};
}

Dictionary dictionary_from_json(const Json& j) {
    return guarded("dictionary", [&] {
        require_keys(j, {"layout", "functions"}, {"prepend_constant"}, "dictionary");
        Dictionary d;
        const auto layout = j.at("layout").get<std::string>();
        if (layout == "coordinate_major" || layout == "cm") {
            d.layout = Layout::coordinate_major;
        } else if (layout == "function_major" || layout == "fm") {
            d.layout = Layout::function_major;
        } else {
            throw ConfigError("dictionary: unknown layout '" + layout + "'");
        }
        d.prepend_constant = j.value("prepend_constant", false);
        for (const Json& e : j.at("functions")) {
            require_keys(e, {"kind"}, {"power"}, "basis function");
            BasisFunction f{kind_from_name(e.at("kind").get<std::string>()), 0};
            if (f.kind == BasisFunction::Kind::monomial) {
                f.power = e.value("power", 1);
                if (f.power < 0) {
                    throw ConfigError("dictionary: monomial power must be non-negative");
                }
            } else if (e.contains("power")) {
                throw ConfigError("dictionary: only monomials take a power");
            }
            d.functions.push_back(f);
        }
        d.validate();
        return d;
    });
}

Json system_to_json(const SystemParams& s) {
    return std::visit(
        [](const auto& p) -> Json {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ChuaParams>) {
                return {{"name", "chua"},
                        {"alpha", p.alpha},
                        {"beta", p.beta},
                        {"delta1", p.delta1},
                        {"delta2", p.delta2}};
            } else if constexpr (std::is_same_v<P, FpuParams>) {
                return {{"name", "fpu"}, {"d", p.d}, {"beta", p.beta}};
            } else {
                return {{"name", "kuramoto"},
                        {"d", p.d},
                        {"coupling", p.coupling},
                        {"forcing", p.forcing},
                        {"omega", vector_to_json(p.omega)}};
            }
        },
        s);
}

SystemParams system_from_json(const Json& j) {
    return guarded("system", [&]() -> SystemParams {
        if (!j.is_object() || !j.contains("name")) {
            throw ConfigError("system: expected an object with a 'name'");
        }
        const auto name = j.at("name").get<std::string>();
        if (name == "chua") {
            require_keys(j, {"name"}, {"alpha", "beta", "delta1", "delta2"}, "chua");
            ChuaParams p;
            p.alpha = j.value("alpha", p.alpha);
            p.beta = j.value("beta", p.beta);
            p.delta1 = j.value("delta1", p.delta1);
            p.delta2 = j.value("delta2", p.delta2);
            return p;
        }
        if (name == "fpu") {
            require_keys(j, {"name"}, {"d", "beta"}, "fpu");
            FpuParams p;
            p.d = j.value("d", p.d);
            p.beta = j.value("beta", p.beta);
            if (p.d < 1) {
                throw ConfigError("fpu: d must be at least 1");
            }
            return p;
        }
        if (name == "kuramoto") {
            require_keys(j, {"name"}, {"d", "coupling", "forcing", "omega"}, "kuramoto");
            const Index d = j.value("d", Index{10});
            if (d < 1) {
                throw ConfigError("kuramoto: d must be at least 1");
            }
            KuramotoParams p = KuramotoParams::equidistant(d, j.value("coupling", 2.0),
                                                           j.value("forcing", 0.2));
            if (j.contains("omega")) {
                p.omega = vector_from_json(j.at("omega"));
                if (p.omega.size() != d) {
                    throw ConfigError("kuramoto: omega must have d entries");
                }
            }
            return p;
        }
        throw ConfigError("unknown system '" + name + "'");
    });
}

Json coefficient_to_json(const CoefficientTensor& xi) {
    Json j = {{"kind", "coefficients"},
              {"dictionary", dictionary_to_json(xi.dictionary)},
              {"state_dim", xi.state_dim},
              {"meta",
               {{"method", xi.meta.method},
                {"threshold", xi.meta.threshold},
                {"cutoff", xi.meta.cutoff},
                {"samples", xi.meta.samples},
                {"wall_time", xi.meta.wall_time},
                {"residual", xi.meta.residual}}}};
    if (const auto* m = std::get_if<Matrix>(&xi.xi)) {
        j["format"] = "dense";
        j["matrix"] = matrix_to_json(*m);
    } else {
        j["format"] = "tt";
        j["tt"] = tt_to_json(std::get<TensorTrain>(xi.xi));
    }
    return j;
}

CoefficientTensor coefficient_from_json(const Json& j) {
    return guarded("coefficients", [&] {
        require_keys(j, {"kind", "dictionary", "state_dim", "meta", "format"}, {"matrix", "tt"},
                     "coefficients");
        CoefficientTensor xi;
        xi.dictionary = dictionary_from_json(j.at("dictionary"));
        xi.state_dim = j.at("state_dim").get<Index>();
        if (xi.state_dim < 1) {
            throw ConfigError("coefficients: state_dim must be positive");
        }
        const Json& meta = j.at("meta");
        require_keys(meta, {"method"}, {"threshold", "cutoff", "samples", "wall_time", "residual"},
                     "coefficient meta");
        xi.meta.method = meta.at("method").get<std::string>();
        xi.meta.threshold = meta.value("threshold", 0.0);
        xi.meta.cutoff = meta.value("cutoff", 0.0);
        xi.meta.samples = meta.value("samples", Index{0});
        xi.meta.wall_time = meta.value("wall_time", 0.0);
        xi.meta.residual = meta.value("residual", -1.0);
        const auto format = j.at("format").get<std::string>();
        std::vector<Index> modes = xi.feature_modes();
        modes.push_back(xi.state_dim);
        if (format == "dense") {
            const auto features = static_cast<Index>(xi.dictionary.feature_count(xi.state_dim));
            xi.xi = matrix_from_json(j.at("matrix"), features, xi.state_dim);
        } else if (format == "tt") {
            TensorTrain t = tt_from_json(j.at("tt"));
            if (t.mode_sizes() != modes) {
                throw ConfigError("coefficients: tensor modes do not match the dictionary");
            }
            xi.xi = std::move(t);
        } else {
            throw ConfigError("coefficients: unknown format '" + format + "'");
        }
        return xi;
    });
}

Json profile_to_json(const TruncationProfile& p) {
    Json spectra = Json::array();
    for (const Vector& s : p.spectra) {
        spectra.push_back(vector_to_json(s));
    }
    Index max_rank = 0;
    for (const Vector& s : p.spectra) {
        max_rank = std::max(max_rank, s.size());
    }
    Json bound = Json::array();
    for (Index r = 0; r <= max_rank; ++r) {
        bound.push_back(p.bound(r));
    }
    return {{"kind", "profile"},      {"mode_sizes", p.mode_sizes}, {"spectra", std::move(spectra)},
            {"eps_of_r", p.tails},    {"renyi_half", p.renyi_half}, {"bound", std::move(bound)}};
}

// ---------------------------------------------------------------------------
// Files

fs::path snapshot_metadata_path(const fs::path& csv) {
    fs::path meta = csv;
    meta.replace_extension(".json");
    if (meta == csv) {
        meta += ".json";
    }
    return meta;
}

void write_snapshots(const fs::path& csv, const SnapshotSet& s) {
    std::ofstream out(csv);
    if (!out) {
        throw ConfigError("cannot write " + csv.string());
    }
    const Index d = s.x.rows();
    for (Index i = 0; i < d; ++i) {
        out << (i ? "," : "") << "x_" << i + 1;
    }
    for (Index i = 0; i < d; ++i) {
        out << ",y_" << i + 1;
    }
    out << '\n';
    for (Index k = 0; k < s.x.cols(); ++k) {
        for (Index i = 0; i < d; ++i) {
            out << (i ? "," : "") << format_double(s.x(i, k));
        }
        for (Index i = 0; i < d; ++i) {
            out << ',' << format_double(s.y(i, k));
        }
        out << '\n';
    }
    Json meta = {{"kind", "snapshots"},
                 {"system", system_to_json(s.system)},
                 {"seed", s.seed},
                 {"derivative_order", s.derivative_order},
                 {"samples", s.x.cols()}};
    if (s.grid) {
        meta["time_grid"] = {{"t0", s.grid->t0}, {"dt", s.grid->dt}, {"count", s.grid->count}};
    } else {
        meta["time_grid"] = nullptr;
    }
    write_json_file(snapshot_metadata_path(csv), meta);
}

SnapshotSet read_snapshots(const fs::path& csv) {
    std::ifstream in(csv);
    if (!in) {
        throw ConfigError("cannot read " + csv.string());
    }
    const Json meta = read_json_file(snapshot_metadata_path(csv));
    return guarded("snapshots", [&] {
        require_keys(meta, {"kind", "system", "seed", "derivative_order", "samples", "time_grid"},
                     {}, "snapshot metadata");
        SnapshotSet s;
        s.system = system_from_json(meta.at("system"));
        s.seed = meta.at("seed").get<std::uint64_t>();
        s.derivative_order = meta.at("derivative_order").get<int>();
        if (!meta.at("time_grid").is_null()) {
            const Json& g = meta.at("time_grid");
            s.grid = TimeGrid{g.at("t0").get<double>(), g.at("dt").get<double>(),
                              g.at("count").get<Index>()};
        }
        std::string line;
        if (!std::getline(in, line)) {
            throw ConfigError("snapshot file is empty");
        }
        const auto header = split_csv(line);
        const Index d = state_dimension(s.system);
        if (static_cast<Index>(header.size()) != 2 * d) {
            throw ConfigError("snapshot header does not have 2d columns");
        }
        for (Index i = 0; i < d; ++i) {
            if (header[static_cast<std::size_t>(i)] != "x_" + std::to_string(i + 1) ||
                header[static_cast<std::size_t>(d + i)] != "y_" + std::to_string(i + 1)) {
                throw ConfigError("unexpected snapshot header");
            }
        }
        std::vector<std::vector<double>> rows;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto cells = split_csv(line);
            if (static_cast<Index>(cells.size()) != 2 * d) {
                throw ConfigError("snapshot row " + std::to_string(rows.size() + 1) +
                                  " does not have 2d columns");
            }
            std::vector<double> row;
            for (const auto& c : cells) {
                row.push_back(parse_double(c));
            }
            rows.push_back(std::move(row));
        }
        const auto m = static_cast<Index>(rows.size());
        if (m != meta.at("samples").get<Index>()) {
            throw ConfigError("snapshot row count disagrees with the metadata");
        }
        s.x.resize(d, m);
        s.y.resize(d, m);
        for (Index k = 0; k < m; ++k) {
            for (Index i = 0; i < d; ++i) {
                s.x(i, k) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                s.y(i, k) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(d + i)];
            }
        }
        return s;
    });
}

namespace {
constexpr const char* kBenchHeader = "method,d,m,epsilon,seconds,storage_entries,rel_error,status";
}

void write_bench_csv(const fs::path& path, const std::vector<BenchRecord>& records) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << kBenchHeader << '\n';
    for (const BenchRecord& r : records) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out << r.method << ',' << r.d << ',' << r.m << ',' << format_double(r.epsilon) << ','
            << format_double(r.seconds) << ',' << r.storage_entries << ','
            << format_double(r.rel_error) << ',' << status << '\n';
    }
}

std::vector<BenchRecord> read_bench_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != kBenchHeader) {
        throw ConfigError("bench CSV header mismatch");
    }
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c = split_csv(line);
        if (c.size() != 8) {
            throw ConfigError("bench CSV row does not have 8 columns");
        }
        BenchRecord r;
        r.method = c[0];
        r.d = static_cast<Index>(parse_double(c[1]));
        r.m = static_cast<Index>(parse_double(c[2]));
        r.epsilon = parse_double(c[3]);
        r.seconds = parse_double(c[4]);
        r.storage_entries = static_cast<std::size_t>(parse_double(c[5]));
        r.rel_error = parse_double(c[6]);
        r.status = c[7];
        if (r.method != "sindy" && r.method != "mandy") {
            throw ConfigError("bench CSV: unknown method '" + r.method + "'");
        }
        out.push_back(std::move(r));
    }
    return out;
}

Json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_json_file(const fs::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << j.dump(1) << '\n';
}

std::string schema_check(const fs::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        if (header == kBenchHeader) {
            const auto records = read_bench_csv(path);
            (void)records;
            return "bench";
        }
        const SnapshotSet s = read_snapshots(path);
        (void)s;
        return "snapshots";
    }
    const Json j = read_json_file(path);
    return guarded("schema", [&]() -> std::string {
        auto round_trip = [&](const Json& again, const char* kind) {
            if (again != j) {
                throw ConfigError(std::string(kind) + " does not survive a round trip");
            }
            return std::string(kind);
        };
        if (j.contains("cores")) {
            return round_trip(tt_to_json(tt_from_json(j)), "tensor_train");
        }
        if (j.contains("left_cores")) {
            return round_trip(pinv_to_json(pinv_from_json(j)), "pseudoinverse");
        }
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "coefficients") {
            return round_trip(coefficient_to_json(coefficient_from_json(j)), "coefficients");
        }
        if (kind == "report") {
            require_keys(j, {"kind", "inputs", "methods"}, {"mutual_rel_difference"}, "report");
            if (!j.at("methods").is_array() || j.at("methods").empty()) {
                throw ConfigError("report: methods must be a non-empty array");
            }
            for (const Json& m : j.at("methods")) {
                require_keys(m, {"method", "residual", "wall_time", "storage"},
                             {"rel_error_vs_exact", "threshold", "cutoff", "samples"},
                             "report entry");
                require_keys(m.at("storage"), {"basis_entries", "coefficient_entries"}, {},
                             "report storage");
            }
            return "report";
        }
        if (kind == "profile") {
            require_keys(j, {"kind", "mode_sizes", "spectra", "eps_of_r", "renyi_half", "bound"}, {},
                         "profile");
            const auto modes = j.at("mode_sizes").get<std::vector<Index>>();
            if (j.at("spectra").size() + 1 != modes.size() ||
                j.at("eps_of_r").size() != j.at("spectra").size()) {
                throw ConfigError("profile: one spectrum per cut expected");
            }
            return "profile";
        }
        if (kind == "manifest") {
            require_keys(j, {"kind", "seed", "cells", "csv", "caps"}, {"records"}, "manifest");
            return "manifest";
        }
        if (kind == "snapshots") {
            throw ConfigError("snapshot metadata is checked through its CSV file");
        }
        if (kind == "comparison") {
            require_keys(j, {"kind", "pairs"}, {}, "comparison");
            return "comparison";
        }
        throw ConfigError("unknown document kind '" + kind + "'");
    });
}

} // namespace mandy
