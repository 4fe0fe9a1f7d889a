// Command-line driver: simulate, identify, compare, bench, diagnose, schema-check.
//
// Exit codes: 0 ok, 2 configuration or input error, 3 simulation failure,
// 4 solve failure.

#include "mandy/diagnostics.hpp"
#include "mandy/errors.hpp"
#include "mandy/identify.hpp"
#include "mandy/io.hpp"
#include "mandy/systems.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mandy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitSolve = 4;

struct SimulationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every setting any subcommand reads. Values come from --config first and
// are then overridden by explicit flags.
struct RunConfig {
    std::string command;
    std::string system;
    Json system_object; // full system spec from a config file, if any
    std::optional<Index> d;
    std::optional<double> beta;
    std::optional<double> coupling;
    std::optional<double> forcing;
    std::string dictionary; // preset name or JSON file
    Json dictionary_object;
    std::string method = "mandy";
    double epsilon = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::string input;
    std::vector<std::string> inputs;
    std::string output;
    std::string report;
    std::string reference;
    std::string exact_from;
    std::string manifest;
    std::optional<Index> m;
    std::optional<double> t_end;
    std::optional<double> dt;
    std::string mode;
    double lo = -0.1;
    double hi = 0.1;
    std::optional<bool> include_end;
    SizeCaps caps = SizeCaps::from_environment();
    std::vector<Index> d_list;
    std::vector<Index> m_list;
    std::vector<double> eps_list;
    std::vector<Index> modes;
    Index rank = 2;
};

// ---------------------------------------------------------------------------
// Config files

template <class T>
void take(const Json& j, const char* key, T& out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

template <class T>
void take(const Json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

void load_config(const fs::path& path, RunConfig& c) {
    const Json j = read_json_file(path);
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::vector<std::string> known = {
        "command", "system",   "d",        "beta",      "coupling",   "forcing", "dictionary",
        "method",  "epsilon",  "lambda",   "seed",      "input",      "inputs",  "output",
        "report",  "reference", "exact_from", "manifest", "m",        "t_end",   "dt",
        "mode",    "lo",       "hi",       "include_end", "caps",     "grid",    "modes",
        "rank"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    try {
        take(j, "command", c.command);
        if (j.contains("system")) {
            if (j.at("system").is_string()) {
                c.system = j.at("system").get<std::string>();
            } else {
                c.system_object = j.at("system");
                c.system = c.system_object.at("name").get<std::string>();
            }
        }
        take(j, "d", c.d);
        take(j, "beta", c.beta);
        take(j, "coupling", c.coupling);
        take(j, "forcing", c.forcing);
        if (j.contains("dictionary")) {
            if (j.at("dictionary").is_string()) {
                c.dictionary = j.at("dictionary").get<std::string>();
            } else {
                c.dictionary_object = j.at("dictionary");
            }
        }
        take(j, "method", c.method);
        take(j, "epsilon", c.epsilon);
        take(j, "lambda", c.lambda);
        take(j, "seed", c.seed);
        take(j, "input", c.input);
        take(j, "inputs", c.inputs);
        take(j, "output", c.output);
        take(j, "report", c.report);
        take(j, "reference", c.reference);
        take(j, "exact_from", c.exact_from);
        take(j, "manifest", c.manifest);
        take(j, "m", c.m);
        take(j, "t_end", c.t_end);
        take(j, "dt", c.dt);
        take(j, "mode", c.mode);
        take(j, "lo", c.lo);
        take(j, "hi", c.hi);
        take(j, "include_end", c.include_end);
        take(j, "modes", c.modes);
        take(j, "rank", c.rank);
        if (j.contains("caps")) {
            const Json& caps = j.at("caps");
            for (const auto& [key, value] : caps.items()) {
                if (key != "dense_entries" && key != "basis_matrix_entries") {
                    throw ConfigError("config.caps: unknown key '" + key + "'");
                }
            }
            take(caps, "dense_entries", c.caps.dense_entries);
            take(caps, "basis_matrix_entries", c.caps.basis_matrix_entries);
        }
        if (j.contains("grid")) {
            const Json& grid = j.at("grid");
            for (const auto& [key, value] : grid.items()) {
                if (key != "d" && key != "m" && key != "epsilon") {
                    throw ConfigError("config.grid: unknown key '" + key + "'");
                }
            }
            take(grid, "d", c.d_list);
            take(grid, "m", c.m_list);
            take(grid, "epsilon", c.eps_list);
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Shared helpers

SystemParams make_system(const RunConfig& c, std::optional<Index> d_override = std::nullopt) {
    Json spec = c.system_object.is_object() ? c.system_object : Json{{"name", c.system}};
    if (c.system.empty() && !spec.contains("name")) {
        throw ConfigError("no system given (use --system chua|fpu|kuramoto)");
    }
    spec["name"] = c.system;
    const std::string& name = c.system;
    const std::optional<Index> d = d_override ? d_override : c.d;
    if (name == "chua") {
        if (d && *d != 3) {
            throw ConfigError("chua has state dimension 3");
        }
    } else {
        if (d) {
            spec["d"] = *d;
            if (name == "kuramoto" && spec.contains("omega") &&
                spec.at("omega").size() != static_cast<std::size_t>(*d)) {
                spec.erase("omega");
            }
        }
        if (name == "fpu" && c.beta) {
            spec["beta"] = *c.beta;
        }
        if (name == "kuramoto") {
            if (c.coupling) spec["coupling"] = *c.coupling;
            if (c.forcing) spec["forcing"] = *c.forcing;
        }
    }
    return system_from_json(spec);
}

Dictionary dictionary_preset(const std::string& name) {
    if (name == "chua-monomial") return chua_monomial_dictionary();
    if (name == "chua-fm") return chua_function_major_dictionary();
    if (name == "fpu-cubic") return fpu_dictionary();
    if (name == "kuramoto-trig") return kuramoto_dictionary();
    throw ConfigError("unknown dictionary preset '" + name + "'");
}

Dictionary resolve_dictionary(const RunConfig& c, const SystemParams& system) {
    if (c.dictionary_object.is_object()) {
        return dictionary_from_json(c.dictionary_object);
    }
    if (c.dictionary.empty() || c.dictionary == "reference") {
        return reference_dictionary(system);
    }
    if (fs::exists(c.dictionary)) {
        return dictionary_from_json(read_json_file(c.dictionary));
    }
    return dictionary_preset(c.dictionary);
}

std::vector<std::string> methods_of(const std::string& method) {
    if (method == "both") return {"mandy", "sindy"};
    if (method == "mandy" || method == "sindy") return {method};
    throw ConfigError("unknown method '" + method + "' (expected sindy, mandy or both)");
}

fs::path with_method(const fs::path& out, const std::string& method, bool several) {
    if (!several) {
        return out;
    }
    fs::path p = out;
    p.replace_extension();
    p += "." + method + ".json";
    return p;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_simulate(const RunConfig& c) {
    if (c.output.empty()) {
        throw ConfigError("simulate needs --out");
    }
    SnapshotSpec spec;
    spec.system = make_system(c);
    spec.seed = c.seed;
    spec.lo = c.lo;
    spec.hi = c.hi;
    const bool is_fpu = std::holds_alternative<FpuParams>(spec.system);
    const bool is_kuramoto = std::holds_alternative<KuramotoParams>(spec.system);
    std::string mode = c.mode;
    if (mode.empty()) {
        mode = is_fpu ? "uniform" : "trajectory";
    }
    if (mode == "uniform") {
        spec.mode = SamplingMode::uniform;
        spec.m = c.m.value_or(1000);
    } else if (mode == "trajectory") {
        spec.mode = SamplingMode::trajectory;
        const double dt = c.dt.value_or(is_kuramoto ? 0.1 : 0.01);
        const double t_end = c.t_end.value_or(is_kuramoto ? 100.0 : 20.0);
        spec.grid = TimeGrid::over(0.0, t_end, dt, c.include_end.value_or(is_kuramoto));
        if (c.m) {
            throw ConfigError("--m applies to uniform sampling; use --t-end and --dt");
        }
    } else {
        throw ConfigError("unknown sampling mode '" + mode + "'");
    }
    SnapshotSet snapshots;
    try {
        snapshots = generate_snapshots(spec);
    } catch (const StepFailure& e) {
        throw SimulationFailure(e.what());
    }
    write_snapshots(c.output, snapshots);
    std::cout << "wrote " << snapshots.x.cols() << " snapshots of dimension " << snapshots.x.rows()
              << " to " << c.output << '\n';
    return kExitOk;
}

int cmd_identify(const RunConfig& c) {
    if (c.input.empty() || c.output.empty()) {
        throw ConfigError("identify needs --input and --out");
    }
    const SnapshotSet data = read_snapshots(c.input);
    const Dictionary dict = resolve_dictionary(c, data.system);
    const auto methods = methods_of(c.method);
    const bool exact_available = dict == reference_dictionary(data.system);
    std::optional<CoefficientTensor> exact;
    if (exact_available) {
        exact = exact_coefficient_tensor(data.system);
    }

    Json report = {{"kind", "report"},
                   {"inputs", {{"snapshots", c.input}, {"dictionary", dictionary_to_json(dict)}}},
                   {"methods", Json::array()}};
    std::vector<CoefficientTensor> fits;
    for (const std::string& method : methods) {
        CoefficientTensor fit;
        std::size_t basis_entries = 0;
        try {
            if (method == "mandy") {
                fit = mandy_identify(data.x, data.y, dict, c.epsilon);
                basis_entries = build_basis_tt(dict, data.x).nnz_count();
                fit.meta.residual = model_residual(fit, data.x, data.y);
            } else {
                fit = sindy_identify(data.x, data.y, dict, c.lambda, c.epsilon,
                                     c.caps.basis_matrix_entries);
                basis_entries = dict.feature_count(data.x.rows()) * static_cast<std::size_t>(data.x.cols());
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw SolveFailure(method + ": " + e.what());
        }
        Json entry = {{"method", method},
                      {"residual", fit.meta.residual},
                      {"wall_time", fit.meta.wall_time},
                      {"storage",
                       {{"basis_entries", basis_entries}, {"coefficient_entries", fit.storage()}}},
                      {"threshold", c.epsilon},
                      {"cutoff", method == "sindy" ? c.lambda : 0.0},
                      {"samples", data.x.cols()}};
        if (exact) {
            entry["rel_error_vs_exact"] = relative_error(fit, *exact, c.caps.dense_entries);
        }
        const fs::path out = with_method(c.output, method, methods.size() > 1);
        write_json_file(out, coefficient_to_json(fit));
        std::cout << method << ": residual " << fit.meta.residual << ", " << fit.meta.wall_time
                  << " s";
        if (exact) {
            std::cout << ", relative error vs exact " << entry["rel_error_vs_exact"].get<double>();
        }
        std::cout << " -> " << out.string() << '\n';
        report["methods"].push_back(std::move(entry));
        fits.push_back(std::move(fit));
    }
    if (fits.size() == 2) {
        const double mutual = relative_error(fits[0], fits[1], c.caps.dense_entries);
        report["mutual_rel_difference"] = mutual;
        std::cout << "mutual relative difference " << mutual << '\n';
    }
    if (!c.report.empty()) {
        write_json_file(c.report, report);
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& c) {
    std::vector<std::string> files = c.inputs;
    if (!c.input.empty()) {
        files.insert(files.begin(), c.input);
    }
    if (files.empty()) {
        throw ConfigError("compare needs at least one coefficient file");
    }
    std::optional<CoefficientTensor> reference;
    std::string reference_name;
    if (!c.reference.empty()) {
        reference = coefficient_from_json(read_json_file(c.reference));
        reference_name = c.reference;
    } else if (!c.exact_from.empty()) {
        reference = exact_coefficient_tensor(read_snapshots(c.exact_from).system);
        reference_name = "exact";
    } else if (!c.system.empty()) {
        reference = exact_coefficient_tensor(make_system(c));
        reference_name = "exact";
    } else if (files.size() < 2) {
        throw ConfigError("compare needs a reference (--reference, --exact-from or --system) "
                          "or at least two files");
    }
    std::vector<CoefficientTensor> tensors;
    for (const auto& f : files) {
        tensors.push_back(coefficient_from_json(read_json_file(f)));
    }
    Json pairs = Json::array();
    auto emit = [&](const std::string& a, const CoefficientTensor& ta, const std::string& b,
                    const CoefficientTensor& tb) {
        double err = 0.0;
        try {
            err = relative_error(ta, tb, c.caps.dense_entries);
        } catch (const ModeMismatch& e) {
            throw ConfigError(e.what());
        }
        std::printf("%s %s %.6e\n", a.c_str(), b.c_str(), err);
        pairs.push_back({{"a", a}, {"b", b}, {"rel_error", err}});
    };
    if (reference) {
        for (std::size_t i = 0; i < files.size(); ++i) {
            emit(files[i], tensors[i], reference_name, *reference);
        }
    } else {
        for (std::size_t i = 0; i < files.size(); ++i) {
            for (std::size_t k = i + 1; k < files.size(); ++k) {
                emit(files[i], tensors[i], files[k], tensors[k]);
            }
        }
    }
    if (!c.output.empty()) {
        write_json_file(c.output, {{"kind", "comparison"}, {"pairs", pairs}});
    }
    return kExitOk;
}

int cmd_bench(const RunConfig& c) {
    if (c.output.empty()) {
        throw ConfigError("bench needs --out");
    }
    const std::vector<Index> ds = c.d_list.empty() ? std::vector<Index>{c.d.value_or(4)} : c.d_list;
    const std::vector<Index> ms = c.m_list.empty() ? std::vector<Index>{c.m.value_or(500)} : c.m_list;
    const std::vector<double> eps = c.eps_list.empty() ? std::vector<double>{c.epsilon} : c.eps_list;
    const auto methods = methods_of(c.method);
    std::vector<BenchCell> grid;
    Json cells = Json::array();
    for (Index d : ds) {
        const SystemParams system = make_system(c, c.system == "chua" ? std::nullopt : std::optional(d));
        const Dictionary dict = resolve_dictionary(c, system);
        for (Index m : ms) {
            for (double e : eps) {
                BenchCell cell{system, dict, m, e};
                cell.run_mandy = std::find(methods.begin(), methods.end(), "mandy") != methods.end();
                cell.run_sindy = std::find(methods.begin(), methods.end(), "sindy") != methods.end();
                grid.push_back(cell);
                cells.push_back({{"system", system_to_json(system)},
                                 {"dictionary", dictionary_to_json(dict)},
                                 {"m", m},
                                 {"epsilon", e},
                                 {"methods", methods}});
            }
        }
    }
    const auto records = run_benchmark(grid, c.seed, c.caps);
    write_bench_csv(c.output, records);
    const fs::path manifest = c.manifest.empty() ? snapshot_metadata_path(c.output)
                                                 : fs::path(c.manifest);
    write_json_file(manifest, {{"kind", "manifest"},
                               {"seed", c.seed},
                               {"csv", c.output},
                               {"caps",
                                {{"dense_entries", c.caps.dense_entries},
                                 {"basis_matrix_entries", c.caps.basis_matrix_entries}}},
                               {"cells", cells},
                               {"records", records.size()}});
    for (const auto& r : records) {
        std::printf("%-5s d=%-3ld m=%-6ld eps=%-8.1e %9.3f s  storage %-12zu err %.3e  %s\n",
                    r.method.c_str(), static_cast<long>(r.d), static_cast<long>(r.m), r.epsilon,
                    r.seconds, r.storage_entries, r.rel_error, r.status.c_str());
    }
    return kExitOk;
}

int cmd_diagnose(const RunConfig& c) {
    Vector x;
    std::vector<Index> modes = c.modes;
    if (!c.input.empty()) {
        const Json j = read_json_file(c.input);
        if (j.contains("cores")) {
            const TensorTrain t = tt_from_json(j);
            modes = t.mode_sizes();
            x = tt_to_full(t, c.caps.dense_entries).data;
        } else {
            try {
                modes = j.at("modes").get<std::vector<Index>>();
                const auto values = j.at("values").get<std::vector<double>>();
                x = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
            } catch (const Json::exception& e) {
                throw ConfigError(std::string("diagnose input: ") + e.what());
            }
        }
    } else {
        if (modes.empty()) {
            throw ConfigError("diagnose needs --input or --modes");
        }
        // Random TT with the requested rank at every cut.
        std::mt19937_64 rng(c.seed);
        std::vector<Index> ranks(modes.size() - 1, c.rank);
        x = tt_to_full(tt_random(modes, ranks, rng), c.caps.dense_entries).data;
    }
    const TruncationProfile profile = truncation_profile(x, modes, c.caps.dense_entries);
    const Json j = profile_to_json(profile);
    if (!c.output.empty()) {
        write_json_file(c.output, j);
    } else {
        std::cout << j.dump(1) << '\n';
    }
    return kExitOk;
}

int cmd_schema_check(const RunConfig& c) {
    std::vector<std::string> files = c.inputs;
    if (!c.input.empty()) {
        files.insert(files.begin(), c.input);
    }
    if (files.empty()) {
        throw ConfigError("schema-check needs at least one file");
    }
    for (const auto& f : files) {
        std::cout << f << ": " << schema_check(f) << " ok\n";
    }
    return kExitOk;
}

int dispatch(const RunConfig& c) {
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "identify") return cmd_identify(c);
    if (c.command == "compare") return cmd_compare(c);
    if (c.command == "bench") return cmd_bench(c);
    if (c.command == "diagnose") return cmd_diagnose(c);
    if (c.command == "schema-check") return cmd_schema_check(c);
    throw ConfigError("unknown command '" + c.command + "'");
}

std::optional<std::string> find_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            return std::string(argv[i + 1]);
        }
        if (arg.rfind("--config=", 0) == 0) {
            return arg.substr(9);
        }
    }
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig c;
    CLI::App app{"Equation discovery with tensor-train and matrix least squares"};
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "RunConfig JSON file");

    auto add_system = [&](CLI::App* sub) {
        sub->add_option("--system", c.system, "chua, fpu or kuramoto");
        sub->add_option("--d", c.d, "state dimension");
        sub->add_option("--beta", c.beta, "FPU nonlinearity");
        sub->add_option("--coupling", c.coupling, "Kuramoto coupling K");
        sub->add_option("--forcing", c.forcing, "Kuramoto forcing h");
    };
    auto add_caps = [&](CLI::App* sub) {
        sub->add_option("--dense-cap", c.caps.dense_entries, "largest densified tensor");
        sub->add_option("--basis-cap", c.caps.basis_matrix_entries, "largest dense basis matrix");
    };

    auto* simulate = app.add_subcommand("simulate", "generate snapshot data");
    add_system(simulate);
    simulate->add_option("--m", c.m, "samples (uniform mode)");
    simulate->add_option("--t-end", c.t_end, "final time (trajectory mode)");
    simulate->add_option("--dt", c.dt, "sampling step (trajectory mode)");
    simulate->add_option("--mode", c.mode, "uniform or trajectory");
    simulate->add_option("--lo", c.lo, "lower bound of uniform states");
    simulate->add_option("--hi", c.hi, "upper bound of uniform states");
    simulate->add_option("--include-end", c.include_end, "sample the final time");
    simulate->add_option("--seed", c.seed);
    simulate->add_option("--out", c.output, "snapshot CSV (metadata goes next to it)");
    simulate->add_option("--config", config_path);

    auto* identify = app.add_subcommand("identify", "recover coefficients from snapshots");
    identify->add_option("--input", c.input, "snapshot CSV");
    identify->add_option("--dict", c.dictionary,
                         "reference, chua-monomial, chua-fm, fpu-cubic, kuramoto-trig or a JSON file");
    identify->add_option("--method", c.method, "sindy, mandy or both");
    identify->add_option("--epsilon", c.epsilon, "relative singular value cutoff");
    identify->add_option("--lambda", c.lambda, "SINDy hard threshold");
    identify->add_option("--out", c.output, "coefficient JSON");
    identify->add_option("--report", c.report, "report JSON");
    add_caps(identify);
    identify->add_option("--config", config_path);

    auto* compare = app.add_subcommand("compare", "relative errors between coefficient tensors");
    compare->add_option("files", c.inputs, "coefficient JSON files");
    compare->add_option("--reference", c.reference, "reference coefficient JSON");
    compare->add_option("--exact-from", c.exact_from, "snapshot CSV whose system supplies the exact tensor");
    add_system(compare);
    compare->add_option("--out", c.output, "comparison JSON");
    add_caps(compare);
    compare->add_option("--config", config_path);

    auto* bench = app.add_subcommand("bench", "timing, storage and error sweep");
    bench->add_option("--system", c.system);
    bench->add_option("--d", c.d_list, "state dimensions")->delimiter(',');
    bench->add_option("--m", c.m_list, "sample counts")->delimiter(',');
    bench->add_option("--epsilon", c.eps_list, "cutoffs")->delimiter(',');
    bench->add_option("--dict", c.dictionary);
    bench->add_option("--method", c.method);
    bench->add_option("--seed", c.seed);
    bench->add_option("--out", c.output, "bench CSV");
    bench->add_option("--manifest", c.manifest, "run manifest JSON");
    add_caps(bench);
    bench->add_option("--config", config_path);

    auto* diagnose = app.add_subcommand("diagnose", "truncation and entropy profile of a vector");
    diagnose->add_option("--input", c.input, "TT JSON or {\"modes\", \"values\"} JSON");
    diagnose->add_option("--modes", c.modes, "modes of a random test vector")->delimiter(',');
    diagnose->add_option("--rank", c.rank, "TT rank of the random test vector");
    diagnose->add_option("--seed", c.seed);
    diagnose->add_option("--out", c.output, "profile JSON");
    add_caps(diagnose);
    diagnose->add_option("--config", config_path);

    auto* schema = app.add_subcommand("schema-check", "validate output files by round trip");
    schema->add_option("files", c.inputs)->required();

    try {
        if (const auto path = find_config(argc, argv)) {
            load_config(*path, c);
        }
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return kExitConfig;
        }
        for (auto* sub : app.get_subcommands()) {
            if (!c.command.empty() && c.command != sub->get_name()) {
                throw ConfigError("config command '" + c.command + "' conflicts with subcommand '" +
                                  sub->get_name() + "'");
            }
            c.command = sub->get_name();
        }
        if (c.command.empty()) {
            std::cerr << app.help();
            return kExitConfig;
        }
        return dispatch(c);
    } catch (const SimulationFailure& e) {
        std::cerr << "simulation failed: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const SolveFailure& e) {
        std::cerr << "solve failed: " << e.what() << '\n';
        return kExitSolve;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const StepFailure& e) {
        std::cerr << "simulation failed: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "solve failed: " << e.what() << '\n';
        return kExitSolve;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
