#pragma once

#include "mandy/basis.hpp"
#include "mandy/diagnostics.hpp"
#include "mandy/identify.hpp"
#include "mandy/pinv.hpp"
#include "mandy/systems.hpp"
#include "mandy/tensor_train.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace mandy {

using Json = nlohmann::json;

// Every *_from_json throws ConfigError on malformed input.

/// {"mode_sizes": [...], "ranks": [...], "cores": [core i as r x n x r']}.
Json tt_to_json(const TensorTrain& t);
TensorTrain tt_from_json(const Json& j);

/// {"left_cores": [...], "right_core": s x m, "singular_values": [...], "threshold_used": eps}.
Json pinv_to_json(const TTPseudoinverse& p);
TTPseudoinverse pinv_from_json(const Json& j);

/// {"layout": "function_major", "prepend_constant": true,
///  "functions": [{"kind": "monomial", "power": 3}, {"kind": "sine"}]}.
Json dictionary_to_json(const Dictionary& d);
Dictionary dictionary_from_json(const Json& j);

/// {"name": "fpu", "d": 10, "beta": 0.7} and the like.
Json system_to_json(const SystemParams& s);
SystemParams system_from_json(const Json& j);

Json coefficient_to_json(const CoefficientTensor& xi);
CoefficientTensor coefficient_from_json(const Json& j);

Json profile_to_json(const TruncationProfile& p);

/// Writes `csv` (header x_1..x_d,y_1..y_d, one row per snapshot) and the
/// sibling metadata file returned by snapshot_metadata_path.
void write_snapshots(const std::filesystem::path& csv, const SnapshotSet& s);
SnapshotSet read_snapshots(const std::filesystem::path& csv);
std::filesystem::path snapshot_metadata_path(const std::filesystem::path& csv);

/// Columns method,d,m,epsilon,seconds,storage_entries,rel_error,status.
void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_bench_csv(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Parses a file as the type its content declares, re-serializes it and
/// checks the round trip. Returns the detected kind ("tensor_train",
/// "pseudoinverse", "coefficients", "report", "profile", "manifest",
/// "snapshots", "bench"). Throws ConfigError when the file is invalid.
std::string schema_check(const std::filesystem::path& path);

} // namespace mandy
