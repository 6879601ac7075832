#pragma once

#include "radhf/configuration.hpp"
#include "radhf/scf.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace radhf {

struct OutputPaths {
  std::optional<std::filesystem::path> result;
  std::optional<std::filesystem::path> orbitals_csv;
};

// Everything one run needs. Documented defaults are the member initializers
// of GridOptions and ScfOptions; r_max defaults to default_r_max(config).
struct RunConfig {
  Configuration config;
  GridOptions grid;
  ScfOptions scf;
  OutputPaths output;
};

// Schema check and conversion. Unknown keys and wrong types throw
// ConfigError naming the offending field, e.g. "shells[1].l".
RunConfig parse_run_config(const nlohmann::json &doc);
RunConfig load_run_config(const std::filesystem::path &path);

// Canonical form with every default filled in. Relative output paths are
// kept as written.
nlohmann::json to_json(const RunConfig &run);

nlohmann::json to_json(const EnergyBreakdown &energy);
nlohmann::json to_json(const TheoremReport &report);

// The structured result of a solve. Deterministic: no timestamps, keys in
// a fixed order, doubles printed round-trip exact. The orbital samples are
// included so that a stored result can be probed later.
nlohmann::json result_document(const RunConfig &run, const ScfState &state,
                               const TheoremReport &report);

// Header r,f_1,...,f_s,density; one row per grid point, 17 significant digits.
// density is sum (electrons per orbital)(2l+1)|f|^2.
void write_orbitals_csv(std::ostream &out, const ScfState &state);

// Rebuilds grid, kernel table and orbitals from a stored result document.
// Throws Error when the document has no orbital data or the stored radii
// disagree with the grid described by its input echo.
ScfState state_from_result(const nlohmann::json &doc);

} // namespace radhf
