#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "risjam/config.hpp"

namespace risjam {

inline constexpr std::string_view kCsvHeader =
    "parameter,scheme,smp,sjp,mean_p_j_w,mean_gamma_m_db,n_trials,n_failed";
inline constexpr int kResultsSchemaVersion = 1;

std::string_view library_version();

/// Provenance of one run: enough to reproduce results.csv byte for byte.
struct RunManifest {
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
  std::uint64_t base_seed = 0;
  std::string config_snapshot;  // canonical config text after overrides
  std::vector<std::string> outputs;
  std::vector<std::string> command;
};

/// One row per (value, scheme) in table order. NaN prints as "nan".
std::string results_csv(const SweepTable& table);

nlohmann::json manifest_json(const RunManifest& manifest);

/// Mirrors the CSV rows (NaN becomes null) and embeds the manifest.
nlohmann::json results_json(const SweepSpec& spec, const SweepTable& table, const RunManifest& manifest);

}  // namespace risjam
