#include "risjam/report.hpp"

#include <cmath>

#include <fmt/format.h>

#ifndef RISJAM_VERSION
#define RISJAM_VERSION "unknown"
#endif

namespace risjam {

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.10g}", v);
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string_view library_version() { return RISJAM_VERSION; }

std::string results_csv(const SweepTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : table) {
    const auto& m = row.metrics;
    out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_number(row.value), scheme_name(row.scheme), csv_number(m.smp),
                       csv_number(m.sjp), csv_number(m.mean_p_j), csv_number(m.mean_gamma_m_db), m.n_trials,
                       m.n_failed);
  }
  return out;
}

nlohmann::json manifest_json(const RunManifest& manifest) {
  return {
      {"schema", "risjw.manifest"},
      {"schema_version", kResultsSchemaVersion},
      {"version", manifest.version},
      {"timestamp", manifest.timestamp},
      {"base_seed", manifest.base_seed},
      {"config", manifest.config_snapshot},
      {"outputs", manifest.outputs},
      {"command", manifest.command},
  };
}

nlohmann::json results_json(const SweepSpec& spec, const SweepTable& table, const RunManifest& manifest) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    const auto& m = row.metrics;
    rows.push_back({
        {"parameter", row.value},
        {"scheme", scheme_name(row.scheme)},
        {"smp", json_number(m.smp)},
        {"sjp", json_number(m.sjp)},
        {"mean_p_j_w", json_number(m.mean_p_j)},
        {"mean_gamma_m_db", json_number(m.mean_gamma_m_db)},
        {"n_trials", m.n_trials},
        {"n_failed", m.n_failed},
    });
  }
  return {
      {"schema", "risjw.results"},
      {"schema_version", kResultsSchemaVersion},
      {"swept_parameter", sweep_parameter_name(spec.parameter)},
      {"trials_per_cell", spec.n_trials},
      {"rows", std::move(rows)},
      {"manifest", manifest_json(manifest)},
  };
}

}  // namespace risjam
