#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risjam/montecarlo.hpp"

namespace risjam {

/// Everything a run needs.
struct RunConfig {
  ScenarioConfig scenario;
  SolverSettings settings;
  SweepSpec sweep;
};

/// Carries every problem found in a config, one line each.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Flat `section.key = value` text (`:` also accepted as the separator, `#`
/// starts a comment). Omitted keys keep their defaults. Decibel inputs
/// (`*_db`, `*_dbm`) are converted to linear watts/ratios here.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// All problems with an already-built config; empty when valid.
std::vector<std::string> validate(const RunConfig& cfg);

/// Canonical text form with every key spelled out. Parsing it reproduces `cfg`.
std::string to_config_text(const RunConfig& cfg);

}  // namespace risjam
