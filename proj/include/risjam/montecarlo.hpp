#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risjam/baselines.hpp"

namespace risjam {

/// Outcome of one channel draw solved by one scheme.
struct TrialRecord {
  std::uint64_t seed = 0;
  SchemeId scheme = SchemeId::BCD_PSO;
  double p_j = 0.0;      // W
  double gamma_m = 0.0;  // linear
  double gamma_sr = 0.0; // linear
  bool jam_success = false;
  bool monitor_success = false;
  int rounds_used = 0;
  bool failed = false;   // solver error; excluded from aggregates
  std::string error;
};

struct AggregateMetrics {
  double smp = 0.0;
  double sjp = 0.0;
  double mean_p_j = 0.0;         // W, over jamming-successful trials; NaN if none
  double mean_gamma_m_db = 0.0;  // dB of the mean linear monitor SNR
  int n_trials = 0;              // trials that entered the averages
  int n_failed = 0;
};

enum class SweepParameter { P_ST, RIS_Y, N_ELEMENTS, GAMMA_SR_TH };

std::string_view sweep_parameter_name(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::P_ST;
  std::vector<double> values{0.5, 1.0, 2.0, 3.0};  // W, m, count, or dB by parameter
  std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  int n_trials = 200;
  std::uint64_t base_seed = 1;

  std::vector<std::string> validate() const;
};

struct SweepRow {
  double value = 0.0;
  SchemeId scheme = SchemeId::BCD_PSO;
  AggregateMetrics metrics;
};

using SweepTable = std::vector<SweepRow>;

/// Deterministic 64-bit seed mixing (splitmix64 finalizer chained over the parts).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Seed of trial `trial` at every sweep point; schemes and sweep points share it.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Placement used by every trial when the scenario does not redraw positions.
Placement fixed_placement(const ScenarioConfig& scenario, std::uint64_t base_seed);

/// Success predicate for jamming; γ_SR is compared with a 1e-9 relative slack so a
/// power bound that is tight by construction counts as meeting the threshold.
bool jamming_succeeded(double gamma_sr, double p_j, const LinkBudget& budget);

/// Draws placement and channels from one seed stream and solves with a second,
/// scheme-specific stream. Errors become a failed record.
TrialRecord run_trial(SchemeId scheme, const ScenarioConfig& scenario, const SolverSettings& settings,
                      std::uint64_t seed, const std::optional<Placement>& placement = std::nullopt);

/// Throws std::invalid_argument on an empty list. Failed records are only counted.
AggregateMetrics aggregate(std::span<const TrialRecord> records);

ScenarioConfig apply_sweep_value(ScenarioConfig scenario, SweepParameter parameter, double value);

/// Every (value, scheme) cell with n_trials trials, trials spread over OpenMP
/// threads. threads <= 0 keeps the OpenMP default. Output is independent of
/// the thread count.
SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SolverSettings& settings,
                     int threads = 0);

/// Raw per-trial records in (value, scheme, trial) order, parallel over trials.
std::vector<TrialRecord> run_sweep_records(const SweepSpec& spec, const ScenarioConfig& base,
                                           const SolverSettings& settings, int threads = 0);

namespace reference {

/// Single-threaded sweep, kept as the ground truth for the parallel kernel.
SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SolverSettings& settings);

}  // namespace reference

}  // namespace risjam
