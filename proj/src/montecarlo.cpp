#include "risjam/montecarlo.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <omp.h>

namespace risjam {

namespace {

constexpr std::array<std::string_view, 4> kParameterNames = {"P_ST", "RIS_Y", "N_ELEMENTS", "GAMMA_SR_TH"};

constexpr std::uint64_t kChannelStream = 0x636861'6e6e656cULL;
constexpr std::uint64_t kSolverStream = 0x736f6c'766572ULL;
constexpr std::uint64_t kPlacementStream = 0x706c61'6365ULL;
constexpr double kJamSlack = 1e-9;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SweepLayout {
  std::vector<ScenarioConfig> scenarios;  // one per value
  std::optional<Placement> placement;
  std::size_t n_schemes = 0;
  std::size_t n_trials = 0;
  std::size_t total() const { return scenarios.size() * n_schemes * n_trials; }
};

SweepLayout layout(const SweepSpec& spec, const ScenarioConfig& base) {
  if (auto errs = spec.validate(); !errs.empty()) throw std::invalid_argument(errs.front());
  SweepLayout l;
  for (double value : spec.values) l.scenarios.push_back(apply_sweep_value(base, spec.parameter, value));
  if (!base.redraw_positions) l.placement = fixed_placement(base, spec.base_seed);
  l.n_schemes = spec.schemes.size();
  l.n_trials = static_cast<std::size_t>(spec.n_trials);
  return l;
}

TrialRecord run_cell_trial(const SweepSpec& spec, const SweepLayout& l, const SolverSettings& settings,
                           std::size_t task) {
  const std::size_t trial = task % l.n_trials;
  const std::size_t scheme = (task / l.n_trials) % l.n_schemes;
  const std::size_t point = task / (l.n_trials * l.n_schemes);
  return run_trial(spec.schemes[scheme], l.scenarios[point], settings,
                   trial_seed(spec.base_seed, static_cast<int>(trial)), l.placement);
}

SweepTable tabulate(const SweepSpec& spec, const SweepLayout& l, std::span<const TrialRecord> records) {
  SweepTable table;
  table.reserve(l.scenarios.size() * l.n_schemes);
  for (std::size_t point = 0; point < l.scenarios.size(); ++point)
    for (std::size_t s = 0; s < l.n_schemes; ++s) {
      const auto offset = (point * l.n_schemes + s) * l.n_trials;
      table.push_back({spec.values[point], spec.schemes[s], aggregate(records.subspan(offset, l.n_trials))});
    }
  return table;
}

}  // namespace

std::string_view sweep_parameter_name(SweepParameter p) { return kParameterNames[static_cast<std::size_t>(p)]; }

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (std::size_t i = 0; i < kParameterNames.size(); ++i)
    if (kParameterNames[i] == name) return static_cast<SweepParameter>(i);
  return std::nullopt;
}

std::vector<std::string> SweepSpec::validate() const {
  std::vector<std::string> errs;
  if (values.empty()) errs.emplace_back("sweep.values must list at least one value");
  if (schemes.empty()) errs.emplace_back("sweep.schemes must list at least one scheme");
  if (n_trials < 1) errs.push_back(fmt::format("sweep.n_trials must be a positive integer (got {})", n_trials));
  for (double v : values) {
    if (!std::isfinite(v)) {
      errs.push_back("sweep.values must be finite");
      continue;
    }
    switch (parameter) {
      case SweepParameter::P_ST:
        if (v <= 0.0) errs.push_back(fmt::format("sweep.values: P_ST must be > 0 W (got {})", v));
        break;
      case SweepParameter::N_ELEMENTS:
        if (v < 1.0 || v != std::floor(v))
          errs.push_back(fmt::format("sweep.values: N_ELEMENTS must be a positive integer (got {})", v));
        break;
      case SweepParameter::RIS_Y:
      case SweepParameter::GAMMA_SR_TH:
        break;
    }
  }
  return errs;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(base) ^ a) ^ b);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(trial));
}

Placement fixed_placement(const ScenarioConfig& scenario, std::uint64_t base_seed) {
  Rng rng(derive_seed(base_seed, kPlacementStream));
  return place_monitor_and_jammers(rng, scenario);
}

bool jamming_succeeded(double gamma_sr, double p_j, const LinkBudget& budget) {
  return gamma_sr <= budget.gamma_sr_th * (1.0 + kJamSlack) && p_j <= budget.p_j_max;
}

TrialRecord run_trial(SchemeId scheme, const ScenarioConfig& scenario, const SolverSettings& settings,
                      std::uint64_t seed, const std::optional<Placement>& placement) {
  TrialRecord rec;
  rec.seed = seed;
  rec.scheme = scheme;
  try {
    Rng channel_rng(derive_seed(seed, kChannelStream));
    const Placement where = placement ? *placement : place_monitor_and_jammers(channel_rng, scenario);
    const auto ch = generate_channel_set(channel_rng, scenario, where.monitor, where.jammers);

    Rng solver_rng(derive_seed(seed, kSolverStream, static_cast<std::uint64_t>(scheme)));
    const auto result = solve_scheme(scheme, ch, scenario, settings, solver_rng);

    const auto budget = LinkBudget::from(scenario);
    rec.p_j = result.p_j_star;
    rec.gamma_m = result.monitor_snr;
    rec.gamma_sr = result.sinr_sr;
    rec.jam_success = jamming_succeeded(rec.gamma_sr, rec.p_j, budget);
    rec.monitor_success = rec.gamma_m >= budget.gamma_m_th;
    rec.rounds_used = result.rounds_used;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

AggregateMetrics aggregate(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no trial records");
  AggregateMetrics m;
  int monitored = 0, jammed = 0;
  double p_j_sum = 0.0, gamma_sum = 0.0;
  for (const auto& r : records) {
    if (r.failed) {
      ++m.n_failed;
      continue;
    }
    ++m.n_trials;
    gamma_sum += r.gamma_m;
    if (r.monitor_success) ++monitored;
    if (r.jam_success) {
      ++jammed;
      p_j_sum += r.p_j;
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (m.n_trials == 0) {
    m.smp = m.sjp = m.mean_p_j = m.mean_gamma_m_db = nan;
    return m;
  }
  const double n = m.n_trials;
  m.smp = monitored / n;
  m.sjp = jammed / n;
  m.mean_p_j = jammed > 0 ? p_j_sum / jammed : nan;
  m.mean_gamma_m_db = linear_to_db(gamma_sum / n);
  return m;
}

ScenarioConfig apply_sweep_value(ScenarioConfig scenario, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::P_ST:
      scenario.p_st = value;
      break;
    case SweepParameter::RIS_Y:
      scenario.ris.y = value;
      break;
    case SweepParameter::N_ELEMENTS:
      scenario.n_elements = static_cast<int>(std::lround(value));
      break;
    case SweepParameter::GAMMA_SR_TH:
      scenario.gamma_sr_th = db_to_linear(value);
      break;
  }
  return scenario;
}

std::vector<TrialRecord> run_sweep_records(const SweepSpec& spec, const ScenarioConfig& base,
                                           const SolverSettings& settings, int threads) {
  const auto l = layout(spec, base);
  const auto total = static_cast<std::int64_t>(l.total());
  std::vector<TrialRecord> records(l.total());
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
  // run_trial never throws, so nothing escapes the parallel region
#pragma omp parallel for schedule(dynamic, 1) num_threads(n_threads)
  for (std::int64_t task = 0; task < total; ++task)
    records[static_cast<std::size_t>(task)] = run_cell_trial(spec, l, settings, static_cast<std::size_t>(task));
  return records;
}

SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SolverSettings& settings,
                     int threads) {
  const auto l = layout(spec, base);
  const auto records = run_sweep_records(spec, base, settings, threads);
  return tabulate(spec, l, records);
}

namespace reference {

SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SolverSettings& settings) {
  const auto l = layout(spec, base);
  std::vector<TrialRecord> records;
  records.reserve(l.total());
  for (std::size_t task = 0; task < l.total(); ++task) records.push_back(run_cell_trial(spec, l, settings, task));
  return tabulate(spec, l, records);
}

}  // namespace reference

}  // namespace risjam
