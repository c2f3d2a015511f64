#include "risjam/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace risjam {

namespace {

constexpr std::array<std::string_view, kAllSchemes.size()> kSchemeNames = {
    "BCD_PSO", "PSO", "SA", "PSO_DOMAIN", "BCD_DOMAIN", "BCD_SA", "RANDOM_PHASE", "WITHOUT_RIS"};

std::vector<double> uniform_start(int n, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) p = angle(rng);
  return pos;
}

double total_width(std::span<const AngleInterval> arcs) {
  return std::accumulate(arcs.begin(), arcs.end(), 0.0,
                         [](double acc, const AngleInterval& a) { return acc + a.width(); });
}

double bcd_domain_update(const ElementProblem& problem, double incumbent) {
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_obj = std::numeric_limits<double>::infinity();
  for (double theta : stationary_candidates(problem)) {
    if (!problem.monitoring_feasible(theta)) continue;
    const double obj = problem.objective(theta);
    if (obj < best_obj) {
      best_obj = obj;
      best = theta;
    }
  }
  if (std::isnan(best)) return jamming_step(problem, incumbent).theta_hat;
  return best;
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
  const auto idx = static_cast<std::size_t>(id);
  if (idx >= kSchemeNames.size()) throw std::invalid_argument("unknown scheme id");
  return kSchemeNames[idx];
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (std::size_t i = 0; i < kSchemeNames.size(); ++i)
    if (kSchemeNames[i] == name) return kAllSchemes[i];
  return std::nullopt;
}

std::vector<std::string> SAConfig::validate() const {
  std::vector<std::string> errs;
  auto need = [&errs](bool ok, std::string msg) {
    if (!ok) errs.push_back(std::move(msg));
  };
  need(std::isfinite(initial_temperature) && initial_temperature > 0.0,
       fmt::format("sa.initial_temperature must be > 0 (got {})", initial_temperature));
  need(cooling_ratio > 0.0 && cooling_ratio < 1.0,
       fmt::format("sa.cooling_ratio must lie in (0, 1) (got {})", cooling_ratio));
  need(steps_per_temperature >= 1,
       fmt::format("sa.steps_per_temperature must be a positive integer (got {})", steps_per_temperature));
  need(std::isfinite(proposal_width) && proposal_width > 0.0,
       fmt::format("sa.proposal_width must be > 0 (got {})", proposal_width));
  need(std::isfinite(min_temperature) && min_temperature > 0.0,
       fmt::format("sa.min_temperature must be > 0 (got {})", min_temperature));
  return errs;
}

std::vector<AngleInterval> feasible_intervals(const PerElementCoeffs& coeffs_m, double gamma_m_th, double sigma2_m) {
  const double gap = sigma2_m * gamma_m_th - coeffs_m.beta;
  const AngleInterval full{0.0, kTwoPi};
  if (coeffs_m.rho == 0.0) {
    if (gap <= 0.0) return {full};
    return {};
  }
  const double ratio = gap / coeffs_m.rho;
  if (ratio <= -1.0) return {full};
  if (ratio > 1.0) return {};
  const double half = std::acos(ratio);
  const double center = wrap_angle(-coeffs_m.phase);
  const double lo = center - half;
  const double hi = center + half;
  if (lo < 0.0) return {{0.0, hi}, {lo + kTwoPi, kTwoPi}};
  if (hi > kTwoPi) return {{0.0, hi - kTwoPi}, {lo, kTwoPi}};
  return {{lo, hi}};
}

double sample_intervals(std::span<const AngleInterval> arcs, Rng& rng) {
  const double total = total_width(arcs);
  if (!(total > 0.0)) throw std::invalid_argument("sample_intervals: the arcs have zero total length");
  std::uniform_real_distribution<double> pick(0.0, total);
  double u = pick(rng);
  for (const auto& a : arcs) {
    if (u <= a.width()) return wrap_angle(a.lo + u);
    u -= a.width();
  }
  return wrap_angle(arcs.back().hi);
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta < 0.0) return true;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < std::exp(-delta / temperature);
}

double anneal_element(const ElementProblem& problem, double start, const SolverSettings& settings, Rng& rng) {
  const auto& sa = settings.sa;
  const double c_p = settings.solver.c_p;
  std::uniform_real_distribution<double> step(-sa.proposal_width, sa.proposal_width);

  double current = wrap_angle(start);
  double current_fit = pso_fitness(current, problem, c_p);
  double best = current;
  double best_fit = current_fit;
  for (double temp = sa.initial_temperature; temp >= sa.min_temperature; temp *= sa.cooling_ratio) {
    for (int s = 0; s < sa.steps_per_temperature; ++s) {
      const double proposal = wrap_angle(current + step(rng));
      const double fit = pso_fitness(proposal, problem, c_p);
      if (!metropolis_accept(fit - current_fit, temp, rng)) continue;
      current = proposal;
      current_fit = fit;
      if (current_fit < best_fit) {
        best_fit = current_fit;
        best = current;
      }
    }
  }
  return best;
}

SolverResult solve_scheme(SchemeId id, const ChannelSet& ch, const ScenarioConfig& scenario,
                          const SolverSettings& settings, Rng& rng, const SweepObserver& observer) {
  const auto budget = LinkBudget::from(scenario);
  const auto& cfg = settings.solver;
  switch (id) {
    case SchemeId::BCD_PSO:
      return solve(ch, scenario, cfg, rng, observer);
    case SchemeId::PSO: {
      const auto update = [&cfg](const ElementProblem& p, double, Rng& r) {
        const auto start = uniform_start(cfg.n_particles, r);
        return run_swarm(p, start, cfg, r).theta;
      };
      return bcd_sweep(ch, budget, cfg, update, rng, observer);
    }
    case SchemeId::SA: {
      const auto update = [&settings](const ElementProblem& p, double, Rng& r) {
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        return anneal_element(p, angle(r), settings, r);
      };
      return bcd_sweep(ch, budget, cfg, update, rng, observer);
    }
    case SchemeId::PSO_DOMAIN: {
      const auto update = [&cfg](const ElementProblem& p, double, Rng& r) {
        const auto arcs = feasible_intervals(p.m, p.gamma_m_th, p.sigma2_m);
        std::vector<double> start;
        if (total_width(arcs) > 0.0) {
          start.resize(static_cast<std::size_t>(cfg.n_particles));
          for (auto& x : start) x = sample_intervals(arcs, r);
        } else {
          start = uniform_start(cfg.n_particles, r);
        }
        return run_swarm(p, start, cfg, r).theta;
      };
      return bcd_sweep(ch, budget, cfg, update, rng, observer);
    }
    case SchemeId::BCD_DOMAIN: {
      const auto update = [](const ElementProblem& p, double incumbent, Rng&) {
        return bcd_domain_update(p, incumbent);
      };
      return bcd_sweep(ch, budget, cfg, update, rng, observer);
    }
    case SchemeId::BCD_SA: {
      const auto update = [&settings](const ElementProblem& p, double incumbent, Rng& r) {
        const double seed = jamming_step(p, incumbent).theta_hat;
        return anneal_element(p, seed, settings, r);
      };
      return bcd_sweep(ch, budget, cfg, update, rng, observer);
    }
    case SchemeId::RANDOM_PHASE: {
      ch.check_shapes();
      return finalize_result(ch, budget, PhaseVector(uniform_start(static_cast<int>(ch.n_elements()), rng)), 0, {});
    }
    case SchemeId::WITHOUT_RIS: {
      ch.check_shapes();
      return finalize_result(without_ris_links(ch), budget, PhaseVector::ones(static_cast<std::size_t>(ch.n_elements())),
                             0, {});
    }
  }
  throw std::invalid_argument(fmt::format("unknown scheme id {}", static_cast<int>(id)));
}

}  // namespace risjam
