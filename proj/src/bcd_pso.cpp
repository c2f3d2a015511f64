#include "risjam/bcd_pso.hpp"

#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace risjam {

namespace {

constexpr double kDenominatorFloor = 1e-30;
constexpr int kFallbackGrid = 64;
constexpr double kRatioSlack = 1e-9;

}  // namespace

std::vector<std::string> SolverConfig::validate() const {
  std::vector<std::string> errs;
  auto need = [&errs](bool ok, std::string msg) {
    if (!ok) errs.push_back(std::move(msg));
  };
  need(r_max >= 1, fmt::format("solver.r_max must be a positive integer (got {})", r_max));
  need(t_max >= 1, fmt::format("solver.t_max must be a positive integer (got {})", t_max));
  need(n_particles >= 1, fmt::format("solver.n_particles must be a positive integer (got {})", n_particles));
  need(std::isfinite(c1) && c1 >= 0.0, fmt::format("solver.c1 must be >= 0 (got {})", c1));
  need(std::isfinite(c2) && c2 >= 0.0, fmt::format("solver.c2 must be >= 0 (got {})", c2));
  need(std::isfinite(w_min) && std::isfinite(w_max) && w_max >= w_min,
       fmt::format("solver.w_max ({}) must be >= solver.w_min ({})", w_max, w_min));
  need(std::isfinite(c_p) && c_p > 0.0, fmt::format("solver.c_p must be > 0 (got {})", c_p));
  need(std::isfinite(eps_th) && eps_th > 0.0, fmt::format("solver.eps_th must be > 0 (got {})", eps_th));
  need(std::isfinite(init_jitter) && init_jitter >= 0.0,
       fmt::format("solver.init_jitter must be >= 0 (got {})", init_jitter));
  return errs;
}

double objective_p4(double theta, const PerElementCoeffs& st, const PerElementCoeffs& j, double gamma_sr_th,
                    double sigma2_sr) {
  const double den = gamma_sr_th * j.value(theta);
  if (!(den > kDenominatorFloor))
    throw std::domain_error(fmt::format("jammer power objective: nonpositive denominator {}", den));
  return (st.value(theta) - sigma2_sr * gamma_sr_th) / den;
}

double ElementProblem::objective(double theta) const { return objective_p4(theta, st, j, gamma_sr_th, sigma2_sr); }

double ElementProblem::monitoring_slack(double theta) const { return sigma2_m * gamma_m_th - m.value(theta); }

double pso_fitness(double x, const ElementProblem& problem, double c_p) {
  const double penalty = problem.monitoring_feasible(x) ? 0.0 : c_p;
  return problem.objective(x) + penalty;
}

namespace {

struct Sinusoid {
  double B = 0.0, C = 0.0, psi = 0.0, p = 0.0, q = 0.0;
};

// The derivative of the objective vanishes where B + C sin(θ + ψ) = 0.
Sinusoid stationarity(const ElementProblem& pr) {
  const double g = pr.gamma_sr_th;
  const double th_st = pr.st.phase, th_j = pr.j.phase;
  Sinusoid s;
  s.B = g * pr.st.rho * pr.j.rho * std::sin(th_j - th_st);
  s.p = g * pr.j.rho * (pr.st.beta - pr.sigma2_sr * g);
  s.q = g * pr.st.rho * pr.j.beta;
  const double cx = s.p * std::cos(th_j) - s.q * std::cos(th_st);
  const double sx = s.p * std::sin(th_j) - s.q * std::sin(th_st);
  s.C = std::hypot(cx, sx);
  s.psi = std::atan2(sx, cx);
  return s;
}

// Roots of sin(θ + ψ) = ratio.
std::array<double, 2> arcsine_pair(double ratio, double psi) {
  const double a = std::asin(std::clamp(ratio, -1.0, 1.0));
  return {wrap_angle(a - psi), wrap_angle(kPi - a - psi)};
}

}  // namespace

std::vector<double> stationary_candidates(const ElementProblem& problem) {
  const auto s = stationarity(problem);
  if (!(s.C > 0.0)) return {};
  const double ratio = s.B / s.C;
  if (std::abs(ratio) > 1.0 + kRatioSlack) return {};
  const auto exact = arcsine_pair(-ratio, s.psi);
  const auto mirrored = arcsine_pair(ratio, s.psi);
  return {exact[0], exact[1], mirrored[0], mirrored[1]};
}

JammingStepResult jamming_step(const ElementProblem& problem, std::optional<double> incumbent) {
  const auto s = stationarity(problem);
  JammingStepResult res;
  res.B = s.B;
  res.C = s.C;
  res.psi = wrap_angle(s.psi);
  res.p2 = s.p;
  res.q2 = s.q;
  res.candidates = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

  double best_theta = 0.0;
  double best_obj = std::numeric_limits<double>::infinity();
  auto consider = [&](double theta, CandidateSource src) {
    theta = wrap_angle(theta);
    const double obj = problem.objective(theta);
    if (obj < best_obj) {
      best_obj = obj;
      best_theta = theta;
      res.source = src;
    }
  };

  if (incumbent) consider(*incumbent, CandidateSource::Incumbent);

  const bool solvable = s.C > 0.0 && std::abs(s.B / s.C) <= 1.0 + kRatioSlack;
  if (solvable) {
    const double ratio = s.B / s.C;
    res.candidates = arcsine_pair(-ratio, s.psi);
    for (double t : res.candidates) consider(t, CandidateSource::Stationary);
    for (double t : arcsine_pair(ratio, s.psi)) consider(t, CandidateSource::MirroredStationary);
  } else {
    res.grid_fallback = true;
  }
  for (int i = 0; i < kFallbackGrid; ++i) consider(kTwoPi * i / kFallbackGrid, CandidateSource::Grid);

  res.theta_hat = best_theta;
  res.objective = best_obj;
  return res;
}

double inertia(int t, const SolverConfig& cfg) {
  return cfg.w_max - ((cfg.w_max - cfg.w_min) / static_cast<double>(cfg.t_max)) * static_cast<double>(t);
}

SwarmOutcome run_swarm(const ElementProblem& problem, std::span<const double> initial_positions,
                       const SolverConfig& cfg, Rng& rng) {
  if (initial_positions.empty()) throw std::invalid_argument("run_swarm: the swarm needs at least one particle");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double inf = std::numeric_limits<double>::infinity();

  auto evaluate = [&](double x) { return std::isfinite(x) ? pso_fitness(wrap_angle(x), problem, cfg.c_p) : inf; };

  std::vector<ParticleState> swarm(initial_positions.size());
  double group_pos = initial_positions.front();
  double group_fit = inf;
  for (std::size_t k = 0; k < swarm.size(); ++k) {
    auto& p = swarm[k];
    p.position = initial_positions[k];
    p.velocity = 0.0;
    p.fitness = evaluate(p.position);
    p.best_position = p.position;
    p.best_fitness = p.fitness;
    if (p.fitness < group_fit) {
      group_fit = p.fitness;
      group_pos = p.position;
    }
  }

  SwarmOutcome out;
  out.group_best_trace.reserve(static_cast<std::size_t>(cfg.t_max) + 1);
  out.group_best_trace.push_back(group_fit);
  for (int t = 0; t < cfg.t_max; ++t) {
    const double w = inertia(t, cfg);
    for (auto& p : swarm) {
      const double r1 = unit(rng);
      const double r2 = unit(rng);
      p.velocity = w * p.velocity + cfg.c1 * r1 * (p.best_position - p.position) +
                   cfg.c2 * r2 * (group_pos - p.position);
      p.position += p.velocity;
      p.fitness = evaluate(p.position);
      if (p.fitness < p.best_fitness) {
        p.best_fitness = p.fitness;
        p.best_position = p.position;
      }
      if (p.fitness < group_fit) {
        group_fit = p.fitness;
        group_pos = p.position;
      }
    }
    out.group_best_trace.push_back(group_fit);
  }
  out.theta = wrap_angle(group_pos);
  out.fitness = group_fit;
  return out;
}

std::vector<double> jittered_start(double theta_hat, const SolverConfig& cfg, Rng& rng) {
  std::vector<double> pos(static_cast<std::size_t>(cfg.n_particles), theta_hat);
  std::uniform_real_distribution<double> jitter(-cfg.init_jitter, cfg.init_jitter);
  for (std::size_t k = 1; k < pos.size(); ++k) pos[k] += jitter(rng);
  return pos;
}

SwarmOutcome pso_monitoring_step(double theta_hat, const ElementProblem& problem, const SolverConfig& cfg, Rng& rng) {
  const auto start = jittered_start(theta_hat, cfg, rng);
  return run_swarm(problem, start, cfg, rng);
}

SolverResult finalize_result(const ChannelSet& ch, const LinkBudget& budget, PhaseVector phi, int rounds_used,
                             std::vector<double> epsilon_trace) {
  SolverResult res;
  res.p_j_bound = pj_lower_bound(ch, phi, budget);
  res.feasible_jamming = res.p_j_bound <= budget.p_j_max;
  res.p_j_star = std::min(res.p_j_bound, budget.p_j_max);
  const auto metrics = link_metrics(ch, phi, budget, res.p_j_star);
  res.monitor_snr = metrics.gamma_m;
  res.sinr_sr = metrics.gamma_sr;
  res.feasible_monitoring = metrics.gamma_m >= budget.gamma_m_th;
  res.phi_star = std::move(phi);
  res.rounds_used = rounds_used;
  res.epsilon_trace = std::move(epsilon_trace);
  return res;
}

SolverResult bcd_sweep(const ChannelSet& ch, const LinkBudget& budget, const SolverConfig& cfg,
                       const ElementUpdate& update, Rng& rng, const SweepObserver& observer) {
  ch.check_shapes();
  const auto n = static_cast<std::size_t>(ch.n_elements());
  const CVector w_st = mrt_st(ch, budget.p_st);
  const auto form_st = build_form(FormKind::ST, ch, w_st);
  const auto form_m = build_form(FormKind::M, ch, w_st);

  PhaseVector v = PhaseVector::ones(n);
  std::vector<double> eps_trace;
  int rounds = 0;
  while (rounds < cfg.r_max) {
    const PhaseVector round_start = v;
    for (std::size_t ell = 0; ell < n; ++ell) {
      // jamming direction frozen for this element update
      const auto w_j_bar = mrt_lj_direction(effective_channels(ch, v));
      const auto form_j = build_form(FormKind::J, ch, w_st, w_j_bar);
      const ElementProblem problem{per_element_coeffs(form_st, v, ell),
                                   per_element_coeffs(form_j, v, ell),
                                   per_element_coeffs(form_m, v, ell),
                                   budget.gamma_sr_th,
                                   budget.gamma_m_th,
                                   budget.sigma2_sr,
                                   budget.sigma2_m};
      const double incumbent = v.theta(ell);
      const double updated = update(problem, incumbent, rng);
      v.set_theta(ell, updated);
      if (observer) observer(ElementUpdateEvent{rounds, ell, incumbent, v.theta(ell), problem, v});
    }
    ++rounds;
    const double eps = PhaseVector::relative_change(v, round_start);
    eps_trace.push_back(eps);
    if (eps <= cfg.eps_th) break;
  }
  return finalize_result(ch, budget, std::move(v), rounds, std::move(eps_trace));
}

SolverResult solve(const ChannelSet& ch, const ScenarioConfig& scenario, const SolverConfig& cfg, Rng& rng,
                   const SweepObserver& observer) {
  const auto update = [&cfg](const ElementProblem& problem, double incumbent, Rng& r) {
    const auto jam = jamming_step(problem, incumbent);
    return pso_monitoring_step(jam.theta_hat, problem, cfg, r).theta;
  };
  return bcd_sweep(ch, LinkBudget::from(scenario), cfg, update, rng, observer);
}

}  // namespace risjam
