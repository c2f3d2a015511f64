#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risjam/beamforming.hpp"
#include "risjam/quadratic_forms.hpp"

namespace risjam {

struct SolverConfig {
  int r_max = 50;        // BCD rounds
  int t_max = 80;        // swarm iterations per element
  int n_particles = 20;
  double c1 = 1.5;       // individual learning coefficient
  double c2 = 1.5;       // group learning coefficient
  double w_min = 0.0;    // inertia limits
  double w_max = kTwoPi;
  double c_p = 1e6;      // monitoring-constraint penalty
  double eps_th = 0.01;  // convergence threshold on the relative phase change
  double init_jitter = kPi / 8.0;  // half-width of the swarm's start spread, rad

  std::vector<std::string> validate() const;
};

/// Single-element subproblem: the three restricted forms plus the thresholds.
struct ElementProblem {
  PerElementCoeffs st;
  PerElementCoeffs j;
  PerElementCoeffs m;
  double gamma_sr_th = 0.1;
  double gamma_m_th = 1.0;
  double sigma2_sr = 1e-12;
  double sigma2_m = 1e-12;

  double objective(double theta) const;
  /// σ_M² γ_M,th − ρ_M cos(θ + θ_M) − β_M; the monitoring constraint holds when ≤ 0.
  double monitoring_slack(double theta) const;
  bool monitoring_feasible(double theta) const { return monitoring_slack(theta) <= 0.0; }
};

/// Jammer power bound as a function of one phase:
/// [ρ_ST cos(θ+θ_ST) + β_ST − σ_SR² γ_SR,th] / (γ_SR,th [ρ_J cos(θ+θ_J) + β_J]).
/// Throws std::domain_error if the denominator is not above 1e-30.
double objective_p4(double theta, const PerElementCoeffs& st, const PerElementCoeffs& j, double gamma_sr_th,
                    double sigma2_sr);

/// Objective plus c_p when the monitoring constraint is violated at x.
double pso_fitness(double x, const ElementProblem& problem, double c_p);

enum class CandidateSource { Incumbent, Stationary, MirroredStationary, Grid };

struct JammingStepResult {
  double theta_hat = 0.0;
  double objective = 0.0;
  CandidateSource source = CandidateSource::Incumbent;
  /// Roots of B + C sin(θ + ψ) = 0, in [0, 2π). NaN when no root exists.
  std::array<double, 2> candidates{};
  double B = 0.0;
  double C = 0.0;
  double psi = 0.0;
  double p2 = 0.0;  // sinusoid amplitude of the jamming-denominator term
  double q2 = 0.0;  // sinusoid amplitude of the signal-numerator term
  bool grid_fallback = false;  // C = 0 or |B/C| > 1
};

/// Closed-form minimizer of the single-element objective, ignoring the
/// monitoring constraint. The comparison set is the incumbent (when given),
/// both arcsine sign variants of the stationarity condition, and a 64-point
/// grid; ties keep the earliest, so the incumbent survives flat objectives.
JammingStepResult jamming_step(const ElementProblem& problem, std::optional<double> incumbent = std::nullopt);

/// Every stationary point of the objective in [0, 2π) from both sign
/// variants. Empty if none can be formed.
std::vector<double> stationary_candidates(const ElementProblem& problem);

/// Linearly decreasing inertia: w_max at t = 0, w_min at t = T.
double inertia(int t, const SolverConfig& cfg);

struct ParticleState {
  double position = 0.0;  // unwrapped, rad
  double velocity = 0.0;  // rad / iteration
  double fitness = 0.0;
  double best_position = 0.0;
  double best_fitness = 0.0;
};

struct SwarmOutcome {
  double theta = 0.0;  // group best, wrapped into [0, 2π)
  double fitness = 0.0;
  std::vector<double> group_best_trace;  // group-best fitness after init and after each iteration
};

/// One particle per entry of initial_positions, zero initial velocity.
/// Fitness is evaluated on the wrapped position; flight stays unwrapped.
SwarmOutcome run_swarm(const ElementProblem& problem, std::span<const double> initial_positions,
                       const SolverConfig& cfg, Rng& rng);

/// Particle 0 sits on theta_hat; the rest are spread uniformly within ±init_jitter.
std::vector<double> jittered_start(double theta_hat, const SolverConfig& cfg, Rng& rng);

/// Monitoring optimization around the jamming-step result.
SwarmOutcome pso_monitoring_step(double theta_hat, const ElementProblem& problem, const SolverConfig& cfg, Rng& rng);

struct SolverResult {
  PhaseVector phi_star;
  double p_j_star = 0.0;   // min(bound, p_j_max), W
  double p_j_bound = 0.0;  // uncapped minimal jammer power, W
  double monitor_snr = 0.0;
  double sinr_sr = 0.0;
  bool feasible_monitoring = false;
  bool feasible_jamming = false;  // bound within p_j_max
  int rounds_used = 0;
  std::vector<double> epsilon_trace;
};

struct ElementUpdateEvent {
  int round = 0;
  std::size_t element = 0;
  double incumbent = 0.0;
  double updated = 0.0;
  const ElementProblem& problem;
  const PhaseVector& phases;  // after the update
};

/// Chooses the new phase of one element given its subproblem and current phase.
using ElementUpdate = std::function<double(const ElementProblem&, double incumbent, Rng&)>;
using SweepObserver = std::function<void(const ElementUpdateEvent&)>;

/// The block-coordinate outer loop shared by every iterative scheme: start from
/// the all-ones vector, refresh the jamming direction and the three forms before
/// each element, apply `update`, and stop when the round's relative change drops
/// to eps_th or after r_max rounds.
SolverResult bcd_sweep(const ChannelSet& ch, const LinkBudget& budget, const SolverConfig& cfg,
                       const ElementUpdate& update, Rng& rng, const SweepObserver& observer = {});

/// Final jammer power, cap and metrics for a phase vector.
SolverResult finalize_result(const ChannelSet& ch, const LinkBudget& budget, PhaseVector phi, int rounds_used,
                             std::vector<double> epsilon_trace);

/// Jamming step followed by the penalized swarm, element by element.
SolverResult solve(const ChannelSet& ch, const ScenarioConfig& scenario, const SolverConfig& cfg, Rng& rng,
                   const SweepObserver& observer = {});

}  // namespace risjam
