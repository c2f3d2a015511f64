#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risjam/bcd_pso.hpp"

namespace risjam {

enum class SchemeId { BCD_PSO, PSO, SA, PSO_DOMAIN, BCD_DOMAIN, BCD_SA, RANDOM_PHASE, WITHOUT_RIS };

inline constexpr std::array<SchemeId, 8> kAllSchemes = {
    SchemeId::BCD_PSO,    SchemeId::PSO,    SchemeId::SA,           SchemeId::PSO_DOMAIN,
    SchemeId::BCD_DOMAIN, SchemeId::BCD_SA, SchemeId::RANDOM_PHASE, SchemeId::WITHOUT_RIS};

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

/// Per-element annealer. Temperatures are in the objective's units (watts).
struct SAConfig {
  double initial_temperature = 1.0;
  double cooling_ratio = 0.95;
  int steps_per_temperature = 10;
  double proposal_width = kPi / 4.0;  // proposals uniform in ±width
  double min_temperature = 1e-4;

  std::vector<std::string> validate() const;
};

/// Both solver configurations a scheme may need.
struct SolverSettings {
  SolverConfig solver;
  SAConfig sa;
};

/// Closed arc [lo, hi] with 0 ≤ lo ≤ hi ≤ 2π.
struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// Phases that satisfy the monitoring constraint for one element, i.e.
/// cos(θ + θ_M) ≥ (σ_M² γ_M,th − β_M) / ρ_M, split into at most two arcs inside [0, 2π].
std::vector<AngleInterval> feasible_intervals(const PerElementCoeffs& coeffs_m, double gamma_m_th, double sigma2_m);

/// Uniform draw over the union of the arcs. Throws if the union has zero length.
double sample_intervals(std::span<const AngleInterval> arcs, Rng& rng);

/// Metropolis rule: always accept improvements, otherwise with probability exp(−Δ/temperature).
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// Anneals one phase on the penalized fitness from `start`; returns the best phase visited.
double anneal_element(const ElementProblem& problem, double start, const SolverSettings& settings, Rng& rng);

SolverResult solve_scheme(SchemeId id, const ChannelSet& ch, const ScenarioConfig& scenario,
                          const SolverSettings& settings, Rng& rng, const SweepObserver& observer = {});

}  // namespace risjam
