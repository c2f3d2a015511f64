#pragma once

#include <optional>

#include "risjam/geometry_channel.hpp"
#include "risjam/types.hpp"

namespace risjam {

/// Which received-power expression a form represents: signal at SR (ST),
/// jamming at SR (J), or signal at the monitor (M).
enum class FormKind { ST, J, M };

/// f(v) = v A v^H + v b + b^H v^H + c with A = a a^H, v a row vector of
/// unit-modulus coefficients. A is held through a only.
struct QuadraticForm {
  CVector a;
  CVector b;
  double c = 0.0;

  Eigen::Index size() const { return a.size(); }
  /// Dense A = a a^H, for inspection and tests.
  CMatrix matrix() const { return a * a.adjoint(); }
};

/// Coefficients of the single-element restriction f(θ_ℓ) = Re{e^{jθ_ℓ} α} + β
/// = ρ cos(θ_ℓ + phase) + β, with every other element held fixed.
struct PerElementCoeffs {
  cplx alpha{0.0, 0.0};
  double beta = 0.0;
  double rho = 0.0;
  double phase = 0.0;  // arg α in [0, 2π)

  double value(double theta) const { return rho * std::cos(theta + phase) + beta; }
};

/// kind J needs the unit jamming direction w_j_bar (1×K); the other kinds ignore it.
QuadraticForm build_form(FormKind kind, const ChannelSet& ch, const CVector& w_st,
                         const std::optional<CRowVector>& w_j_bar = std::nullopt);

double eval_form(const QuadraticForm& form, const PhaseVector& v);

/// ell is zero-based.
PerElementCoeffs per_element_coeffs(const QuadraticForm& form, const PhaseVector& v, std::size_t ell);

}  // namespace risjam
