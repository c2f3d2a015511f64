#include "risjam/types.hpp"

#include <stdexcept>

namespace risjam {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("wrap_angle: non-finite angle");
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhaseVector::PhaseVector(std::vector<double> theta) : theta_(std::move(theta)) {
  for (double& t : theta_) t = wrap_angle(t);
}

PhaseVector PhaseVector::ones(std::size_t n) { return PhaseVector(std::vector<double>(n, 0.0)); }

void PhaseVector::set_theta(std::size_t n, double theta) { theta_.at(n) = wrap_angle(theta); }

CRowVector PhaseVector::coefficients() const {
  CRowVector v(static_cast<Eigen::Index>(theta_.size()));
  for (std::size_t n = 0; n < theta_.size(); ++n) v(static_cast<Eigen::Index>(n)) = std::polar(1.0, theta_[n]);
  return v;
}

double PhaseVector::relative_change(const PhaseVector& next, const PhaseVector& prev) {
  if (next.size() != prev.size()) throw std::invalid_argument("relative_change: size mismatch");
  if (prev.size() == 0) return 0.0;
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < prev.size(); ++n) {
    num += std::abs(next.element(n) - prev.element(n));
    den += std::abs(prev.element(n));
  }
  return num / den;
}

}  // namespace risjam
