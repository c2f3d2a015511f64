#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace risjam {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Every stochastic routine takes one of these by reference. One engine per trial.
using Rng = std::mt19937_64;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle into [0, 2π).
double wrap_angle(double theta);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// RIS reflection coefficients v_n = exp(j θ_n). Angles are held in [0, 2π),
/// so unit modulus holds by construction.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> theta);

  /// All-ones vector (θ_n = 0).
  static PhaseVector ones(std::size_t n);

  std::size_t size() const { return theta_.size(); }
  double theta(std::size_t n) const { return theta_.at(n); }
  std::span<const double> thetas() const { return theta_; }
  void set_theta(std::size_t n, double theta);

  cplx element(std::size_t n) const { return std::polar(1.0, theta_.at(n)); }
  /// Row vector v = [v_1 ... v_N].
  CRowVector coefficients() const;

  /// Σ|v_new - v_old| / Σ|v_old|; sizes must match.
  static double relative_change(const PhaseVector& next, const PhaseVector& prev);

  bool operator==(const PhaseVector&) const = default;

 private:
  std::vector<double> theta_;
};

}  // namespace risjam
