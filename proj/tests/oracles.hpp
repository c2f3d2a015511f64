#pragma once

// Independent reference computations used only by the tests. Everything here is
// written with explicit loops over std::complex and never calls into the
// library's matrix code, so an agreement is a real cross-check.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "risjam/geometry_channel.hpp"
#include "risjam/types.hpp"

namespace oracle {

using risjam::cplx;

inline cplx cn(std::mt19937_64& g, double var = 1.0) {
  std::normal_distribution<double> d(0.0, std::sqrt(var / 2.0));
  return {d(g), d(g)};
}

/// iid CN(0, var) channels of the given shape.
inline risjam::ChannelSet random_channels(std::mt19937_64& g, int m_t, int n, int k, double var = 1.0) {
  risjam::ChannelSet ch;
  ch.h_ti.resize(m_t, n);
  ch.h_ir.resize(n);
  ch.h_ki.resize(n, k);
  ch.h_im.resize(n);
  ch.h_tm.resize(m_t);
  ch.h_tr.resize(m_t);
  ch.h_kr.resize(k);
  for (int i = 0; i < m_t; ++i)
    for (int j = 0; j < n; ++j) ch.h_ti(i, j) = cn(g, var);
  for (int j = 0; j < n; ++j) {
    ch.h_ir(j) = cn(g, var);
    ch.h_im(j) = cn(g, var);
    for (int q = 0; q < k; ++q) ch.h_ki(j, q) = cn(g, var);
  }
  for (int i = 0; i < m_t; ++i) {
    ch.h_tm(i) = cn(g, var);
    ch.h_tr(i) = cn(g, var);
  }
  for (int q = 0; q < k; ++q) ch.h_kr(q) = cn(g, var);
  return ch;
}

inline std::vector<double> random_phases(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& x : t) x = u(g);
  return t;
}

struct Cascade {
  std::vector<cplx> h_s, h_i, h_m;
};

// h_s[m] = h_tr[m] + Σ_n conj(h_ir[n]) e^{jθ_n} conj(H_TI[m,n]), and likewise.
inline Cascade cascade(const risjam::ChannelSet& ch, const std::vector<double>& theta) {
  const int m_t = static_cast<int>(ch.h_ti.rows());
  const int n = static_cast<int>(ch.h_ti.cols());
  const int k = static_cast<int>(ch.h_ki.cols());
  Cascade c;
  c.h_s.assign(m_t, {});
  c.h_m.assign(m_t, {});
  c.h_i.assign(k, {});
  for (int m = 0; m < m_t; ++m) {
    cplx s = ch.h_tr(m), mm = ch.h_tm(m);
    for (int e = 0; e < n; ++e) {
      const cplx v = std::polar(1.0, theta[e]);
      s += std::conj(ch.h_ir(e)) * v * std::conj(ch.h_ti(m, e));
      mm += std::conj(ch.h_im(e)) * v * std::conj(ch.h_ti(m, e));
    }
    c.h_s[m] = s;
    c.h_m[m] = mm;
  }
  for (int q = 0; q < k; ++q) {
    cplx s = ch.h_kr(q);
    for (int e = 0; e < n; ++e) s += std::conj(ch.h_ir(e)) * std::polar(1.0, theta[e]) * ch.h_ki(e, q);
    c.h_i[q] = s;
  }
  return c;
}

inline double norm2(const std::vector<cplx>& x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return s;
}

/// Transmit MRT toward the direct ST-SR link, total power p_st.
inline std::vector<cplx> mrt(const risjam::ChannelSet& ch, double p_st) {
  const int m_t = static_cast<int>(ch.h_tr.size());
  double nrm = 0.0;
  for (int m = 0; m < m_t; ++m) nrm += std::norm(ch.h_tr(m));
  nrm = std::sqrt(nrm);
  std::vector<cplx> w(m_t);
  for (int m = 0; m < m_t; ++m) w[m] = std::sqrt(p_st) * std::conj(ch.h_tr(m)) / nrm;
  return w;
}

// |Σ h[i] w[i]|²
inline double gain(const std::vector<cplx>& h, const std::vector<cplx>& w) {
  cplx s{};
  for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * w[i];
  return std::norm(s);
}

struct Metrics {
  double gamma_sr, gamma_m;
};

/// SINR/SNR with the jamming beamformer formed explicitly as √P_J h_i^H / ‖h_i‖.
inline Metrics metrics(const risjam::ChannelSet& ch, const std::vector<double>& theta, double p_st, double p_j,
                       double sigma2_sr, double sigma2_m) {
  const auto c = cascade(ch, theta);
  const auto w_st = mrt(ch, p_st);
  const double ni = std::sqrt(norm2(c.h_i));
  std::vector<cplx> w_j(c.h_i.size());
  for (std::size_t q = 0; q < w_j.size(); ++q) w_j[q] = std::sqrt(p_j) * std::conj(c.h_i[q]) / ni;
  return {gain(c.h_s, w_st) / (gain(c.h_i, w_j) + sigma2_sr), gain(c.h_m, w_st) / sigma2_m};
}

/// Minimum of f over an n-point uniform grid of [0, 2π), and where it sits.
inline std::pair<double, double> grid_min(const std::function<double(double)>& f, int n) {
  double best = std::numeric_limits<double>::infinity(), at = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    const double v = f(t);
    if (v < best) {
      best = v;
      at = t;
    }
  }
  return {best, at};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
