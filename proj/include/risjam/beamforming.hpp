#pragma once

#include "risjam/geometry_channel.hpp"
#include "risjam/types.hpp"

namespace risjam {

/// Powers, noise levels and thresholds that every metric needs, all linear.
struct LinkBudget {
  double p_st = 1.0;
  double sigma2_sr = 1e-12;
  double sigma2_m = 1e-12;
  double gamma_sr_th = 0.1;
  double gamma_m_th = 15.848931924611133;
  double p_j_max = 10.0;

  static LinkBudget from(const ScenarioConfig& s) {
    return {s.p_st, s.sigma2_sr, s.sigma2_m, s.gamma_sr_th, s.gamma_m_th, s.p_j_max};
  }
};

/// Cascaded channels seen at SR (h_s from ST, h_i from the jammers) and at the
/// monitor (h_m from ST). Single reflections only.
struct EffectiveChannels {
  CRowVector h_s;  // 1×M_t
  CRowVector h_i;  // 1×K
  CRowVector h_m;  // 1×M_t
};

struct Beamformers {
  CVector w_st;        // M_t, ‖w_st‖² = P_ST
  CRowVector w_j_bar;  // 1×K, unit norm
  double p_j = 0.0;
  CRowVector w_j() const { return std::sqrt(p_j) * w_j_bar; }
};

struct LinkMetrics {
  double gamma_sr = 0.0;  // SINR at SR, linear
  double gamma_m = 0.0;   // SNR at the monitor, linear
};

/// h_s = h_tr + h_ir^H Φ h_ti^H, h_i = h_kr + h_ir^H Φ h_ki, h_m = h_tm + h_im^H Φ h_ti^H.
EffectiveChannels effective_channels(const ChannelSet& ch, const PhaseVector& phi);

/// MRT toward SR over the direct link. Throws std::domain_error if h_tr is zero.
CVector mrt_st(const ChannelSet& ch, double p_st);

/// Unit-norm MRT direction of the jammers toward SR. Throws std::domain_error if h_i is zero.
CRowVector mrt_lj_direction(const EffectiveChannels& eff);

/// Received power |h w|² for a row channel and column beamformer.
inline double received_power(const CRowVector& h, const CVector& w) { return std::norm((h * w)(0, 0)); }

/// γ_SR with the jammers transmitting total power p_j along their MRT direction,
/// and γ_M with jamming cancelled at the monitor.
LinkMetrics link_metrics(const ChannelSet& ch, const PhaseVector& phi, const LinkBudget& budget, double p_j);

/// Smallest total jammer power that pushes γ_SR down to gamma_sr_th, clamped at 0
/// when SR is already below the threshold without jamming.
double pj_lower_bound(const ChannelSet& ch, const PhaseVector& phi, const LinkBudget& budget);

}  // namespace risjam
