#include "risjam/beamforming.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace risjam {

namespace {

void check_phase_size(const ChannelSet& ch, const PhaseVector& phi) {
  ch.check_shapes();
  if (static_cast<Eigen::Index>(phi.size()) != ch.n_elements())
    throw std::invalid_argument(
        fmt::format("phase vector has {} entries but the RIS has {} elements", phi.size(), ch.n_elements()));
}

}  // namespace

EffectiveChannels effective_channels(const ChannelSet& ch, const PhaseVector& phi) {
  check_phase_size(ch, phi);
  const CRowVector v = phi.coefficients();
  // h_ir^H Φ and h_im^H Φ as row vectors
  const CRowVector ir_phi = ch.h_ir.adjoint().cwiseProduct(v);
  const CRowVector im_phi = ch.h_im.adjoint().cwiseProduct(v);
  EffectiveChannels eff;
  eff.h_s = ch.h_tr + ir_phi * ch.h_ti.adjoint();
  eff.h_i = ch.h_kr + ir_phi * ch.h_ki;
  eff.h_m = ch.h_tm + im_phi * ch.h_ti.adjoint();
  return eff;
}

CVector mrt_st(const ChannelSet& ch, double p_st) {
  const double norm = ch.h_tr.norm();
  if (!(norm > 0.0)) throw std::domain_error("MRT: the direct ST-SR channel is zero");
  return std::sqrt(p_st) * ch.h_tr.adjoint() / norm;
}

CRowVector mrt_lj_direction(const EffectiveChannels& eff) {
  const double norm = eff.h_i.norm();
  if (!(norm > 0.0)) throw std::domain_error("MRT: the effective jammer-SR channel is zero");
  return eff.h_i / norm;
}

LinkMetrics link_metrics(const ChannelSet& ch, const PhaseVector& phi, const LinkBudget& budget, double p_j) {
  if (!(p_j >= 0.0)) throw std::invalid_argument("link_metrics: jammer power must be >= 0");
  const auto eff = effective_channels(ch, phi);
  const CVector w_st = mrt_st(ch, budget.p_st);
  LinkMetrics m;
  // MRT jamming: |h_i w_j^H|² = P_J ‖h_i‖²
  m.gamma_sr = received_power(eff.h_s, w_st) / (p_j * eff.h_i.squaredNorm() + budget.sigma2_sr);
  m.gamma_m = received_power(eff.h_m, w_st) / budget.sigma2_m;
  return m;
}

double pj_lower_bound(const ChannelSet& ch, const PhaseVector& phi, const LinkBudget& budget) {
  const auto eff = effective_channels(ch, phi);
  const double jam_gain = eff.h_i.squaredNorm();
  if (!(jam_gain > 0.0)) throw std::domain_error("jammer power bound: the effective jammer-SR channel is zero");
  const CVector w_st = mrt_st(ch, budget.p_st);
  const double excess = received_power(eff.h_s, w_st) - budget.sigma2_sr * budget.gamma_sr_th;
  return std::max(0.0, excess / (budget.gamma_sr_th * jam_gain));
}

}  // namespace risjam
