#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risjam/types.hpp"

namespace risjam {

struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Position3D&) const = default;
};

double distance(const Position3D& a, const Position3D& b);

enum class FadingKind { Rayleigh, Rician };

struct FadingSpec {
  FadingKind kind = FadingKind::Rayleigh;
  double rician_factor = 0.0;  // κ, linear; ignored for Rayleigh
};

/// Log-distance model: PL_dB = pl0_db - 10 μ log10(d / d0).
struct PathLossSpec {
  double pl0_db = -30.0;
  double d0 = 1.0;
  double exponent = 2.0;
};

struct LinkSpec {
  FadingSpec fading;
  PathLossSpec path_loss;
};

/// The seven propagation links. T = suspicious transmitter, R = suspicious
/// receiver, I = RIS, K = jammers, M = monitor.
enum class Link { TI, IR, KI, IM, TM, TR, KR };
inline constexpr std::size_t kLinkCount = 7;
inline constexpr std::array<Link, kLinkCount> kAllLinks = {Link::TI, Link::IR, Link::KI, Link::IM,
                                                           Link::TM, Link::TR, Link::KR};

std::string_view link_name(Link link);  // "h_ti", "h_ir", ...
std::optional<Link> parse_link(std::string_view name);

/// Industrial scenario defaults: RIS at (0,20,3), ST at (20,0,3), SR at
/// (20,100,0), monitor and jammers on a 20 m disk around (20,150,0),
/// -90 dBm noise, 12 dB monitoring threshold, -10 dB jamming threshold.
struct ScenarioConfig {
  int m_t = 4;
  int n_elements = 10;
  int k_jammers = 6;

  Position3D st{20.0, 0.0, 3.0};
  Position3D sr{20.0, 100.0, 0.0};
  Position3D ris{0.0, 20.0, 3.0};
  Position3D deployment_center{20.0, 150.0, 0.0};
  double deployment_radius = 20.0;
  /// Redraw monitor/jammer positions every trial; otherwise one placement per sweep.
  bool redraw_positions = true;

  std::array<LinkSpec, kLinkCount> links = default_links();

  double sigma2_sr = 1e-12;  // W
  double sigma2_m = 1e-12;   // W
  double gamma_sr_th = 0.1;  // linear
  double gamma_m_th = 15.848931924611133;  // linear (12 dB)
  double p_st = 1.0;    // W
  double p_j_max = 10.0;  // W

  LinkSpec& link(Link l) { return links[static_cast<std::size_t>(l)]; }
  const LinkSpec& link(Link l) const { return links[static_cast<std::size_t>(l)]; }

  static std::array<LinkSpec, kLinkCount> default_links();

  /// Every invariant breach, one message per field. Empty when valid.
  std::vector<std::string> validate() const;
};

/// One realization of all channels. Shapes: h_ti M_t×N, h_ir N, h_ki N×K,
/// h_im N, h_tm 1×M_t, h_tr 1×M_t, h_kr 1×K.
struct ChannelSet {
  CMatrix h_ti;
  CVector h_ir;
  CMatrix h_ki;
  CVector h_im;
  CRowVector h_tm;
  CRowVector h_tr;
  CRowVector h_kr;

  Eigen::Index m_t() const { return h_ti.rows(); }
  Eigen::Index n_elements() const { return h_ti.cols(); }
  Eigen::Index k_jammers() const { return h_ki.cols(); }

  /// Throws std::invalid_argument if any field disagrees with (m_t, n, k) from h_ti/h_ki.
  void check_shapes() const;
  bool all_finite() const;
};

/// Copy with every RIS-related link zeroed (the no-RIS system).
ChannelSet without_ris_links(ChannelSet ch);

/// Linear power gain. Throws std::domain_error if d < d0.
double path_loss_linear(const PathLossSpec& spec, double d);

/// Small-scale fading matrix: unit-variance circular Gaussian entries for
/// Rayleigh; sqrt(κ/(κ+1))·1 + sqrt(1/(κ+1))·G for Rician with an all-ones LoS.
CMatrix draw_small_scale(Rng& rng, const FadingSpec& spec, Eigen::Index rows, Eigen::Index cols);

struct Placement {
  Position3D monitor;
  std::vector<Position3D> jammers;
};

/// Uniform on the horizontal disk around deployment_center (z of the center).
Placement place_monitor_and_jammers(Rng& rng, const ScenarioConfig& scenario);

/// Draw order: direct links (h_tr, h_tm, h_kr), then RIS links element by
/// element, so a larger RIS extends a smaller one drawn from the same seed.
ChannelSet generate_channel_set(Rng& rng, const ScenarioConfig& scenario, const Position3D& monitor,
                                std::span<const Position3D> jammers);

}  // namespace risjam
