#include "risjam/geometry_channel.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace risjam {

namespace {

constexpr std::array<std::string_view, kLinkCount> kLinkNames = {"h_ti", "h_ir", "h_ki", "h_im",
                                                                 "h_tm", "h_tr", "h_kr"};

bool finite(const Position3D& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

double amplitude(const LinkSpec& spec, double d) { return std::sqrt(path_loss_linear(spec.path_loss, d)); }

}  // namespace

double distance(const Position3D& a, const Position3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

std::string_view link_name(Link link) { return kLinkNames[static_cast<std::size_t>(link)]; }

std::optional<Link> parse_link(std::string_view name) {
  for (std::size_t i = 0; i < kLinkCount; ++i)
    if (kLinkNames[i] == name) return kAllLinks[i];
  return std::nullopt;
}

std::array<LinkSpec, kLinkCount> ScenarioConfig::default_links() {
  const auto rayleigh = FadingSpec{FadingKind::Rayleigh, 0.0};
  const auto rician = [](double k) { return FadingSpec{FadingKind::Rician, k}; };
  const auto pl = [](double mu) { return PathLossSpec{-30.0, 1.0, mu}; };
  std::array<LinkSpec, kLinkCount> links{};
  links[static_cast<std::size_t>(Link::TI)] = {rician(2.0), pl(2.0)};
  links[static_cast<std::size_t>(Link::IR)] = {rician(2.0), pl(4.0)};
  links[static_cast<std::size_t>(Link::KI)] = {rician(10.0), pl(2.0)};
  links[static_cast<std::size_t>(Link::IM)] = {rician(10.0), pl(2.0)};
  links[static_cast<std::size_t>(Link::TM)] = {rayleigh, pl(4.0)};
  links[static_cast<std::size_t>(Link::TR)] = {rayleigh, pl(4.0)};
  links[static_cast<std::size_t>(Link::KR)] = {rayleigh, pl(4.0)};
  return links;
}

std::vector<std::string> ScenarioConfig::validate() const {
  std::vector<std::string> errs;
  auto need = [&errs](bool ok, std::string msg) {
    if (!ok) errs.push_back(std::move(msg));
  };
  need(m_t >= 1, fmt::format("scenario.m_t must be a positive integer (got {})", m_t));
  need(n_elements >= 1, fmt::format("scenario.n_elements must be a positive integer (got {})", n_elements));
  need(k_jammers >= 1, fmt::format("scenario.k_jammers must be a positive integer (got {})", k_jammers));
  need(finite(st), "scenario.st_position must have finite coordinates");
  need(finite(sr), "scenario.sr_position must have finite coordinates");
  need(finite(ris), "scenario.ris_position must have finite coordinates");
  need(finite(deployment_center), "scenario.deployment_center must have finite coordinates");
  need(std::isfinite(deployment_radius) && deployment_radius >= 0.0,
       fmt::format("scenario.deployment_radius_m must be >= 0 (got {})", deployment_radius));
  for (Link l : kAllLinks) {
    const auto& s = link(l);
    const auto name = link_name(l);
    need(s.fading.rician_factor >= 0.0, fmt::format("link.{}.kappa must be >= 0 (got {})", name, s.fading.rician_factor));
    need(std::isfinite(s.path_loss.pl0_db), fmt::format("link.{}.pl0_db must be finite", name));
    need(std::isfinite(s.path_loss.d0) && s.path_loss.d0 > 0.0,
         fmt::format("link.{}.d0_m must be > 0 (got {})", name, s.path_loss.d0));
    need(std::isfinite(s.path_loss.exponent) && s.path_loss.exponent > 0.0,
         fmt::format("link.{}.exponent must be > 0 (got {})", name, s.path_loss.exponent));
  }
  need(std::isfinite(sigma2_sr) && sigma2_sr > 0.0, "scenario noise power at SR must be > 0");
  need(std::isfinite(sigma2_m) && sigma2_m > 0.0, "scenario noise power at the monitor must be > 0");
  need(std::isfinite(gamma_sr_th) && gamma_sr_th > 0.0, "scenario.gamma_sr_th must be > 0 (linear)");
  need(std::isfinite(gamma_m_th) && gamma_m_th > 0.0, "scenario.gamma_m_th must be > 0 (linear)");
  need(std::isfinite(p_st) && p_st > 0.0, fmt::format("scenario.p_st_w must be > 0 (got {})", p_st));
  need(p_j_max > 0.0, fmt::format("scenario.p_j_max_w must be > 0 (got {})", p_j_max));
  return errs;
}

void ChannelSet::check_shapes() const {
  const auto m = h_ti.rows(), n = h_ti.cols(), k = h_ki.cols();
  if (h_ir.size() != n || h_ki.rows() != n || h_im.size() != n || h_tm.size() != m || h_tr.size() != m ||
      h_kr.size() != k)
    throw std::invalid_argument(fmt::format(
        "ChannelSet shape mismatch: h_ti {}x{}, h_ir {}, h_ki {}x{}, h_im {}, h_tm {}, h_tr {}, h_kr {}", h_ti.rows(),
        h_ti.cols(), h_ir.size(), h_ki.rows(), h_ki.cols(), h_im.size(), h_tm.size(), h_tr.size(), h_kr.size()));
}

bool ChannelSet::all_finite() const {
  return h_ti.allFinite() && h_ir.allFinite() && h_ki.allFinite() && h_im.allFinite() && h_tm.allFinite() &&
         h_tr.allFinite() && h_kr.allFinite();
}

ChannelSet without_ris_links(ChannelSet ch) {
  ch.h_ti.setZero();
  ch.h_ir.setZero();
  ch.h_ki.setZero();
  ch.h_im.setZero();
  return ch;
}

double path_loss_linear(const PathLossSpec& spec, double d) {
  if (!(d >= spec.d0))
    throw std::domain_error(fmt::format("path loss: distance {} m is below the reference distance {} m", d, spec.d0));
  const double pl_db = spec.pl0_db - 10.0 * spec.exponent * std::log10(d / spec.d0);
  return db_to_linear(pl_db);
}

CMatrix draw_small_scale(Rng& rng, const FadingSpec& spec, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("draw_small_scale: rows and cols must be >= 1");
  CMatrix out(rows, cols);
  if (spec.kind == FadingKind::Rician && std::isinf(spec.rician_factor)) {
    out.setOnes();
    return out;
  }
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      out(r, c) = cplx(re, im);
    }
  if (spec.kind == FadingKind::Rician) {
    const double k = spec.rician_factor;
    const double los = std::sqrt(k / (k + 1.0));
    const double nlos = std::sqrt(1.0 / (k + 1.0));
    out = (out * nlos).array() + cplx(los, 0.0);
  }
  return out;
}

Placement place_monitor_and_jammers(Rng& rng, const ScenarioConfig& scenario) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& c = scenario.deployment_center;
  const double radius = scenario.deployment_radius;
  auto draw = [&] {
    const double r = radius * std::sqrt(unit(rng));
    const double phi = kTwoPi * unit(rng);
    return Position3D{c.x + r * std::cos(phi), c.y + r * std::sin(phi), c.z};
  };
  Placement p;
  p.monitor = draw();
  p.jammers.reserve(static_cast<std::size_t>(scenario.k_jammers));
  for (int k = 0; k < scenario.k_jammers; ++k) p.jammers.push_back(draw());
  return p;
}

ChannelSet generate_channel_set(Rng& rng, const ScenarioConfig& scenario, const Position3D& monitor,
                                std::span<const Position3D> jammers) {
  const Eigen::Index m = scenario.m_t, n = scenario.n_elements, k = scenario.k_jammers;
  if (m < 1 || n < 1 || k < 1) throw std::invalid_argument("generate_channel_set: M_t, N and K must be >= 1");
  if (static_cast<Eigen::Index>(jammers.size()) != k)
    throw std::invalid_argument(
        fmt::format("generate_channel_set: expected {} jammer positions, got {}", k, jammers.size()));

  const auto& spec = [&](Link l) -> const LinkSpec& { return scenario.link(l); };

  ChannelSet ch;
  ch.h_tr = amplitude(spec(Link::TR), distance(scenario.st, scenario.sr)) *
            draw_small_scale(rng, spec(Link::TR).fading, 1, m).row(0);
  ch.h_tm = amplitude(spec(Link::TM), distance(scenario.st, monitor)) *
            draw_small_scale(rng, spec(Link::TM).fading, 1, m).row(0);
  ch.h_kr.resize(k);
  for (Eigen::Index j = 0; j < k; ++j)
    ch.h_kr(j) = amplitude(spec(Link::KR), distance(jammers[static_cast<std::size_t>(j)], scenario.sr)) *
                 draw_small_scale(rng, spec(Link::KR).fading, 1, 1)(0, 0);

  const double amp_ti = amplitude(spec(Link::TI), distance(scenario.st, scenario.ris));
  const double amp_ir = amplitude(spec(Link::IR), distance(scenario.ris, scenario.sr));
  const double amp_im = amplitude(spec(Link::IM), distance(scenario.ris, monitor));
  std::vector<double> amp_ki(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j)
    amp_ki[static_cast<std::size_t>(j)] =
        amplitude(spec(Link::KI), distance(jammers[static_cast<std::size_t>(j)], scenario.ris));

  ch.h_ti.resize(m, n);
  ch.h_ir.resize(n);
  ch.h_ki.resize(n, k);
  ch.h_im.resize(n);
  for (Eigen::Index e = 0; e < n; ++e) {
    ch.h_ti.col(e) = amp_ti * draw_small_scale(rng, spec(Link::TI).fading, m, 1).col(0);
    ch.h_ir(e) = amp_ir * draw_small_scale(rng, spec(Link::IR).fading, 1, 1)(0, 0);
    for (Eigen::Index j = 0; j < k; ++j)
      ch.h_ki(e, j) = amp_ki[static_cast<std::size_t>(j)] * draw_small_scale(rng, spec(Link::KI).fading, 1, 1)(0, 0);
    ch.h_im(e) = amp_im * draw_small_scale(rng, spec(Link::IM).fading, 1, 1)(0, 0);
  }
  return ch;
}

}  // namespace risjam
