#include <gtest/gtest.h>

#include <cmath>

#include "risjam/geometry_channel.hpp"

using namespace risjam;

TEST(Types, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_angle(7.0), 7.0 - kTwoPi, 1e-15);
  EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
  EXPECT_LT(wrap_angle(-1e-18), kTwoPi);
  EXPECT_THROW(wrap_angle(std::nan("")), std::domain_error);
  EXPECT_THROW(wrap_angle(INFINITY), std::domain_error);
}

TEST(Types, DecibelConversions) {
  EXPECT_NEAR(db_to_linear(12.0), 15.848931924611133, 1e-12);
  EXPECT_NEAR(dbm_to_watts(-90.0), 1e-12, 1e-27);
  EXPECT_NEAR(linear_to_db(0.1), -10.0, 1e-12);
  EXPECT_NEAR(watts_to_dbm(1.0), 30.0, 1e-12);
}

TEST(Types, PhaseVectorUnitModulusAndChange) {
  PhaseVector v({-1.0, 10.0, 3.0});
  for (std::size_t n = 0; n < v.size(); ++n) {
    EXPECT_GE(v.theta(n), 0.0);
    EXPECT_LT(v.theta(n), kTwoPi);
    EXPECT_NEAR(std::abs(v.element(n)), 1.0, 1e-15);
  }
  const auto ones = PhaseVector::ones(4);
  EXPECT_EQ(PhaseVector::relative_change(ones, ones), 0.0);
  auto flipped = ones;
  flipped.set_theta(0, kPi);
  // |(-1) - 1| / 4
  EXPECT_NEAR(PhaseVector::relative_change(flipped, ones), 0.5, 1e-15);
  EXPECT_THROW(PhaseVector::relative_change(ones, PhaseVector::ones(3)), std::invalid_argument);
}

TEST(Geometry, Distance) {
  EXPECT_NEAR(distance({0, 20, 3}, {20, 0, 3}), std::sqrt(800.0), 1e-12);
  EXPECT_NEAR(distance({0, 20, 3}, {20, 0, 3}), 28.2843, 1e-4);
  EXPECT_DOUBLE_EQ(distance({1, 2, 3}, {1, 2, 3}), 0.0);
}

TEST(Geometry, PathLoss) {
  EXPECT_NEAR(path_loss_linear({-30.0, 1.0, 2.0}, 10.0), 1e-5, 1e-18);
  EXPECT_NEAR(path_loss_linear({-30.0, 1.0, 4.0}, 100.0), 1e-11, 1e-24);
  EXPECT_NEAR(path_loss_linear({-30.0, 1.0, 3.0}, 1.0), 1e-3, 1e-18);
  EXPECT_THROW(path_loss_linear({-30.0, 1.0, 2.0}, 0.5), std::domain_error);
}

TEST(Geometry, LinkNames) {
  for (Link l : kAllLinks) EXPECT_EQ(parse_link(link_name(l)), l);
  EXPECT_FALSE(parse_link("h_xx"));
}

TEST(Geometry, DefaultScenarioIsValid) {
  ScenarioConfig s;
  EXPECT_TRUE(s.validate().empty());
  EXPECT_EQ(s.link(Link::TR).fading.kind, FadingKind::Rayleigh);
  EXPECT_DOUBLE_EQ(s.link(Link::TR).path_loss.exponent, 4.0);
  EXPECT_EQ(s.link(Link::TI).fading.kind, FadingKind::Rician);
  EXPECT_DOUBLE_EQ(s.link(Link::TI).fading.rician_factor, 2.0);
  EXPECT_DOUBLE_EQ(s.link(Link::IR).path_loss.exponent, 4.0);
  EXPECT_DOUBLE_EQ(s.link(Link::KI).fading.rician_factor, 10.0);
  EXPECT_DOUBLE_EQ(s.link(Link::IM).path_loss.exponent, 2.0);

  s.n_elements = -3;
  s.deployment_radius = -1.0;
  EXPECT_EQ(s.validate().size(), 2u);
}

TEST(Fading, RayleighMoments) {
  Rng rng(11);
  const auto g = draw_small_scale(rng, {FadingKind::Rayleigh, 0.0}, 400, 100);
  const double power = g.cwiseAbs2().mean();
  const std::complex<double> mean = g.mean();
  EXPECT_NEAR(power, 1.0, 0.01);
  EXPECT_LT(std::abs(mean), 0.01);
  // circular: real and imaginary parts carry half the power each
  EXPECT_NEAR(g.real().cwiseAbs2().mean(), 0.5, 0.01);
}

TEST(Fading, RicianMoments) {
  Rng rng(12);
  const double kappa = 2.0;
  const auto g = draw_small_scale(rng, {FadingKind::Rician, kappa}, 400, 100);
  const std::complex<double> mean = g.mean();
  EXPECT_NEAR(mean.real(), std::sqrt(kappa / (kappa + 1.0)), 0.01);
  EXPECT_NEAR(mean.imag(), 0.0, 0.01);
  EXPECT_NEAR(g.cwiseAbs2().mean(), 1.0, 0.01);

  const auto los = draw_small_scale(rng, {FadingKind::Rician, INFINITY}, 3, 3);
  EXPECT_TRUE(los.isApprox(CMatrix::Ones(3, 3)));
}

TEST(Placement, UniformOnDisk) {
  ScenarioConfig s;
  s.k_jammers = 8;
  Rng rng(3);
  double r2 = 0.0;
  int count = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto p = place_monitor_and_jammers(rng, s);
    ASSERT_EQ(p.jammers.size(), 8u);
    EXPECT_EQ(p.monitor.z, 0.0);
    EXPECT_LE(distance(p.monitor, s.deployment_center), s.deployment_radius + 1e-12);
    for (const auto& j : p.jammers) {
      const double d = distance(j, s.deployment_center);
      EXPECT_LE(d, s.deployment_radius + 1e-12);
      r2 += d * d;
      ++count;
    }
  }
  // E[r²] = R²/2 for a uniform disk
  EXPECT_NEAR(r2 / count, 200.0, 4.0);
}

TEST(Channels, ShapesAndScale) {
  ScenarioConfig s;
  Rng rng(5);
  const auto p = place_monitor_and_jammers(rng, s);
  const auto ch = generate_channel_set(rng, s, p.monitor, p.jammers);
  EXPECT_NO_THROW(ch.check_shapes());
  EXPECT_EQ(ch.m_t(), 4);
  EXPECT_EQ(ch.n_elements(), 10);
  EXPECT_EQ(ch.k_jammers(), 6);
  EXPECT_TRUE(ch.all_finite());

  // averaged direct ST-SR power follows the path loss
  const double d = distance(s.st, s.sr);
  const double pl = path_loss_linear(s.link(Link::TR).path_loss, d);
  double acc = 0.0;
  const int reps = 4000;
  for (int i = 0; i < reps; ++i) acc += generate_channel_set(rng, s, p.monitor, p.jammers).h_tr.squaredNorm();
  EXPECT_NEAR(acc / reps / (s.m_t * pl), 1.0, 0.05);
}

TEST(Channels, LargerRisExtendsSmallerOne) {
  ScenarioConfig small, large;
  large.n_elements = 20;
  Rng prng(9);
  const auto place = place_monitor_and_jammers(prng, small);
  Rng a(21), b(21);
  const auto c10 = generate_channel_set(a, small, place.monitor, place.jammers);
  const auto c20 = generate_channel_set(b, large, place.monitor, place.jammers);
  EXPECT_EQ(c10.h_tr, c20.h_tr);
  EXPECT_EQ(c10.h_kr, c20.h_kr);
  EXPECT_EQ(c10.h_ti, c20.h_ti.leftCols(10));
  EXPECT_EQ(c10.h_ir, c20.h_ir.head(10));
  EXPECT_EQ(c10.h_ki, c20.h_ki.topRows(10));
  EXPECT_EQ(c10.h_im, c20.h_im.head(10));
}

TEST(Channels, WithoutRisZeroesReflectedLinks) {
  ScenarioConfig s;
  Rng rng(1);
  const auto p = place_monitor_and_jammers(rng, s);
  const auto ch = generate_channel_set(rng, s, p.monitor, p.jammers);
  const auto z = without_ris_links(ch);
  EXPECT_TRUE(z.h_ti.isZero(0.0));
  EXPECT_TRUE(z.h_ir.isZero(0.0));
  EXPECT_TRUE(z.h_ki.isZero(0.0));
  EXPECT_TRUE(z.h_im.isZero(0.0));
  EXPECT_EQ(z.h_tr, ch.h_tr);
  EXPECT_EQ(z.h_kr, ch.h_kr);
  EXPECT_NO_THROW(z.check_shapes());
}

TEST(Channels, ShapeMismatchRejected) {
  ScenarioConfig s;
  Rng rng(1);
  const auto p = place_monitor_and_jammers(rng, s);
  auto ch = generate_channel_set(rng, s, p.monitor, p.jammers);
  ch.h_ir.resize(3);
  EXPECT_THROW(ch.check_shapes(), std::invalid_argument);
  std::vector<Position3D> too_few(2);
  EXPECT_THROW(generate_channel_set(rng, s, p.monitor, too_few), std::invalid_argument);
}
