#include <gtest/gtest.h>

#include "oracles.hpp"
#include "risjam/beamforming.hpp"

using namespace risjam;

namespace {

std::vector<double> thetas(const PhaseVector& v) { return {v.thetas().begin(), v.thetas().end()}; }

}  // namespace

TEST(EffectiveChannels, MatchesElementwiseSum) {
  std::mt19937_64 g(101);
  for (int rep = 0; rep < 50; ++rep) {
    const int m_t = 1 + rep % 5, n = 1 + rep % 13, k = 1 + rep % 7;
    const auto ch = oracle::random_channels(g, m_t, n, k);
    const PhaseVector v(oracle::random_phases(g, n));
    const auto eff = effective_channels(ch, v);
    const auto ref = oracle::cascade(ch, thetas(v));
    for (int m = 0; m < m_t; ++m) {
      EXPECT_LT(std::abs(eff.h_s(m) - ref.h_s[m]), 1e-12);
      EXPECT_LT(std::abs(eff.h_m(m) - ref.h_m[m]), 1e-12);
    }
    for (int q = 0; q < k; ++q) EXPECT_LT(std::abs(eff.h_i(q) - ref.h_i[q]), 1e-12);
  }
}

TEST(EffectiveChannels, PhaseSizeMismatchThrows) {
  std::mt19937_64 g(1);
  const auto ch = oracle::random_channels(g, 2, 4, 2);
  EXPECT_THROW(effective_channels(ch, PhaseVector::ones(3)), std::invalid_argument);
}

TEST(Mrt, MaximizesReceivedPowerAmongSampledBeams) {
  std::mt19937_64 g(7);
  const auto ch = oracle::random_channels(g, 4, 3, 2);
  const CVector w = mrt_st(ch, 2.0);
  EXPECT_NEAR(w.squaredNorm(), 2.0, 1e-12);
  const double best = received_power(ch.h_tr, w);
  EXPECT_NEAR(best, 2.0 * ch.h_tr.squaredNorm(), 1e-12);
  for (int i = 0; i < 2000; ++i) {
    CVector u(4);
    for (int m = 0; m < 4; ++m) u(m) = oracle::cn(g);
    u *= std::sqrt(2.0) / u.norm();
    EXPECT_LE(received_power(ch.h_tr, u), best * (1.0 + 1e-12));
  }
}

TEST(Mrt, ZeroChannelThrows) {
  std::mt19937_64 g(7);
  auto ch = oracle::random_channels(g, 2, 3, 2);
  ch.h_tr.setZero();
  EXPECT_THROW(mrt_st(ch, 1.0), std::domain_error);
  EffectiveChannels eff{CRowVector::Ones(2), CRowVector::Zero(2), CRowVector::Ones(2)};
  EXPECT_THROW(mrt_lj_direction(eff), std::domain_error);
}

TEST(LinkMetrics, MatchesExplicitBeamformers) {
  std::mt19937_64 g(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto ch = oracle::random_channels(g, 4, 8, 6, 1e-8);
    const PhaseVector v(oracle::random_phases(g, 8));
    LinkBudget b;
    b.p_st = 0.5 + rep * 0.01;
    const double p_j = 0.01 * rep;
    const auto got = link_metrics(ch, v, b, p_j);
    const auto ref = oracle::metrics(ch, thetas(v), b.p_st, p_j, b.sigma2_sr, b.sigma2_m);
    EXPECT_LT(oracle::rel_err(got.gamma_sr, ref.gamma_sr), 1e-10);
    EXPECT_LT(oracle::rel_err(got.gamma_m, ref.gamma_m), 1e-10);
  }
  const auto ch = oracle::random_channels(g, 2, 2, 2);
  EXPECT_THROW(link_metrics(ch, PhaseVector::ones(2), LinkBudget{}, -1.0), std::invalid_argument);
}

TEST(PowerBound, TightAndClamped) {
  std::mt19937_64 g(29);
  for (int rep = 0; rep < 200; ++rep) {
    const auto ch = oracle::random_channels(g, 4, 10, 6, 1e-8);
    const PhaseVector v(oracle::random_phases(g, 10));
    LinkBudget b;
    const double p = pj_lower_bound(ch, v, b);
    ASSERT_GT(p, 0.0);
    EXPECT_LT(oracle::rel_err(link_metrics(ch, v, b, p).gamma_sr, b.gamma_sr_th), 1e-9);
    // any less power leaves SR above the threshold
    EXPECT_GT(link_metrics(ch, v, b, 0.99 * p).gamma_sr, b.gamma_sr_th);
  }
  // signal already below threshold without jamming
  const auto weak = oracle::random_channels(g, 2, 3, 2, 1e-16);
  EXPECT_EQ(pj_lower_bound(weak, PhaseVector::ones(3), LinkBudget{}), 0.0);
}
