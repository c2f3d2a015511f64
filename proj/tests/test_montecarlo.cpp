#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "risjam/montecarlo.hpp"

using namespace risjam;

namespace {

TrialRecord rec(double p_j, double gamma_m, bool jam, bool mon, bool failed = false) {
  TrialRecord r;
  r.p_j = p_j;
  r.gamma_m = gamma_m;
  r.jam_success = jam;
  r.monitor_success = mon;
  r.failed = failed;
  return r;
}

void expect_same(double a, double b) {
  if (std::isnan(a)) EXPECT_TRUE(std::isnan(b));
  else EXPECT_EQ(a, b);
}

void expect_same_tables(const SweepTable& a, const SweepTable& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].scheme, b[i].scheme);
    expect_same(a[i].metrics.smp, b[i].metrics.smp);
    expect_same(a[i].metrics.sjp, b[i].metrics.sjp);
    expect_same(a[i].metrics.mean_p_j, b[i].metrics.mean_p_j);
    expect_same(a[i].metrics.mean_gamma_m_db, b[i].metrics.mean_gamma_m_db);
    EXPECT_EQ(a[i].metrics.n_trials, b[i].metrics.n_trials);
    EXPECT_EQ(a[i].metrics.n_failed, b[i].metrics.n_failed);
  }
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.values = {0.5, 2.0};
  spec.schemes = {SchemeId::BCD_PSO, SchemeId::BCD_DOMAIN, SchemeId::RANDOM_PHASE};
  spec.n_trials = 6;
  spec.base_seed = 17;
  return spec;
}

SolverSettings quick_settings() {
  SolverSettings s;
  s.solver.r_max = 5;
  s.solver.t_max = 20;
  return s;
}

}  // namespace

TEST(Seeds, DeterministicAndSpread) {
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  std::set<std::uint64_t> seen;
  for (int t = 0; t < 1000; ++t) seen.insert(trial_seed(5, t));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(trial_seed(5, 0), trial_seed(6, 0));
}

TEST(Aggregate, Definitions) {
  const std::vector<TrialRecord> rs = {
      rec(1.0, 10.0, true, false),
      rec(3.0, 30.0, true, true),
      rec(9.0, 20.0, false, true),
      rec(0.0, 1e9, false, false, true),
  };
  const auto m = aggregate(rs);
  EXPECT_EQ(m.n_trials, 3);
  EXPECT_EQ(m.n_failed, 1);
  EXPECT_DOUBLE_EQ(m.smp, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.sjp, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.mean_p_j, 2.0);
  EXPECT_NEAR(m.mean_gamma_m_db, 10.0 * std::log10(20.0), 1e-12);

  const auto none = aggregate(std::vector<TrialRecord>{rec(1.0, 1.0, false, false)});
  EXPECT_TRUE(std::isnan(none.mean_p_j));
  EXPECT_THROW(aggregate(std::vector<TrialRecord>{}), std::invalid_argument);
}

TEST(Aggregate, JammingSlack) {
  LinkBudget b;
  EXPECT_TRUE(jamming_succeeded(b.gamma_sr_th * (1.0 + 1e-12), 1.0, b));
  EXPECT_FALSE(jamming_succeeded(b.gamma_sr_th * (1.0 + 1e-6), 1.0, b));
  EXPECT_FALSE(jamming_succeeded(0.0, b.p_j_max * 1.01, b));
}

TEST(Sweep, ApplyValue) {
  const ScenarioConfig base;
  EXPECT_EQ(apply_sweep_value(base, SweepParameter::P_ST, 3.0).p_st, 3.0);
  EXPECT_EQ(apply_sweep_value(base, SweepParameter::RIS_Y, 80.0).ris.y, 80.0);
  EXPECT_EQ(apply_sweep_value(base, SweepParameter::N_ELEMENTS, 20.0).n_elements, 20);
  EXPECT_NEAR(apply_sweep_value(base, SweepParameter::GAMMA_SR_TH, -14.0).gamma_sr_th, std::pow(10.0, -1.4), 1e-15);
  for (auto p : {SweepParameter::P_ST, SweepParameter::RIS_Y, SweepParameter::N_ELEMENTS, SweepParameter::GAMMA_SR_TH})
    EXPECT_EQ(parse_sweep_parameter(sweep_parameter_name(p)), p);
}

TEST(Sweep, SpecValidation) {
  SweepSpec spec;
  EXPECT_TRUE(spec.validate().empty());
  spec.parameter = SweepParameter::N_ELEMENTS;
  spec.values = {10, 2.5, 0};
  spec.n_trials = 0;
  EXPECT_EQ(spec.validate().size(), 3u);
}

TEST(Trial, ErrorsBecomeFailedRecords) {
  ScenarioConfig s;
  s.n_elements = 0;
  const auto r = run_trial(SchemeId::BCD_PSO, s, {}, 1);
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.error.empty());
}

TEST(Trial, SchemesShareChannels) {
  // WITHOUT_RIS depends only on the direct links, which every scheme sees identically
  const ScenarioConfig s;
  const auto a = run_trial(SchemeId::WITHOUT_RIS, s, {}, 99);
  const auto b = run_trial(SchemeId::WITHOUT_RIS, s, {}, 99);
  EXPECT_EQ(a.p_j, b.p_j);
  EXPECT_NE(a.p_j, run_trial(SchemeId::WITHOUT_RIS, s, {}, 100).p_j);
}

TEST(Trial, FixedPlacementIsShared) {
  ScenarioConfig s;
  s.redraw_positions = false;
  const auto p = fixed_placement(s, 3);
  EXPECT_EQ(p.monitor, fixed_placement(s, 3).monitor);
  const auto a = run_trial(SchemeId::WITHOUT_RIS, s, {}, 5, p);
  const auto b = run_trial(SchemeId::WITHOUT_RIS, s, {}, 5, p);
  EXPECT_EQ(a.p_j, b.p_j);
}

TEST(Sweep, ParallelMatchesSerialReference) {
  const auto spec = small_spec();
  const ScenarioConfig base;
  const auto settings = quick_settings();
  const auto ref = reference::run_sweep(spec, base, settings);
  ASSERT_EQ(ref.size(), 6u);
  for (int threads : {1, 2, 4}) expect_same_tables(run_sweep(spec, base, settings, threads), ref);
}

TEST(Sweep, RecordsInCellOrder) {
  const auto spec = small_spec();
  const auto records = run_sweep_records(spec, ScenarioConfig{}, quick_settings(), 2);
  ASSERT_EQ(records.size(), 2u * 3u * 6u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto scheme = spec.schemes[(i / 6) % 3];
    EXPECT_EQ(records[i].scheme, scheme);
    EXPECT_EQ(records[i].seed, trial_seed(spec.base_seed, static_cast<int>(i % 6)));
  }
}
