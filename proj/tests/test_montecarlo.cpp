#include <gtest/gtest.h>

#include <cmath>

#include "pdcsim/montecarlo.hpp"
#include "pdcsim/oracle.hpp"

using namespace pdcsim;

namespace {

ScenarioConfig quick_small(std::size_t n = 2000) {
  ScenarioConfig c;
  c.r_d = 1000.0;
  c.n_m = 25;
  c.realizations = n;
  c.seed = 42;
  return c;
}

ScenarioConfig quick_large(std::size_t n = 2000) {
  ScenarioConfig c;
  c.setup = Setup::LargeDisaster;
  c.r_d = 10000.0;
  c.realizations = n;
  c.seed = 43;
  return c;
}

}  // namespace

TEST(EstimateCoverage, RayleighClosedForm) {
  const double d = 67206.0;
  const ScenarioConfig cfg = rayleigh_oracle_config(d, 20000, 3);
  const double expected = rayleigh_closed_form(cfg, d);
  EXPECT_NEAR(expected, 0.36831709179627714, 1e-12);
  const CoverageEstimate e = estimate_coverage(cfg);
  EXPECT_NEAR(e.p_hat, expected, 3.0 * std::sqrt(expected * (1 - expected) / 20000.0));
  EXPECT_DOUBLE_EQ(e.path_shares[PathType::UserTbs], 1.0);
}

TEST(EstimateCoverage, RayleighAtOtherDistances) {
  for (double d : {30000.0, 50000.0, 90000.0}) {
    const ScenarioConfig cfg = rayleigh_oracle_config(d, 20000, 5);
    const double expected = rayleigh_closed_form(cfg, d);
    const CoverageEstimate e = estimate_coverage(cfg);
    EXPECT_NEAR(e.p_hat, expected, 3.0 * std::sqrt(expected * (1 - expected) / 20000.0) + 1e-9) << d;
  }
}

TEST(EstimateCoverage, NoInfrastructureMeansZero) {
  ScenarioConfig cfg = quick_small(500);
  cfg.n_m = 0;
  cfg.abs_enabled = false;
  cfg.tbs_density = 0.0;
  const CoverageEstimate e = estimate_coverage(cfg);
  EXPECT_EQ(e.p_hat, 0.0);
  EXPECT_EQ(e.path_shares.outage, 1.0);

  ScenarioConfig big = quick_large(500);
  big.abs_enabled = false;
  big.satellite_enabled = false;
  big.tbs_density = 0.0;
  EXPECT_EQ(estimate_coverage(big).p_hat, 0.0);
}

TEST(EstimateCoverage, BitIdenticalAcrossThreadCounts) {
  for (const auto& cfg : {quick_small(), quick_large()}) {
    const CoverageEstimate one = estimate_coverage(cfg, 1);
    for (std::size_t t : {2u, 3u, 8u}) EXPECT_EQ(estimate_coverage(cfg, t), one) << t;
    EXPECT_EQ(estimate_coverage(cfg, 0), one);
  }
}

TEST(EstimateCoverage, SeedChangesResult) {
  auto a = quick_small();
  auto b = a;
  b.seed = a.seed + 1;
  EXPECT_NE(estimate_coverage(a).covered, estimate_coverage(b).covered);
}

TEST(EstimateCoverage, PolicyOrderingAtEqualSeeds) {
  for (auto base : {quick_small(1500), quick_large(1500)}) {
    for (double r_d : {1000.0, 5000.0}) {
      base.r_d = r_d;
      auto n = base, s = base, a = base;
      n.interference = InterferenceMode::None;
      s.interference = InterferenceMode::SameTier;
      a.interference = InterferenceMode::AllTier;
      const auto en = estimate_coverage(n), es = estimate_coverage(s), ea = estimate_coverage(a);
      EXPECT_GE(en.covered, es.covered);
      EXPECT_GE(es.covered, ea.covered);
      EXPECT_EQ(en.path_counts, es.path_counts);
      EXPECT_EQ(es.path_counts, ea.path_counts);
    }
  }
}

TEST(EstimateCoverage, SharesSumToOneAndIntervalConsistent) {
  for (const auto& cfg : {quick_small(), quick_large()}) {
    const CoverageEstimate e = estimate_coverage(cfg);
    double sum = e.path_shares.outage;
    for (double x : e.path_shares.by_type) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(e.path_counts.total(), e.n_realizations);
    EXPECT_GE(e.p_hat, 0.0);
    EXPECT_LE(e.p_hat, 1.0);
    EXPECT_DOUBLE_EQ(e.ci95_half_width, 1.96 * std::sqrt(e.p_hat * (1 - e.p_hat) / static_cast<double>(e.n_realizations)));
    EXPECT_EQ(e.master_seed, cfg.seed);
  }
}

TEST(EstimateCoverage, DoublingNStaysWithinSixStandardErrors) {
  for (std::uint64_t family = 0; family < 4; ++family) {
    auto cfg = family % 2 ? quick_large(1000) : quick_small(1000);
    cfg.seed = 1000 + family;
    const auto e1 = estimate_coverage(cfg);
    cfg.realizations *= 2;
    const auto e2 = estimate_coverage(cfg);
    EXPECT_LE(std::abs(e2.p_hat - e1.p_hat), 6.0 * std::max(e1.std_error(), 1.0 / 1000.0));
  }
}

TEST(FillInterval, ClopperPearsonKnownValues) {
  CoverageEstimate e;
  e.n_realizations = 10;
  e.covered = 0;
  fill_interval(e, CiMethod::Exact);
  EXPECT_EQ(e.ci95_low, 0.0);
  EXPECT_NEAR(e.ci95_high, 1.0 - std::pow(0.025, 0.1), 1e-12);
  e.covered = 10;
  fill_interval(e, CiMethod::Exact);
  EXPECT_NEAR(e.ci95_low, std::pow(0.025, 0.1), 1e-12);
  EXPECT_EQ(e.ci95_high, 1.0);
  e.n_realizations = 100;
  e.covered = 50;
  fill_interval(e, CiMethod::Exact);
  EXPECT_NEAR(e.ci95_low, 0.3983, 1e-4);
  EXPECT_NEAR(e.ci95_high, 0.6017, 1e-4);
}

TEST(FillInterval, NormalClampedToUnitInterval) {
  CoverageEstimate e;
  e.n_realizations = 20;
  e.covered = 19;
  fill_interval(e, CiMethod::Normal);
  EXPECT_LE(e.ci95_high, 1.0);
  EXPECT_GE(e.ci95_low, 0.0);
}

TEST(EstimateCoverage, InvalidConfigThrows) {
  auto cfg = quick_small();
  cfg.tau_access = -1.0;
  EXPECT_THROW(estimate_coverage(cfg), InvalidArgument);
}

TEST(RunTrial, DeterministicPerSeed) {
  const auto cfg = quick_small();
  const auto rules = AdjacencyRules::for_setup(cfg.setup);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = run_trial(cfg, rules, s);
    const auto b = run_trial(cfg, rules, s);
    EXPECT_EQ(a.path, b.path);
    EXPECT_EQ(a.covered, b.covered);
  }
}

TEST(OracleSuite, AllChecksPass) {
  for (const auto& c : run_oracle_suite()) EXPECT_TRUE(c.pass) << c.name << " observed " << c.observed;
}
