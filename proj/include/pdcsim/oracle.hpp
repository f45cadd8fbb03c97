#pragma once

// Closed-form self checks for the samplers and the coverage engine. Each
// check compares a Monte Carlo estimate against an analytic value that does
// not go through the code path under test.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pdcsim/fading.hpp"
#include "pdcsim/geometry.hpp"
#include "pdcsim/montecarlo.hpp"

namespace pdcsim {

struct OracleCheck {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline OracleCheck make_check(std::string name, double observed, double expected, double tolerance) {
  return {std::move(name), observed, expected, tolerance, std::abs(observed - expected) <= tolerance};
}

// Distance of the noise-limited Rayleigh test link: exp(-tau sigma^2 d^alpha / p)
// evaluates to e^-1 here.
inline double rayleigh_oracle_distance(double p = 10.0, double alpha = 2.9, double tau = 0.1, double noise = 1e-12) {
  return std::pow(p / (tau * noise), 1.0 / alpha);
}

// Single TBS pinned at `distance` from a user at the origin, no aerial node,
// noise only, Rayleigh fading.
inline ScenarioConfig rayleigh_oracle_config(double distance = 67206.0, std::size_t n = 20000, std::uint64_t seed = 1) {
  ScenarioConfig cfg;
  cfg.setup = Setup::SmallDisaster;
  cfg.r_d = 1000.0;
  cfg.n_m = 0;
  cfg.abs_enabled = false;
  cfg.pinned_tbs = {distance};
  cfg.user_radius = 0.0;
  cfg.interference = InterferenceMode::None;
  cfg.realizations = n;
  cfg.seed = seed;
  return cfg;
}

inline double rayleigh_closed_form(const ScenarioConfig& cfg, double distance) {
  const TierParams& t = cfg.tier(Tier::TBS);
  return std::exp(-cfg.tau_access * cfg.noise * std::pow(distance, t.alpha_los) / t.tx_power);
}

inline OracleCheck check_rayleigh_coverage(std::size_t n = 20000, std::uint64_t seed = 1, std::size_t threads = 1) {
  const double d = 67206.0;
  const ScenarioConfig cfg = rayleigh_oracle_config(d, n, seed);
  const double expected = rayleigh_closed_form(cfg, d);
  const CoverageEstimate e = estimate_coverage(cfg, threads);
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
  return make_check("noise-limited Rayleigh coverage vs exp(-tau*N*d^a/p)", e.p_hat, expected, 3.0 * se);
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

template <typename Draw>
Moments sample_moments(std::size_t n, Draw&& draw) {
  // Welford.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw();
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  return {mean, n > 1 ? m2 / static_cast<double>(n - 1) : 0.0};
}

inline std::vector<OracleCheck> check_fading_moments(std::size_t n = 1'000'000, std::uint64_t seed = 7) {
  std::vector<OracleCheck> out;
  for (double m : {1.0, 2.0, 3.0}) {
    RandomStream rng(substream_seed(seed, static_cast<std::uint64_t>(m)));
    const Moments mo = sample_moments(n, [&] { return nakagami_power_gain(m, rng); });
    const std::string tag = "Nakagami m=" + std::to_string(static_cast<int>(m));
    out.push_back(make_check(tag + " mean", mo.mean, 1.0, 0.005));
    out.push_back(make_check(tag + " variance", mo.variance, 1.0 / m, 0.02 / m));
  }
  const ShadowedRicianParams sr{};
  RandomStream rng(substream_seed(seed, 100));
  const Moments mo = sample_moments(n, [&] { return shadowed_rician_power_gain(sr, rng); });
  out.push_back(make_check("shadowed Rician mean vs 2*b0 + omega", mo.mean, sr.mean(), 0.02 * sr.mean()));
  return out;
}

inline std::vector<OracleCheck> check_geometry(std::size_t n = 100'000, std::uint64_t seed = 11) {
  std::vector<OracleCheck> out;
  RandomStream rng(seed);
  const DiskRegion disk({}, 1000.0);
  double sum = 0.0;
  std::size_t inner = 0;
  for (const auto& p : sample_uniform_disk(rng, disk, n)) {
    const double r = p.horizontal_norm();
    sum += r;
    inner += r < 500.0 ? 1 : 0;
  }
  out.push_back(make_check("uniform disk mean radius vs 2r/3", sum / static_cast<double>(n), 2000.0 / 3.0, 2000.0 / 3.0 * 0.01));
  out.push_back(make_check("uniform disk fraction inside r/2 vs 1/4", static_cast<double>(inner) / static_cast<double>(n), 0.25, 0.0025));

  const std::size_t fields = n / 10;
  double count = 0.0;
  for (std::size_t i = 0; i < fields; ++i) count += static_cast<double>(sample_tbs_field(rng, 1000.0, 4000.0, 10.0).size());
  const double expected = 10.0 * std::numbers::pi * 15.0;
  out.push_back(make_check("TBS field mean count vs density*area", count / static_cast<double>(fields), expected, 0.02 * expected));
  return out;
}

inline std::vector<OracleCheck> run_oracle_suite(std::size_t threads = 1) {
  std::vector<OracleCheck> out{check_rayleigh_coverage(20000, 1, threads)};
  for (auto& c : check_fading_moments()) out.push_back(std::move(c));
  for (auto& c : check_geometry()) out.push_back(std::move(c));
  return out;
}

}  // namespace pdcsim
