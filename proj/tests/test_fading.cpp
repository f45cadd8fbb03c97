#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "pdcsim/fading.hpp"
#include "pdcsim/oracle.hpp"

using namespace pdcsim;

namespace {

// Shadowed-Rician power density (Abdi et al. form), evaluated independently
// of the sampler: f(x) = a exp(-b x) 1F1(m; 1; d x).
double shadowed_rician_pdf(const ShadowedRicianParams& p, double x) {
  const double two_b0 = 2.0 * p.b0;
  const double a = std::pow(two_b0 * p.m_sr / (two_b0 * p.m_sr + p.omega), p.m_sr) / two_b0;
  const double b = 1.0 / two_b0;
  const double d = p.omega / (two_b0 * (two_b0 * p.m_sr + p.omega));
  return a * std::exp(-b * x) * boost::math::hypergeometric_1F1(p.m_sr, 1.0, d * x);
}

template <typename F>
double integrate(F f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-12);
}

}  // namespace

TEST(ShadowedRicianOracle, QuadratureMeanIsTwoB0PlusOmega) {
  const ShadowedRicianParams p{};
  const double mass = integrate([&](double x) { return shadowed_rician_pdf(p, x); }, 0.0, 40.0);
  const double mean = integrate([&](double x) { return x * shadowed_rician_pdf(p, x); }, 0.0, 40.0);
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_NEAR(mean, 1.087, 1e-9);
}

TEST(ShadowedRician, EmpiricalCdfMatchesQuadrature) {
  const ShadowedRicianParams p{};
  RandomStream rng(21);
  const int n = 400000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = shadowed_rician_power_gain(p, rng);
  for (double t : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    const double cdf = integrate([&](double x) { return shadowed_rician_pdf(p, x); }, 0.0, t);
    const double emp = static_cast<double>(std::count_if(xs.begin(), xs.end(), [t](double x) { return x <= t; })) / n;
    EXPECT_NEAR(emp, cdf, 4.0 * std::sqrt(cdf * (1 - cdf) / n)) << "t = " << t;
  }
}

TEST(ShadowedRician, MeanWithinTwoPercent) {
  const ShadowedRicianParams p{};
  RandomStream rng(22);
  const auto mo = sample_moments(1'000'000, [&] { return shadowed_rician_power_gain(p, rng); });
  EXPECT_NEAR(mo.mean, 1.087, 0.02 * 1.087);
}

TEST(ShadowedRician, NoLosComponentIsExponential) {
  const ShadowedRicianParams p{0.126, 10.1, 0.0};
  RandomStream rng(23);
  const int n = 1'000'000;
  int above = 0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = shadowed_rician_power_gain(p, rng);
    sum += g;
    above += g > 2 * p.b0;
  }
  EXPECT_NEAR(sum / n, 0.252, 0.01 * 0.252);
  const double pe = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(above) / n, pe, 3.0 * std::sqrt(pe * (1 - pe) / n));
}

TEST(ShadowedRician, LargeShapeApproachesRicianMean) {
  const ShadowedRicianParams p{0.126, 1e4, 0.835};
  RandomStream rng(24);
  const auto mo = sample_moments(1'000'000, [&] { return shadowed_rician_power_gain(p, rng); });
  EXPECT_NEAR(mo.mean, 1.087, 0.02 * 1.087);
  // Fixed LoS power: variance of |A|^2 is 4 b0^2 + 4 b0 omega.
  EXPECT_NEAR(mo.variance, 4 * 0.126 * 0.126 + 4 * 0.126 * 0.835, 0.02);
}

TEST(ShadowedRician, RejectsInvalidParams) {
  RandomStream rng(1);
  EXPECT_THROW(shadowed_rician_power_gain({0.0, 10.1, 0.835}, rng), InvalidArgument);
  EXPECT_THROW(shadowed_rician_power_gain({0.126, 0.0, 0.835}, rng), InvalidArgument);
  EXPECT_THROW(shadowed_rician_power_gain({0.126, 10.1, -0.1}, rng), InvalidArgument);
}

TEST(Nakagami, RayleighTail) {
  RandomStream rng(31);
  const int n = 1'000'000;
  int above = 0;
  for (int i = 0; i < n; ++i) above += nakagami_power_gain(1.0, rng) > 1.0;
  const double pe = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(above) / n, pe, 3.0 * std::sqrt(pe * (1 - pe) / n));
}

TEST(Nakagami, UnitMeanAndVariance) {
  for (double m : {1.0, 2.0, 3.0}) {
    RandomStream rng(40 + static_cast<std::uint64_t>(m));
    const auto mo = sample_moments(1'000'000, [&] { return nakagami_power_gain(m, rng); });
    EXPECT_NEAR(mo.mean, 1.0, 0.005) << "m = " << m;
    EXPECT_NEAR(mo.variance, 1.0 / m, 0.02 / m) << "m = " << m;
  }
}

TEST(Nakagami, HalfShapeAllowed) {
  RandomStream rng(50);
  const auto mo = sample_moments(400000, [&] { return nakagami_power_gain(0.5, rng); });
  EXPECT_NEAR(mo.mean, 1.0, 0.01);
  EXPECT_THROW(nakagami_power_gain(0.49, rng), InvalidArgument);
}

TEST(Samplers, NonNegativeFiniteAndDeterministic) {
  RandomStream a(60), b(60);
  const ShadowedRicianParams p{};
  for (int i = 0; i < 100000; ++i) {
    const double x = nakagami_power_gain(2.0, a);
    const double y = shadowed_rician_power_gain(p, a);
    ASSERT_TRUE(std::isfinite(x) && x >= 0.0);
    ASSERT_TRUE(std::isfinite(y) && y >= 0.0);
    ASSERT_EQ(x, nakagami_power_gain(2.0, b));
    ASSERT_EQ(y, shadowed_rician_power_gain(p, b));
  }
}
