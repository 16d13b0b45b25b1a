#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "apcss/calibration.hpp"
#include "apcss/errors.hpp"
#include "apcss/simulation.hpp"

namespace apcss {
namespace {

struct Moments {
  double mean = 0;
  double var = 0;
  double median = 0;
};

Moments draw_moments(ErrorDistribution dist, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = sample_error(dist, rng);
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(n);
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= static_cast<double>(n - 1);
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n / 2), x.end());
  m.median = x[n / 2];
  return m;
}

constexpr std::size_t kDraws = 1'000'000;

TEST(SampleError, NormalMoments) {
  const Moments m = draw_moments(ErrorDistribution::Normal, kDraws, 1);
  EXPECT_NEAR(m.mean, 0.0, 0.01);
  EXPECT_NEAR(m.var, 1.0, 0.01);
}

TEST(SampleError, UniformMoments) {
  const Moments m = draw_moments(ErrorDistribution::Uniform, kDraws, 2);
  EXPECT_NEAR(m.mean, 0.0, 0.01);
  EXPECT_NEAR(m.var, 4.0 / 3.0, 0.01);
}

TEST(SampleError, ExponentialMoments) {
  const Moments m = draw_moments(ErrorDistribution::Exponential, kDraws, 3);
  EXPECT_NEAR(m.mean, 1.0, 0.01);
  EXPECT_NEAR(m.median, std::log(2.0), 0.01);
}

TEST(SampleError, DoubleExponentialMoments) {
  const Moments m = draw_moments(ErrorDistribution::DoubleExponential, kDraws, 4);
  EXPECT_NEAR(m.mean, 0.0, 0.01);
  EXPECT_NEAR(m.var, 1.0, 0.01);
}

TEST(SampleError, CauchyMedian) {
  const Moments m = draw_moments(ErrorDistribution::Cauchy, kDraws, 5);
  EXPECT_NEAR(m.median, 0.0, 0.01);
}

TEST(GenerateDataset, ProductInteraction) {
  const LayoutDims d{3, 2, 1};
  EffectSpec spec{{-1, 0, 1}, {-1, 1}, ProductInteraction{1.0}, ErrorDistribution::Normal};
  const auto gamma = interaction_effects(d, spec);
  EXPECT_EQ(gamma[0 * 2 + 0], 1.0);   // gamma_11
  EXPECT_EQ(gamma[2 * 2 + 1], 1.0);   // gamma_32
  EXPECT_EQ(gamma[1 * 2 + 0], 0.0);   // gamma_2j
  EXPECT_EQ(gamma[1 * 2 + 1], 0.0);
  const DataTable mean = expected_means(d, spec);
  EXPECT_EQ(mean(0, 0, 0), -1 + -1 + 1);
  EXPECT_EQ(mean(2, 1, 0), 1 + 1 + 1);
}

TEST(GenerateDataset, SpecificInteractionBlock) {
  const LayoutDims d{4, 6, 2};
  EffectSpec spec{std::vector<double>(4, 0.0), std::vector<double>(6, 0.0),
                  SpecificInteraction{2.0, 0, 0}, ErrorDistribution::Uniform};
  const auto gamma = interaction_effects(d, spec);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      double expected = 0.0;
      if (i < 2 && j < 2) expected = (i == j) ? 2.0 : -2.0;
      EXPECT_EQ(gamma[i * 6 + j], expected) << i << "," << j;
    }
  spec.interaction = SpecificInteraction{1.0, 3, 0};
  EXPECT_THROW(spec.validate(d), InvalidArgument);
  spec.interaction = SpecificInteraction{1.0, 2, 4};
  EXPECT_NO_THROW(spec.validate(d));
}

TEST(GenerateDataset, NoEffectsIsZeroTable) {
  const LayoutDims d{3, 3, 2};
  const EffectSpec spec{std::vector<double>(3, 0.0), std::vector<double>(3, 0.0),
                        NoInteraction{}, ErrorDistribution::Normal};
  EXPECT_EQ(expected_means(d, spec), DataTable::constant(d, 0.0));
}

TEST(GenerateDataset, AddsErrorsInOrder) {
  const LayoutDims d{2, 2, 2};
  const EffectSpec spec{{1, 2}, {10, 20}, NoInteraction{}, ErrorDistribution::Cauchy};
  Rng a(77), b(77);
  const DataTable t = generate_dataset(d, spec, a);
  const DataTable mean = expected_means(d, spec);
  for (std::size_t n = 0; n < d.total(); ++n) {
    EXPECT_EQ(t.values()[n], mean.values()[n] + sample_error(ErrorDistribution::Cauchy, b));
  }
}

TEST(GenerateDataset, DimensionMismatch) {
  const EffectSpec spec{{1, 2}, {1, 2, 3}, NoInteraction{}, ErrorDistribution::Normal};
  Rng rng(1);
  EXPECT_THROW(generate_dataset({3, 3, 2}, spec, rng), InvalidArgument);
}

PowerStudyConfig small_config() {
  PowerStudyConfig c;
  c.dims = {3, 3, 2};
  c.alpha_effects = {-1, 0, 1};
  c.beta_effects = {-1, 0, 1};
  c.family = InteractionFamily::Product;
  c.error = ErrorDistribution::Normal;
  c.magnitudes = {0.0, 1.5, 3.0};
  c.tests = {TestKind::F, TestKind::RT, TestKind::ART, TestKind::APCSSA, TestKind::APCSSM};
  c.alpha = 0.05;
  c.n_sims = 300;
  c.seed = 12;
  return c;
}

CalibrationSet small_calibrations(const LayoutDims& d) {
  return {calibrate_null(d, AlignmentMethod::Average, 2000, 2000, 1),
          calibrate_null(d, AlignmentMethod::Median, 2000, 2000, 1)};
}

TEST(PowerStudy, DeterministicAcrossRunsAndWorkers) {
  const PowerStudyConfig c = small_config();
  const CalibrationSet cals = small_calibrations(c.dims);
  const std::string a = power_curves_csv(run_power_study(c, cals, 1));
  const std::string b = power_curves_csv(run_power_study(c, cals, 1));
  const std::string w = power_curves_csv(run_power_study(c, cals, 3));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, w);
}

TEST(PowerStudy, CurvesAreWellFormedAndRise) {
  const PowerStudyConfig c = small_config();
  const auto curves = run_power_study(c, small_calibrations(c.dims));
  ASSERT_EQ(curves.size(), c.tests.size());
  for (const auto& curve : curves) {
    ASSERT_EQ(curve.points.size(), 3u);
    for (const auto& p : curve.points) {
      EXPECT_EQ(p.n_sims, 300u);
      EXPECT_GE(p.power, 0.0);
      EXPECT_LE(p.power, 1.0);
      EXPECT_EQ(p.power, static_cast<double>(p.rejections) / 300.0);
    }
    EXPECT_GT(curve.points.back().power, curve.points.front().power) << to_string(curve.test);
  }
}

TEST(PowerStudy, CsvFormat) {
  PowerCurve curve;
  curve.test = TestKind::APCSSM;
  curve.points = {{0.0, 10, 1, 0.1}, {2.5, 10, 7, 0.7}};
  EXPECT_EQ(power_curves_csv({curve}),
            "test,magnitude,n_sims,rejections,power\nAPCSSM,0,10,1,0.1\nAPCSSM,2.5,10,7,0.7\n");
}

TEST(PowerStudy, MissingCalibration) {
  PowerStudyConfig c = small_config();
  CalibrationSet cals = small_calibrations(c.dims);
  cals.median.reset();
  EXPECT_THROW(run_power_study(c, cals), CalibrationMissing);
  c.tests = {TestKind::APCSSA};
  EXPECT_NO_THROW(run_power_study(c, cals));
}

TEST(PowerStudy, CalibrationForWrongDims) {
  PowerStudyConfig c = small_config();
  const CalibrationSet cals = small_calibrations({3, 3, 3});
  c.tests = {TestKind::APCSSA};
  EXPECT_THROW(run_power_study(c, cals), CalibrationMismatch);
}

TEST(PowerStudy, FTestsNeedReplication) {
  PowerStudyConfig c = small_config();
  c.dims.reps = 1;
  c.tests = {TestKind::ART};
  EXPECT_THROW(run_power_study(c, {}), UnsupportedDesign);
}

TEST(PowerStudy, DefaultGrid) {
  const auto g = default_magnitude_grid(4.0);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[1], 0.5);
  EXPECT_EQ(g.back(), 4.0);
}

}  // namespace
}  // namespace apcss
