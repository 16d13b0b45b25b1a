#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apcss/layout.hpp"
#include "apcss/null_calibration.hpp"
#include "apcss/random.hpp"

namespace apcss {

/// Error laws used in the power study; parameters are fixed.
enum class ErrorDistribution {
  Normal,             // N(0, 1)
  Uniform,            // U(-2, 2)
  Exponential,        // Exp(1), not centered
  DoubleExponential,  // Laplace(0, 1/sqrt(2)), unit variance
  Cauchy,             // Cauchy(0, 1)
};

std::string to_string(ErrorDistribution dist);
ErrorDistribution parse_error_distribution(const std::string& text);

double sample_error(ErrorDistribution dist, Rng& rng);

struct NoInteraction {};

/// gamma(i, j) = lambda * alpha_i * beta_j
struct ProductInteraction {
  double lambda = 0.0;
};

/// [[c, -c], [-c, c]] embedded with its top-left corner at
/// (row_offset, col_offset), zero-based; zero elsewhere.
struct SpecificInteraction {
  double c = 0.0;
  std::size_t row_offset = 0;
  std::size_t col_offset = 0;
};

using Interaction = std::variant<NoInteraction, ProductInteraction, SpecificInteraction>;

struct EffectSpec {
  std::vector<double> alpha;  // row-factor main effects, length I
  std::vector<double> beta;   // column-factor main effects, length J
  Interaction interaction = NoInteraction{};
  ErrorDistribution error = ErrorDistribution::Normal;

  /// Throws InvalidArgument if vector lengths or the specific block do not fit.
  void validate(const LayoutDims& dims) const;
};

/// gamma(i, j) laid out [i * J + j].
std::vector<double> interaction_effects(const LayoutDims& dims, const EffectSpec& spec);

/// alpha_i + beta_j + gamma_ij in every replicate: the noiseless table.
DataTable expected_means(const LayoutDims& dims, const EffectSpec& spec);

/// Noiseless table plus one error draw per observation, drawn in (i, j, k)
/// order.
DataTable generate_dataset(const LayoutDims& dims, const EffectSpec& spec, Rng& rng);

enum class TestKind { F, RT, ART, APCSSA, APCSSM };

std::string to_string(TestKind test);
TestKind parse_test_kind(const std::string& text);

enum class InteractionFamily { Product, Specific };

/// One power study: the effect family is scaled by each magnitude in turn
/// (lambda for Product, c for Specific).
struct PowerStudyConfig {
  LayoutDims dims;
  std::vector<double> alpha_effects;
  std::vector<double> beta_effects;
  InteractionFamily family = InteractionFamily::Product;
  std::size_t row_offset = 0;  // Specific only, zero-based
  std::size_t col_offset = 0;
  ErrorDistribution error = ErrorDistribution::Normal;
  std::vector<double> magnitudes;
  std::vector<TestKind> tests;
  double alpha = 0.05;
  std::uint64_t n_sims = 0;
  std::uint64_t seed = 0;

  /// Effect spec at one magnitude of the family.
  EffectSpec effect_at(double magnitude) const;

  void validate() const;
};

/// `count` evenly spaced values from 0 to `max_magnitude` inclusive.
std::vector<double> default_magnitude_grid(double max_magnitude, std::size_t count = 9);

struct PowerPoint {
  double magnitude = 0.0;
  std::uint64_t n_sims = 0;
  std::uint64_t rejections = 0;
  double power = 0.0;
};

struct PowerCurve {
  TestKind test = TestKind::F;
  LayoutDims dims;
  double alpha = 0.05;
  std::vector<PowerPoint> points;
};

/// Calibrations keyed by alignment method; APCSSA needs `average`,
/// APCSSM needs `median`.
struct CalibrationSet {
  std::optional<NullCalibration> average;
  std::optional<NullCalibration> median;
};

/// Simulates `n_sims` datasets per magnitude and records each test's
/// rejection count. Replicate r draws the same errors at every magnitude and
/// every test sees the same dataset. Results do not depend on `workers`
/// (0 = all cores).
///
/// Throws CalibrationMissing / CalibrationMismatch for APC tests without a
/// matching calibration and UnsupportedDesign for F-based tests with K = 1.
std::vector<PowerCurve> run_power_study(const PowerStudyConfig& config,
                                        const CalibrationSet& calibrations,
                                        std::size_t workers = 0);

/// CSV with header `test,magnitude,n_sims,rejections,power`.
std::string power_curves_csv(const std::vector<PowerCurve>& curves);

}  // namespace apcss
