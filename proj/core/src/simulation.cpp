#include "apcss/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "apcss/apc.hpp"
#include "apcss/calibration.hpp"
#include "apcss/competitors.hpp"
#include "apcss/errors.hpp"
#include "apcss/format.hpp"
#include "apcss/parallel.hpp"

namespace apcss {
namespace {

constexpr std::uint64_t kPowerDomain = 3;

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string to_string(ErrorDistribution dist) {
  switch (dist) {
    case ErrorDistribution::Normal: return "normal";
    case ErrorDistribution::Uniform: return "uniform";
    case ErrorDistribution::Exponential: return "exponential";
    case ErrorDistribution::DoubleExponential: return "double_exponential";
    case ErrorDistribution::Cauchy: return "cauchy";
  }
  return "unknown";
}

ErrorDistribution parse_error_distribution(const std::string& text) {
  const std::string s = lowercase(text);
  if (s == "normal") return ErrorDistribution::Normal;
  if (s == "uniform") return ErrorDistribution::Uniform;
  if (s == "exponential") return ErrorDistribution::Exponential;
  if (s == "double_exponential" || s == "laplace") return ErrorDistribution::DoubleExponential;
  if (s == "cauchy") return ErrorDistribution::Cauchy;
  throw InvalidArgument("unknown error distribution '" + text + "'");
}

double sample_error(ErrorDistribution dist, Rng& rng) {
  switch (dist) {
    case ErrorDistribution::Normal:
      return standard_normal(rng);
    case ErrorDistribution::Uniform:
      return -2.0 + 4.0 * rng.uniform_open();
    case ErrorDistribution::Exponential:
      return -std::log(rng.uniform_open());
    case ErrorDistribution::DoubleExponential: {
      const double magnitude = -std::log(rng.uniform_open()) / std::numbers::sqrt2;
      return rng.uniform_open() < 0.5 ? -magnitude : magnitude;
    }
    case ErrorDistribution::Cauchy:
      return std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
  }
  return 0.0;
}

void EffectSpec::validate(const LayoutDims& dims) const {
  dims.validate();
  if (alpha.size() != dims.rows) {
    throw InvalidArgument("alpha has " + std::to_string(alpha.size()) +
                          " entries, layout has I = " + std::to_string(dims.rows));
  }
  if (beta.size() != dims.cols) {
    throw InvalidArgument("beta has " + std::to_string(beta.size()) +
                          " entries, layout has J = " + std::to_string(dims.cols));
  }
  if (const auto* s = std::get_if<SpecificInteraction>(&interaction)) {
    if (s->row_offset + 2 > dims.rows || s->col_offset + 2 > dims.cols) {
      throw InvalidArgument("specific interaction block at (" +
                            std::to_string(s->row_offset + 1) + ", " +
                            std::to_string(s->col_offset + 1) + ") does not fit in " +
                            dims.to_string());
    }
  }
}

std::vector<double> interaction_effects(const LayoutDims& dims, const EffectSpec& spec) {
  spec.validate(dims);
  std::vector<double> gamma(dims.rows * dims.cols, 0.0);
  if (const auto* p = std::get_if<ProductInteraction>(&spec.interaction)) {
    for (std::size_t i = 0; i < dims.rows; ++i)
      for (std::size_t j = 0; j < dims.cols; ++j)
        gamma[i * dims.cols + j] = p->lambda * spec.alpha[i] * spec.beta[j];
  } else if (const auto* s = std::get_if<SpecificInteraction>(&spec.interaction)) {
    const std::size_t r = s->row_offset;
    const std::size_t c = s->col_offset;
    gamma[r * dims.cols + c] = s->c;
    gamma[r * dims.cols + c + 1] = -s->c;
    gamma[(r + 1) * dims.cols + c] = -s->c;
    gamma[(r + 1) * dims.cols + c + 1] = s->c;
  }
  return gamma;
}

DataTable expected_means(const LayoutDims& dims, const EffectSpec& spec) {
  const std::vector<double> gamma = interaction_effects(dims, spec);
  std::vector<double> values(dims.total());
  for (std::size_t i = 0; i < dims.rows; ++i)
    for (std::size_t j = 0; j < dims.cols; ++j)
      for (std::size_t k = 0; k < dims.reps; ++k)
        values[flat_index(dims, i, j, k)] =
            spec.alpha[i] + spec.beta[j] + gamma[i * dims.cols + j];
  return DataTable(dims, std::move(values));
}

DataTable generate_dataset(const LayoutDims& dims, const EffectSpec& spec, Rng& rng) {
  const DataTable means = expected_means(dims, spec);
  std::vector<double> values(means.values().begin(), means.values().end());
  for (auto& v : values) v += sample_error(spec.error, rng);
  return DataTable(dims, std::move(values));
}

std::string to_string(TestKind test) {
  switch (test) {
    case TestKind::F: return "F";
    case TestKind::RT: return "RT";
    case TestKind::ART: return "ART";
    case TestKind::APCSSA: return "APCSSA";
    case TestKind::APCSSM: return "APCSSM";
  }
  return "unknown";
}

TestKind parse_test_kind(const std::string& text) {
  const std::string s = lowercase(text);
  if (s == "f" || s == "anova") return TestKind::F;
  if (s == "rt") return TestKind::RT;
  if (s == "art") return TestKind::ART;
  if (s == "apcssa") return TestKind::APCSSA;
  if (s == "apcssm") return TestKind::APCSSM;
  throw InvalidArgument("unknown test '" + text + "' (expected F, RT, ART, APCSSA, APCSSM)");
}

EffectSpec PowerStudyConfig::effect_at(double magnitude) const {
  EffectSpec spec;
  spec.alpha = alpha_effects;
  spec.beta = beta_effects;
  spec.error = error;
  if (family == InteractionFamily::Product) {
    spec.interaction = ProductInteraction{magnitude};
  } else {
    spec.interaction = SpecificInteraction{magnitude, row_offset, col_offset};
  }
  return spec;
}

void PowerStudyConfig::validate() const {
  effect_at(0.0).validate(dims);
  if (magnitudes.empty()) throw InvalidArgument("power study needs at least one magnitude");
  for (double m : magnitudes) {
    if (!std::isfinite(m)) throw InvalidArgument("magnitude grid value is not finite");
  }
  if (tests.empty()) throw InvalidArgument("power study needs at least one test");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (n_sims == 0) throw InvalidArgument("n_sims must be positive");
}

std::vector<double> default_magnitude_grid(double max_magnitude, std::size_t count) {
  if (count < 2) throw InvalidArgument("magnitude grid needs at least 2 points");
  std::vector<double> grid(count);
  for (std::size_t n = 0; n < count; ++n) {
    grid[n] = max_magnitude * static_cast<double>(n) / static_cast<double>(count - 1);
  }
  return grid;
}

std::vector<PowerCurve> run_power_study(const PowerStudyConfig& config,
                                        const CalibrationSet& calibrations,
                                        std::size_t workers) {
  config.validate();
  const LayoutDims& dims = config.dims;

  // Resolve per-test prerequisites before any simulation work.
  std::vector<double> apc_critical(config.tests.size(), 0.0);
  for (std::size_t t = 0; t < config.tests.size(); ++t) {
    const TestKind test = config.tests[t];
    if (test == TestKind::APCSSA || test == TestKind::APCSSM) {
      const auto& cal = test == TestKind::APCSSA ? calibrations.average
                                                 : calibrations.median;
      const AlignmentMethod method = test == TestKind::APCSSA
                                         ? AlignmentMethod::Average
                                         : AlignmentMethod::Median;
      if (!cal) {
        throw CalibrationMissing(to_string(test) + " needs a " + to_string(method) +
                                 " calibration for " + dims.to_string());
      }
      if (cal->dims != dims || cal->method != method) {
        throw CalibrationMismatch(to_string(test) + " calibration is for " +
                                  cal->dims.to_string() + " " + to_string(cal->method) +
                                  ", study needs " + dims.to_string() + " " +
                                  to_string(method));
      }
      cal->validate();
      apc_critical[t] = critical_value(*cal, config.alpha);
    } else if (dims.reps < 2) {
      throw UnsupportedDesign(to_string(test) + " needs K >= 2, study has K = 1");
    }
  }

  const std::size_t n_tests = config.tests.size();
  const std::size_t n_mags = config.magnitudes.size();
  const std::size_t n_sims = config.n_sims;
  // decisions[(m * n_sims + r) * n_tests + t]
  std::vector<unsigned char> decisions(n_mags * n_sims * n_tests, 0);

  std::vector<EffectSpec> specs;
  specs.reserve(n_mags);
  for (double m : config.magnitudes) specs.push_back(config.effect_at(m));

  parallel_for(n_mags * n_sims, workers, [&](std::size_t flat) {
    const std::size_t m = flat / n_sims;
    const std::size_t r = flat % n_sims;
    Rng rng = Rng::for_stream(config.seed, kPowerDomain, r);
    const DataTable data = generate_dataset(dims, specs[m], rng);
    for (std::size_t t = 0; t < n_tests; ++t) {
      bool reject = false;
      switch (config.tests[t]) {
        case TestKind::F: reject = anova_f_interaction(data, config.alpha).reject; break;
        case TestKind::RT: reject = rt_test(data, config.alpha).reject; break;
        case TestKind::ART: reject = art_test(data, config.alpha).reject; break;
        case TestKind::APCSSA:
          reject = apcss(data, AlignmentMethod::Average, *calibrations.average).statistic >
                   apc_critical[t];
          break;
        case TestKind::APCSSM:
          reject = apcss(data, AlignmentMethod::Median, *calibrations.median).statistic >
                   apc_critical[t];
          break;
      }
      decisions[flat * n_tests + t] = reject ? 1 : 0;
    }
  });

  std::vector<PowerCurve> curves(n_tests);
  for (std::size_t t = 0; t < n_tests; ++t) {
    curves[t].test = config.tests[t];
    curves[t].dims = dims;
    curves[t].alpha = config.alpha;
    for (std::size_t m = 0; m < n_mags; ++m) {
      std::uint64_t count = 0;
      for (std::size_t r = 0; r < n_sims; ++r) count += decisions[(m * n_sims + r) * n_tests + t];
      curves[t].points.push_back({config.magnitudes[m], n_sims, count,
                                  static_cast<double>(count) / static_cast<double>(n_sims)});
    }
  }
  return curves;
}

std::string power_curves_csv(const std::vector<PowerCurve>& curves) {
  std::string out = "test,magnitude,n_sims,rejections,power\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out += to_string(curve.test) + "," + format_double(p.magnitude) + "," +
             std::to_string(p.n_sims) + "," + std::to_string(p.rejections) + "," +
             format_double(p.power) + "\n";
    }
  }
  return out;
}

}  // namespace apcss
