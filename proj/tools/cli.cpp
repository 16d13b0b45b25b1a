#include "cli.hpp"

#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "apcss/apc.hpp"
#include "apcss/calibration.hpp"
#include "apcss/competitors.hpp"
#include "apcss/errors.hpp"
#include "apcss/format.hpp"
#include "apcss/io.hpp"
#include "apcss/simulation.hpp"

namespace apcss::cli {
namespace {

namespace fs = std::filesystem;

struct TestArgs {
  std::string input;
  std::string method;
  double alpha = 0.05;
  std::string calibration;
  bool competitors = false;
};

struct CalibrateArgs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t reps = 0;
  std::string method;
  std::uint64_t n1 = 100000;
  std::uint64_t n2 = 100000;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t workers = 0;
};

struct PowerArgs {
  std::string config;
  std::string output;
  std::size_t workers = 0;
};

// Argument problems found after CLI11 parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& flag, const std::string& path) {
  if (!fs::is_regular_file(path)) {
    throw UsageError(flag + ": file '" + path + "' does not exist");
  }
}

void require_output_dir(const std::string& flag, const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw UsageError(flag + ": directory '" + parent.string() + "' does not exist");
  }
}

void kv(std::ostream& out, std::string_view key, const std::string& value) {
  out << key << ": " << value << '\n';
}

int run_test(const TestArgs& a, std::ostream& out) {
  require_file("--input", a.input);
  require_file("--calibration", a.calibration);
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha: must lie in (0, 1)");
  const AlignmentMethod method = parse_alignment_method(a.method);

  const DataTable data = read_data_csv(fs::path(a.input));
  const NullCalibration cal = load_calibration(a.calibration);
  const APCResult res = apcss(data, method, cal);
  const double crit = critical_value(cal, a.alpha);
  const bool reject = res.statistic > crit;

  kv(out, "test", to_string(res.variant));
  kv(out, "dims", data.dims().to_string());
  kv(out, "method", to_string(method));
  kv(out, "alpha", format_double(a.alpha));
  kv(out, "apccrad", format_double(res.apccrad));
  kv(out, "apcrcad", format_double(res.apcrcad));
  kv(out, "apccrad_star", format_double(res.apccrad_star));
  kv(out, "apcrcad_star", format_double(res.apcrcad_star));
  kv(out, "statistic", format_double(res.statistic));
  kv(out, "critical_value", format_double(crit));
  kv(out, "p_value", format_double(p_value(cal, res.statistic)));
  kv(out, "calibration_n_phase2", std::to_string(cal.n_phase2));
  kv(out, "calibration_seed", std::to_string(cal.seed));
  kv(out, "decision", reject ? "reject" : "retain");

  if (a.competitors && data.dims().reps >= 2) {
    const auto report = [&](std::string_view name, const FTestResult& f) {
      const std::string prefix(name);
      kv(out, prefix + "_statistic", format_double(f.statistic));
      kv(out, prefix + "_df", std::to_string(f.df_num) + "," + std::to_string(f.df_den));
      kv(out, prefix + "_p_value", format_double(f.p_value));
      kv(out, prefix + "_decision", f.reject ? "reject" : "retain");
    };
    report("f", anova_f_interaction(data, a.alpha));
    report("rt", rt_test(data, a.alpha));
    report("art", art_test(data, a.alpha));
  }
  return kOk;
}

int run_calibrate(const CalibrateArgs& a, std::ostream& out) {
  require_output_dir("--output", a.output);
  const LayoutDims dims{a.rows, a.cols, a.reps};
  dims.validate();
  const AlignmentMethod method = parse_alignment_method(a.method);
  if (a.n1 < 2) throw UsageError("--n1: must be at least 2");
  if (a.n2 < 2) throw UsageError("--n2: must be at least 2");

  const NullCalibration cal = calibrate_null(dims, method, a.n1, a.n2, a.seed, a.workers);
  save_calibration(cal, a.output);

  kv(out, "output", a.output);
  kv(out, "dims", dims.to_string());
  kv(out, "method", to_string(method));
  kv(out, "e0_crad", format_double(cal.e0_crad));
  kv(out, "v0_crad", format_double(cal.v0_crad));
  kv(out, "e0_rcad", format_double(cal.e0_rcad));
  kv(out, "v0_rcad", format_double(cal.v0_rcad));
  kv(out, "critical_value_0.05", format_double(critical_value(cal, 0.05)));
  return kOk;
}

int run_power(const PowerArgs& a, std::ostream& out) {
  require_file("--config", a.config);
  require_output_dir("--output", a.output);
  const PowerConfigFile config = read_power_config(a.config);
  CalibrationSet cals;
  if (config.average_calibration) {
    require_file("calibrations.average", config.average_calibration->string());
    cals.average = load_calibration(*config.average_calibration);
  }
  if (config.median_calibration) {
    require_file("calibrations.median", config.median_calibration->string());
    cals.median = load_calibration(*config.median_calibration);
  }

  const auto curves = run_power_study(config.study, cals, a.workers);
  write_file_atomic(a.output, power_curves_csv(curves));

  kv(out, "output", a.output);
  kv(out, "dims", config.study.dims.to_string());
  kv(out, "tests", std::to_string(curves.size()));
  kv(out, "magnitudes", std::to_string(config.study.magnitudes.size()));
  kv(out, "n_sims", std::to_string(config.study.n_sims));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aligned rank-based tests for interaction in balanced two-way layouts", "apcss"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Run APCSSA/APCSSM on a CSV dataset");
  test->add_option("--input", test_args.input, "CSV with header i,j,k,y")->required();
  test->add_option("--method", test_args.method, "average (APCSSA) or median (APCSSM)")->required();
  test->add_option("--alpha", test_args.alpha, "Significance level")->capture_default_str();
  test->add_option("--calibration", test_args.calibration, "Calibration file for the data's dims and method")
      ->required();
  test->add_flag("--competitors", test_args.competitors, "Also report F, RT and ART (K >= 2)");

  CalibrateArgs cal_args;
  auto* calibrate = app.add_subcommand("calibrate", "Simulate a null calibration file");
  calibrate->add_option("--I", cal_args.rows, "Row-factor levels")->required();
  calibrate->add_option("--J", cal_args.cols, "Column-factor levels")->required();
  calibrate->add_option("--K", cal_args.reps, "Replications per cell")->required();
  calibrate->add_option("--method", cal_args.method, "average or median")->required();
  calibrate->add_option("--n1", cal_args.n1, "Phase-1 replicates (moments)")->capture_default_str();
  calibrate->add_option("--n2", cal_args.n2, "Phase-2 replicates (null sample)")->capture_default_str();
  calibrate->add_option("--seed", cal_args.seed, "Random seed")->required();
  calibrate->add_option("--output", cal_args.output, "Calibration file to write")->required();
  calibrate->add_option("--workers", cal_args.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  PowerArgs power_args;
  auto* power = app.add_subcommand("power", "Run a power study from a JSON config");
  power->add_option("--config", power_args.config, "Power-study config (JSON)")->required();
  power->add_option("--output", power_args.output, "CSV to write")->required();
  power->add_option("--workers", power_args.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  try {
    if (*test) return run_test(test_args, out);
    if (*calibrate) return run_calibrate(cal_args, out);
    if (*power) return run_power(power_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const UnsupportedDesign& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const CalibrationMismatch& e) {
    err << "error: calibration mismatch: " << e.what() << '\n';
    return kCalibrationProblem;
  } catch (const CalibrationMissing& e) {
    err << "error: " << e.what() << '\n';
    return kCalibrationProblem;
  } catch (const CorruptCalibration& e) {
    err << "error: corrupt calibration: " << e.what() << '\n';
    return kCalibrationProblem;
  } catch (const CalibrationVersionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kCalibrationProblem;
  } catch (const CalibrationChecksumMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kCalibrationProblem;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kInvalidArguments;
}

}  // namespace apcss::cli
