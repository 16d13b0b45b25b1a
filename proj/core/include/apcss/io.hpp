#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "apcss/layout.hpp"
#include "apcss/simulation.hpp"

namespace apcss {

/// Reads `i,j,k,y` CSV with 1-based indices. Dimensions are the largest
/// index seen on each axis; every (i, j, k) of that grid must appear exactly
/// once. Throws InvalidArgument naming the offending line or missing cell.
DataTable read_data_csv(std::istream& in);
DataTable read_data_csv(const std::filesystem::path& path);

/// Writes `table` in the same CSV format.
std::string data_csv(const DataTable& table);

/// A power-study config file: the study plus where to find calibrations.
/// Calibration paths are resolved relative to the config file's directory.
struct PowerConfigFile {
  PowerStudyConfig study;
  std::optional<std::filesystem::path> average_calibration;
  std::optional<std::filesystem::path> median_calibration;
};

/// Parses a JSON power-study config. Keys:
///   dims {I, J, K}; alpha_effects [..]; beta_effects [..];
///   interaction {type: "product"} | {type: "specific", row, col} (1-based);
///   error; magnitudes [..] or max_magnitude (+ optional grid_points, default 9);
///   tests [..]; n_sims; seed; alpha (default 0.05);
///   calibrations {average: path, median: path} (optional).
PowerConfigFile parse_power_config(const std::string& json_text,
                                   const std::filesystem::path& base_dir = {});
PowerConfigFile read_power_config(const std::filesystem::path& path);

}  // namespace apcss
