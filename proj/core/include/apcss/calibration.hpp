#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "apcss/apc.hpp"
#include "apcss/layout.hpp"
#include "apcss/null_calibration.hpp"

namespace apcss {

/// Two-phase null simulation under standard normal errors with no main or
/// interaction effects.
///
/// Phase 1 estimates the mean and sample variance (n - 1 denominator) of
/// APCCRAD and APCRCAD from `n_phase1` tables. Phase 2 draws `n_phase2`
/// fresh tables, standardizes with the phase-1 constants and keeps the
/// sorted symmetrized statistics. Replicate r of phase p uses the stream
/// (seed, p, r), so the output depends only on the arguments, never on
/// `workers` (0 = all cores).
NullCalibration calibrate_null(const LayoutDims& dims, AlignmentMethod method,
                               std::uint64_t n_phase1, std::uint64_t n_phase2,
                               std::uint64_t seed, std::size_t workers = 0);

/// The phase-1 draws of calibrate_null with the same arguments: scaled
/// maxima of `n` pure-noise tables, in replicate order.
std::vector<ScaledMaxima> null_scaled_maxima(const LayoutDims& dims, AlignmentMethod method,
                                             std::uint64_t n, std::uint64_t seed,
                                             std::size_t workers = 0);

/// The ceil((1 - alpha) * n)-th smallest null statistic. A test rejects when
/// its statistic is strictly greater.
double critical_value(const NullCalibration& cal, double alpha);

/// Add-one Monte Carlo p-value: (1 + #{null >= statistic}) / (n + 1).
double p_value(const NullCalibration& cal, double statistic);

/// Self-describing `key: value` text with a CRC-32 trailer. Does not
/// validate, so that invalid calibrations can still be inspected.
std::string calibration_to_text(const NullCalibration& cal);

/// Parses and validates calibration text. Throws
/// CalibrationVersionMismatch, CalibrationChecksumMismatch, or
/// CorruptCalibration (truncation, malformed fields, invariant violations).
NullCalibration calibration_from_text(std::string_view text);

/// Writes via a temporary file and rename, so a failed save never leaves a
/// partial file at `path`.
void save_calibration(const NullCalibration& cal, const std::filesystem::path& path);

NullCalibration load_calibration(const std::filesystem::path& path);

/// Writes `contents` to `path` atomically (temp file + rename). Throws IoError on
/// failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace apcss
