#pragma once

#include <cstdint>
#include <vector>

#include "apcss/layout.hpp"

namespace apcss {

inline constexpr int kCalibrationFormatVersion = 1;

/// Simulated null constants for one (dims, method): the phase-1 means and
/// variances used to standardize the two scaled maxima, and the sorted
/// phase-2 sample of the symmetrized statistic.
struct NullCalibration {
  LayoutDims dims;
  AlignmentMethod method = AlignmentMethod::Average;
  double e0_crad = 0.0;
  double v0_crad = 0.0;
  double e0_rcad = 0.0;
  double v0_rcad = 0.0;
  std::vector<double> null_sample;
  std::uint64_t n_phase1 = 0;
  std::uint64_t n_phase2 = 0;
  std::uint64_t seed = 0;
  int format_version = kCalibrationFormatVersion;

  /// Throws CorruptCalibration if any invariant fails (variances > 0,
  /// sample sorted and of length n_phase2, finite constants).
  void validate() const;

  friend bool operator==(const NullCalibration&, const NullCalibration&) = default;
};

}  // namespace apcss
