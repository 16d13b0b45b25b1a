#pragma once

#include <stdexcept>
#include <string>

namespace apcss {

/// Malformed input: bad dimensions, non-finite values, out-of-range indices.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A test was asked to run on a design it cannot handle (e.g. F-test with K=1).
class UnsupportedDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration dims or method do not match the data being tested.
class CalibrationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A calibration required by a power study was not supplied.
class CalibrationMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration content violates its invariants (non-positive variance,
/// unsorted or wrongly sized null sample, truncated file).
class CorruptCalibration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration file written by an incompatible format version.
class CalibrationVersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration file payload does not match its recorded checksum.
class CalibrationChecksumMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace apcss
