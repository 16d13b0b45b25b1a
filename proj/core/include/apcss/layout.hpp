#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace apcss {

/// Shape of a balanced two-way layout: `rows` levels of the row factor,
/// `cols` levels of the column factor, `reps` replications in every cell.
struct LayoutDims {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t reps = 0;

  constexpr std::size_t total() const noexcept { return rows * cols * reps; }

  /// Throws InvalidArgument unless rows >= 2, cols >= 2, reps >= 1.
  void validate() const;

  LayoutDims transposed() const noexcept { return {cols, rows, reps}; }

  std::string to_string() const;  // "3x4x2"

  friend bool operator==(const LayoutDims&, const LayoutDims&) = default;
};

enum class Axis { Row, Column };

enum class AlignmentMethod { Average, Median };

std::string to_string(AlignmentMethod method);
/// Accepts "average"/"mean" and "median" (case-insensitive).
AlignmentMethod parse_alignment_method(const std::string& text);

/// Flat offset of cell entry (i, j, k); all indices zero-based.
constexpr std::size_t flat_index(const LayoutDims& d, std::size_t i,
                                 std::size_t j, std::size_t k) noexcept {
  return (i * d.cols + j) * d.reps + k;
}

/// Response tensor Y(i, j, k) of a balanced design. Every entry is finite.
class DataTable {
 public:
  DataTable(LayoutDims dims, std::vector<double> values);

  /// Table of identical entries.
  static DataTable constant(LayoutDims dims, double value);

  const LayoutDims& dims() const noexcept { return dims_; }
  std::span<const double> values() const noexcept { return values_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return values_[flat_index(dims_, i, j, k)];
  }

  /// Same responses with the two factors swapped.
  DataTable transposed() const;

  /// Adds `row_shift[i] + col_shift[j]` to every entry of cell (i, j).
  DataTable shifted(std::span<const double> row_shift,
                    std::span<const double> col_shift) const;

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  LayoutDims dims_;
  std::vector<double> values_;
};

}  // namespace apcss
