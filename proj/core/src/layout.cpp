#include "apcss/layout.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "apcss/errors.hpp"

namespace apcss {

void LayoutDims::validate() const {
  if (rows < 2 || cols < 2 || reps < 1) {
    throw InvalidArgument("layout " + to_string() +
                          " invalid: need I >= 2, J >= 2, K >= 1");
  }
}

std::string LayoutDims::to_string() const {
  return std::to_string(rows) + "x" + std::to_string(cols) + "x" +
         std::to_string(reps);
}

std::string to_string(AlignmentMethod method) {
  return method == AlignmentMethod::Average ? "average" : "median";
}

AlignmentMethod parse_alignment_method(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "average" || lower == "mean") return AlignmentMethod::Average;
  if (lower == "median") return AlignmentMethod::Median;
  throw InvalidArgument("unknown alignment method '" + text +
                        "' (expected average or median)");
}

DataTable::DataTable(LayoutDims dims, std::vector<double> values)
    : dims_(dims), values_(std::move(values)) {
  dims_.validate();
  if (values_.size() != dims_.total()) {
    throw InvalidArgument("data table " + dims_.to_string() + " needs " +
                          std::to_string(dims_.total()) + " values, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!std::isfinite(values_[n])) {
      throw InvalidArgument("data table value #" + std::to_string(n) +
                            " is not finite");
    }
  }
}

DataTable DataTable::constant(LayoutDims dims, double value) {
  return DataTable(dims, std::vector<double>(dims.total(), value));
}

DataTable DataTable::transposed() const {
  const LayoutDims t = dims_.transposed();
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < dims_.rows; ++i)
    for (std::size_t j = 0; j < dims_.cols; ++j)
      for (std::size_t k = 0; k < dims_.reps; ++k)
        out[flat_index(t, j, i, k)] = (*this)(i, j, k);
  return DataTable(t, std::move(out));
}

DataTable DataTable::shifted(std::span<const double> row_shift,
                             std::span<const double> col_shift) const {
  if (row_shift.size() != dims_.rows || col_shift.size() != dims_.cols) {
    throw InvalidArgument("shift vectors do not match layout " +
                          dims_.to_string());
  }
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < dims_.rows; ++i)
    for (std::size_t j = 0; j < dims_.cols; ++j)
      for (std::size_t k = 0; k < dims_.reps; ++k)
        out[flat_index(dims_, i, j, k)] += row_shift[i] + col_shift[j];
  return DataTable(dims_, std::move(out));
}

}  // namespace apcss
