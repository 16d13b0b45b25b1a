#pragma once

#include <span>
#include <vector>

#include "apcss/layout.hpp"

namespace apcss {

/// Midranks of `values`: tied entries share the average of the ranks they
/// would occupy. Throws InvalidArgument on empty or non-finite input.
std::vector<double> midranks(std::span<const double> values);

/// Sample median; even-length groups use the mean of the two middle values.
double median(std::vector<double> values);

/// Subtracts the center (mean or median) of each group along `axis` from
/// every entry of that group. Axis::Column centers each column's I*K values,
/// Axis::Row each row's J*K values.
DataTable align(const DataTable& table, Axis axis, AlignmentMethod method);

/// Ranks per group: ranks live on the same (i, j, k) grid as the data.
class RankTable {
 public:
  RankTable(LayoutDims dims, std::vector<double> ranks, Axis axis);

  const LayoutDims& dims() const noexcept { return dims_; }
  std::span<const double> ranks() const noexcept { return ranks_; }
  /// Axis::Row means ranks were taken within each row over its J*K entries.
  Axis axis() const noexcept { return axis_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return ranks_[flat_index(dims_, i, j, k)];
  }

  friend bool operator==(const RankTable&, const RankTable&) = default;

 private:
  LayoutDims dims_;
  std::vector<double> ranks_;
  Axis axis_;
};

/// Midranks within each row (Axis::Row) or each column (Axis::Column).
RankTable rank_within(const DataTable& table, Axis axis);

}  // namespace apcss
