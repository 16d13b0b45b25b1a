#include "apcss/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apcss/errors.hpp"

namespace apcss {
namespace {

// Visits the flat offsets of one row (Axis::Row) or column (Axis::Column)
// group in (j, k) resp. (i, k) order.
template <typename Fn>
void for_each_in_group(const LayoutDims& d, Axis axis, std::size_t g, Fn&& fn) {
  if (axis == Axis::Row) {
    for (std::size_t j = 0; j < d.cols; ++j)
      for (std::size_t k = 0; k < d.reps; ++k) fn(flat_index(d, g, j, k));
  } else {
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t k = 0; k < d.reps; ++k) fn(flat_index(d, i, g, k));
  }
}

std::size_t group_count(const LayoutDims& d, Axis axis) {
  return axis == Axis::Row ? d.rows : d.cols;
}

std::size_t group_size(const LayoutDims& d, Axis axis) {
  return (axis == Axis::Row ? d.cols : d.rows) * d.reps;
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("midranks of empty sequence");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("midranks of non-finite value");
  }
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // positions start..end-1 hold ranks start+1..end
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t p = start; p < end; ++p) ranks[order[p]] = rank;
    start = end;
  }
  return ranks;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of empty sequence");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

DataTable align(const DataTable& table, Axis axis, AlignmentMethod method) {
  const LayoutDims& d = table.dims();
  const auto src = table.values();
  std::vector<double> out(src.begin(), src.end());
  std::vector<double> group;
  group.reserve(group_size(d, axis));

  for (std::size_t g = 0; g < group_count(d, axis); ++g) {
    group.clear();
    for_each_in_group(d, axis, g, [&](std::size_t idx) { group.push_back(src[idx]); });
    double center;
    if (method == AlignmentMethod::Average) {
      double sum = 0.0;
      for (double v : group) sum += v;
      center = sum / static_cast<double>(group.size());
    } else {
      center = median(group);
    }
    for_each_in_group(d, axis, g, [&](std::size_t idx) { out[idx] -= center; });
  }
  return DataTable(d, std::move(out));
}

RankTable::RankTable(LayoutDims dims, std::vector<double> ranks, Axis axis)
    : dims_(dims), ranks_(std::move(ranks)), axis_(axis) {
  dims_.validate();
  if (ranks_.size() != dims_.total()) {
    throw InvalidArgument("rank table " + dims_.to_string() + " needs " +
                          std::to_string(dims_.total()) + " ranks");
  }
  const std::size_t m = group_size(dims_, axis_);
  const double expected_sum = 0.5 * static_cast<double>(m * (m + 1));
  for (std::size_t g = 0; g < group_count(dims_, axis_); ++g) {
    double sum = 0.0;
    for_each_in_group(dims_, axis_, g, [&](std::size_t idx) {
      const double r = ranks_[idx];
      if (!(r >= 1.0 && r <= static_cast<double>(m)) ||
          std::floor(2.0 * r) != 2.0 * r) {
        throw InvalidArgument("rank " + std::to_string(r) +
                              " is not a midrank in [1, " + std::to_string(m) + "]");
      }
      sum += r;
    });
    if (sum != expected_sum) {
      throw InvalidArgument("ranks of group " + std::to_string(g) + " sum to " +
                            std::to_string(sum) + ", expected " +
                            std::to_string(expected_sum));
    }
  }
}

RankTable rank_within(const DataTable& table, Axis axis) {
  const LayoutDims& d = table.dims();
  const auto src = table.values();
  std::vector<double> out(src.size());
  std::vector<double> group;
  std::vector<std::size_t> where;
  group.reserve(group_size(d, axis));
  where.reserve(group_size(d, axis));

  for (std::size_t g = 0; g < group_count(d, axis); ++g) {
    group.clear();
    where.clear();
    for_each_in_group(d, axis, g, [&](std::size_t idx) {
      group.push_back(src[idx]);
      where.push_back(idx);
    });
    const auto r = midranks(group);
    for (std::size_t p = 0; p < r.size(); ++p) out[where[p]] = r[p];
  }
  return RankTable(d, std::move(out), axis);
}

}  // namespace apcss
