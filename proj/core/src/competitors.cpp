#include "apcss/competitors.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "apcss/errors.hpp"
#include "apcss/fdist.hpp"
#include "apcss/ranking.hpp"

namespace apcss {
namespace {

struct Means {
  std::vector<double> row;
  std::vector<double> col;
  std::vector<double> cell;  // [i * J + j]
  double grand = 0.0;
};

Means compute_means(const DataTable& t) {
  const LayoutDims& d = t.dims();
  Means m{std::vector<double>(d.rows, 0.0), std::vector<double>(d.cols, 0.0),
          std::vector<double>(d.rows * d.cols, 0.0), 0.0};
  for (std::size_t i = 0; i < d.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d.reps; ++k) s += t(i, j, k);
      m.cell[i * d.cols + j] = s;
      m.row[i] += s;
      m.col[j] += s;
      m.grand += s;
    }
  }
  const double reps = static_cast<double>(d.reps);
  for (auto& v : m.cell) v /= reps;
  for (auto& v : m.row) v /= static_cast<double>(d.cols) * reps;
  for (auto& v : m.col) v /= static_cast<double>(d.rows) * reps;
  m.grand /= static_cast<double>(d.total());
  return m;
}

}  // namespace

AnovaTable anova_decompose(const DataTable& table) {
  const LayoutDims& d = table.dims();
  const Means m = compute_means(table);
  const double reps = static_cast<double>(d.reps);
  AnovaTable a;
  for (std::size_t i = 0; i < d.rows; ++i) {
    const double dr = m.row[i] - m.grand;
    a.ss_rows += dr * dr;
  }
  a.ss_rows *= static_cast<double>(d.cols) * reps;
  for (std::size_t j = 0; j < d.cols; ++j) {
    const double dc = m.col[j] - m.grand;
    a.ss_cols += dc * dc;
  }
  a.ss_cols *= static_cast<double>(d.rows) * reps;
  for (std::size_t i = 0; i < d.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      const double cell = m.cell[i * d.cols + j];
      const double dab = cell - m.row[i] - m.col[j] + m.grand;
      a.ss_interaction += reps * dab * dab;
      for (std::size_t k = 0; k < d.reps; ++k) {
        const double e = table(i, j, k) - cell;
        a.ss_error += e * e;
        const double t = table(i, j, k) - m.grand;
        a.ss_total += t * t;
      }
    }
  }
  return a;
}

FTestResult anova_f_interaction(const DataTable& table, double alpha) {
  const LayoutDims& d = table.dims();
  if (d.reps < 2) {
    throw UnsupportedDesign("interaction F-test needs K >= 2 (no error term with K = 1)");
  }
  FTestResult r;
  r.df_num = static_cast<int>((d.rows - 1) * (d.cols - 1));
  r.df_den = static_cast<int>(d.rows * d.cols * (d.reps - 1));
  AnovaTable a = anova_decompose(table);
  // Sums of squares at the level of floating-point noise in the means are
  // exact zeros (additive or constant data whose means do not round exactly).
  double raw_ss = 0.0;
  for (double y : table.values()) raw_ss += y * y;
  const double noise_floor = 1e-24 * raw_ss;
  if (a.ss_interaction <= noise_floor) a.ss_interaction = 0.0;
  if (a.ss_error <= noise_floor) a.ss_error = 0.0;
  if (a.ss_interaction == 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
  } else if (a.ss_error == 0.0) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else {
    r.statistic = (a.ss_interaction / r.df_num) / (a.ss_error / r.df_den);
    r.p_value = f_upper_tail(r.statistic, r.df_num, r.df_den);
  }
  r.reject = r.p_value < alpha;
  return r;
}

DataTable joint_midranks(const DataTable& table) {
  return DataTable(table.dims(), midranks(table.values()));
}

DataTable interaction_aligned(const DataTable& table) {
  const LayoutDims& d = table.dims();
  const Means m = compute_means(table);
  std::vector<double> out(table.values().begin(), table.values().end());
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      for (std::size_t k = 0; k < d.reps; ++k)
        out[flat_index(d, i, j, k)] += m.grand - m.row[i] - m.col[j];
  return DataTable(d, std::move(out));
}

FTestResult rt_test(const DataTable& table, double alpha) {
  return anova_f_interaction(joint_midranks(table), alpha);
}

FTestResult art_test(const DataTable& table, double alpha) {
  return anova_f_interaction(joint_midranks(interaction_aligned(table)), alpha);
}

}  // namespace apcss
