#pragma once

#include "apcss/layout.hpp"

namespace apcss {

struct FTestResult {
  double statistic = 0.0;
  int df_num = 0;  // (I-1)(J-1)
  int df_den = 0;  // IJ(K-1)
  double p_value = 1.0;
  bool reject = false;
};

/// Sums of squares of the balanced two-way decomposition.
struct AnovaTable {
  double ss_rows = 0.0;
  double ss_cols = 0.0;
  double ss_interaction = 0.0;
  double ss_error = 0.0;
  double ss_total = 0.0;
};

AnovaTable anova_decompose(const DataTable& table);

/// Two-way ANOVA F-test for interaction: MS_interaction / MS_error, rejecting
/// when p < alpha. When both sums of squares vanish (fully tied data) the
/// result is statistic 0, p 1. Throws UnsupportedDesign for K = 1.
FTestResult anova_f_interaction(const DataTable& table, double alpha);

/// Conover-Iman rank transform: the interaction F-test on joint midranks.
FTestResult rt_test(const DataTable& table, double alpha);

/// Aligned rank transform for interaction: joint midranks of
/// Y - rowmean - colmean + grandmean, then the interaction F-test.
FTestResult art_test(const DataTable& table, double alpha);

/// Joint midranks of all I*J*K observations, in table layout.
DataTable joint_midranks(const DataTable& table);

/// Interaction residuals Y - rowmean_i - colmean_j + grandmean.
DataTable interaction_aligned(const DataTable& table);

}  // namespace apcss
