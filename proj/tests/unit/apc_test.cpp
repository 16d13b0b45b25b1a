#include <gtest/gtest.h>

#include <cmath>

#include "apcss/apc.hpp"
#include "apcss/errors.hpp"
#include "test_util.hpp"

namespace apcss {
namespace {

using testing::random_table;
using testing::tied_table;

// Independent reference: literal enumeration over nested vectors r[i][j][k]
// of the tetrad sum for columns (j, jp). Does not touch RankTable accessors.
using Cube = std::vector<std::vector<std::vector<double>>>;

double enumerate_columns(const Cube& r, std::size_t j, std::size_t jp) {
  const std::size_t rows = r.size();
  const std::size_t reps = r[0][0].size();
  double v = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t ip = i + 1; ip < rows; ++ip)
      for (std::size_t k1 = 0; k1 < reps; ++k1)
        for (std::size_t k2 = 0; k2 < reps; ++k2)
          for (std::size_t k3 = 0; k3 < reps; ++k3)
            for (std::size_t k4 = 0; k4 < reps; ++k4) {
              const double t = (r[i][j][k1] + r[ip][jp][k2]) - (r[ip][j][k3] + r[i][jp][k4]);
              v += t * t;
            }
  return v;
}

Cube to_cube(const RankTable& t, bool transpose) {
  const LayoutDims d = t.dims();
  const std::size_t a = transpose ? d.cols : d.rows;
  const std::size_t b = transpose ? d.rows : d.cols;
  Cube c(a, std::vector<std::vector<double>>(b, std::vector<double>(d.reps)));
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      for (std::size_t k = 0; k < d.reps; ++k)
        (transpose ? c[j][i][k] : c[i][j][k]) = t(i, j, k);
  return c;
}

RankTable worked_2x2x2() {
  // row 1 cells {1,2},{3,4}; row 2 cells {4,3},{2,1}
  return RankTable({2, 2, 2}, {1, 2, 3, 4, 4, 3, 2, 1}, Axis::Row);
}

TEST(CrossedComparison, ConcordantRowsCancel) {
  const RankTable r({2, 2, 1}, {1, 2, 1, 2}, Axis::Row);
  EXPECT_EQ(crossed_comparison_brute(r, Axis::Column, 0, 1), 0.0);
  EXPECT_EQ(crossed_comparison_fast(r, Axis::Column, 0, 1), 0.0);
}

TEST(CrossedComparison, DiscordantRowsSingleSummand) {
  const RankTable r({2, 2, 1}, {1, 2, 2, 1}, Axis::Row);
  EXPECT_EQ(crossed_comparison_brute(r, Axis::Column, 0, 1), 4.0);
  EXPECT_EQ(crossed_comparison_fast(r, Axis::Column, 0, 1), 4.0);
}

TEST(CrossedComparison, Worked2x2x2) {
  const RankTable r = worked_2x2x2();
  EXPECT_EQ(enumerate_columns(to_cube(r, false), 0, 1), 272.0);
  EXPECT_EQ(crossed_comparison_brute(r, Axis::Column, 0, 1), 272.0);
  EXPECT_EQ(crossed_comparison_fast(r, Axis::Column, 0, 1), 272.0);
}

TEST(CrossedComparison, ArgumentChecks) {
  const RankTable r = worked_2x2x2();
  EXPECT_THROW(crossed_comparison_brute(r, Axis::Column, 1, 0), InvalidArgument);
  EXPECT_THROW(crossed_comparison_brute(r, Axis::Column, 0, 0), InvalidArgument);
  EXPECT_THROW(crossed_comparison_fast(r, Axis::Column, 0, 2), InvalidArgument);
  // column ranks cannot be compared across columns
  EXPECT_THROW(crossed_comparison_brute(r, Axis::Row, 0, 1), InvalidArgument);
  const RankTable c({2, 2, 1}, {1, 1, 2, 2}, Axis::Column);
  EXPECT_THROW(crossed_comparison_fast(c, Axis::Column, 0, 1), InvalidArgument);
  EXPECT_NO_THROW(crossed_comparison_fast(c, Axis::Row, 0, 1));
}

TEST(CrossedComparison, FastMatchesBruteAndEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const LayoutDims d{2 + rng() % 3, 2 + rng() % 3, 1 + rng() % 3};
    const DataTable t = trial % 2 ? random_table(d, rng) : tied_table(d, rng, 3);
    const RankTable rows = rank_within(t, Axis::Row);
    const RankTable cols = rank_within(t, Axis::Column);
    const Cube rc = to_cube(rows, false);
    const Cube cc = to_cube(cols, true);
    for (std::size_t a = 0; a < d.cols; ++a)
      for (std::size_t b = a + 1; b < d.cols; ++b) {
        const double brute = crossed_comparison_brute(rows, Axis::Column, a, b);
        EXPECT_EQ(brute, enumerate_columns(rc, a, b));
        EXPECT_NEAR(crossed_comparison_fast(rows, Axis::Column, a, b), brute,
                    1e-9 * std::max(1.0, brute));
      }
    for (std::size_t a = 0; a < d.rows; ++a)
      for (std::size_t b = a + 1; b < d.rows; ++b) {
        const double brute = crossed_comparison_brute(cols, Axis::Row, a, b);
        EXPECT_EQ(brute, enumerate_columns(cc, a, b));
        EXPECT_NEAR(crossed_comparison_fast(cols, Axis::Row, a, b), brute,
                    1e-9 * std::max(1.0, brute));
      }
  }
}

TEST(CrossedComparison, PairSymmetry) {
  // Swapping the two compared levels negates each tetrad; the square is unchanged.
  Rng rng(22);
  const DataTable t = random_table({3, 3, 2}, rng);
  const RankTable r = rank_within(t, Axis::Row);
  const DataTable swapped_t = [&] {
    std::vector<double> v(t.values().begin(), t.values().end());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 2; ++k)
        std::swap(v[flat_index(t.dims(), i, 0, k)], v[flat_index(t.dims(), i, 2, k)]);
    return DataTable(t.dims(), v);
  }();
  const RankTable rs = rank_within(swapped_t, Axis::Row);
  EXPECT_EQ(crossed_comparison_brute(r, Axis::Column, 0, 2),
            crossed_comparison_brute(rs, Axis::Column, 0, 2));
}

TEST(ApcScaledMax, DividesBySummandCount) {
  const RankTable discordant({2, 2, 1}, {1, 2, 2, 1}, Axis::Row);
  EXPECT_EQ(apc_scaled_max(discordant, APCOrientation::ColumnAlignRowRank), 4.0);
  EXPECT_EQ(apc_scaled_max(worked_2x2x2(), APCOrientation::ColumnAlignRowRank), 17.0);
  EXPECT_EQ(apc_divisor({3, 5, 2}, APCOrientation::ColumnAlignRowRank), 48.0);
  EXPECT_EQ(apc_divisor({5, 3, 2}, APCOrientation::RowAlignColumnRank), 48.0);
}

TEST(ApcScaledMax, OrientationMustMatchRankAxis) {
  EXPECT_THROW(apc_scaled_max(worked_2x2x2(), APCOrientation::RowAlignColumnRank),
               InvalidArgument);
}

TEST(ApcScaledMax, IsMaxOverPairsOfBrute) {
  Rng rng(23);
  const LayoutDims d{4, 3, 2};
  const RankTable r = rank_within(random_table(d, rng), Axis::Column);
  double best = 0.0;
  for (std::size_t a = 0; a < d.rows; ++a)
    for (std::size_t b = a + 1; b < d.rows; ++b)
      best = std::max(best, crossed_comparison_brute(r, Axis::Row, a, b));
  EXPECT_NEAR(apc_scaled_max(r, APCOrientation::RowAlignColumnRank),
              best / (16.0 * 3.0), 1e-9);
}

NullCalibration stub_calibration(LayoutDims dims, AlignmentMethod method, double e0,
                                 double v0) {
  NullCalibration cal;
  cal.dims = dims;
  cal.method = method;
  cal.e0_crad = cal.e0_rcad = e0;
  cal.v0_crad = cal.v0_rcad = v0;
  cal.null_sample = {0.0, 1.0};
  cal.n_phase1 = cal.n_phase2 = 2;
  return cal;
}

TEST(Apcss, StandardizeArithmetic) {
  const APCResult r = apc_standardize({17.0, 13.0}, AlignmentMethod::Average, 10, 4, 10, 4);
  EXPECT_EQ(r.apccrad_star, 3.5);
  EXPECT_EQ(r.apcrcad_star, 1.5);
  EXPECT_EQ(r.statistic, 3.5);
  EXPECT_EQ(r.variant, APCVariant::APCSSA);
  EXPECT_THROW(apc_standardize({1, 1}, AlignmentMethod::Median, 0, 0, 0, 1), CorruptCalibration);
}

TEST(Apcss, ConstantTableGivesAllTiesValue) {
  const LayoutDims d{3, 3, 2};
  for (const auto method : {AlignmentMethod::Average, AlignmentMethod::Median}) {
    const APCResult r =
        apcss(DataTable::constant(d, 2.0), method, stub_calibration(d, method, 10, 4));
    EXPECT_EQ(r.apccrad, 0.0);
    EXPECT_EQ(r.apcrcad, 0.0);
    EXPECT_EQ(r.statistic, -5.0);
  }
}

TEST(Apcss, CalibrationMismatch) {
  const DataTable t = DataTable::constant({3, 3, 2}, 0.0);
  EXPECT_THROW(apcss(t, AlignmentMethod::Average,
                     stub_calibration({3, 3, 3}, AlignmentMethod::Average, 1, 1)),
               CalibrationMismatch);
  EXPECT_THROW(apcss(t, AlignmentMethod::Average,
                     stub_calibration({3, 3, 2}, AlignmentMethod::Median, 1, 1)),
               CalibrationMismatch);
}

TEST(Apcss, NonNegativeMaxima) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const LayoutDims d{2 + rng() % 4, 2 + rng() % 4, 1 + rng() % 3};
    const ScaledMaxima m = apc_scaled_maxima(tied_table(d, rng), AlignmentMethod::Median);
    EXPECT_GE(m.crad, 0.0);
    EXPECT_GE(m.rcad, 0.0);
  }
}

TEST(Apcss, AverageStatisticIgnoresRowAndColumnShifts) {
  Rng rng(25);
  for (const LayoutDims d : {LayoutDims{3, 3, 2}, LayoutDims{3, 4, 2}}) {
    const NullCalibration cal = stub_calibration(d, AlignmentMethod::Average, 5, 2);
    for (int trial = 0; trial < 100; ++trial) {
      const DataTable t = random_table(d, rng);
      const DataTable s = t.shifted(testing::random_shifts(d.rows, rng),
                                    testing::random_shifts(d.cols, rng));
      EXPECT_EQ(apcss(t, AlignmentMethod::Average, cal).statistic,
                apcss(s, AlignmentMethod::Average, cal).statistic);
    }
  }
}

// Median alignment on each side removes a shift along its own axis.
TEST(Apcss, MedianSidesIgnoreTheirAlignedAxisShift) {
  Rng rng(26);
  const LayoutDims d{3, 4, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const DataTable t = random_table(d, rng);
    const ScaledMaxima base = apc_scaled_maxima(t, AlignmentMethod::Median);
    const auto zero_rows = std::vector<double>(d.rows, 0.0);
    const auto zero_cols = std::vector<double>(d.cols, 0.0);
    const ScaledMaxima col_shifted = apc_scaled_maxima(
        t.shifted(zero_rows, testing::random_shifts(d.cols, rng)), AlignmentMethod::Median);
    const ScaledMaxima row_shifted = apc_scaled_maxima(
        t.shifted(testing::random_shifts(d.rows, rng), zero_cols), AlignmentMethod::Median);
    EXPECT_EQ(base.crad, col_shifted.crad);
    EXPECT_EQ(base.rcad, row_shifted.rcad);
  }
}

TEST(Apcss, TransposeSwapsSides) {
  Rng rng(27);
  const LayoutDims d{3, 4, 2};
  for (const auto method : {AlignmentMethod::Average, AlignmentMethod::Median}) {
    NullCalibration cal = stub_calibration(d, method, 0, 1);
    cal.e0_crad = 3.0;
    cal.v0_crad = 2.0;
    cal.e0_rcad = 5.0;
    cal.v0_rcad = 7.0;
    NullCalibration cal_t = cal;
    cal_t.dims = d.transposed();
    std::swap(cal_t.e0_crad, cal_t.e0_rcad);
    std::swap(cal_t.v0_crad, cal_t.v0_rcad);
    for (int trial = 0; trial < 20; ++trial) {
      const DataTable t = random_table(d, rng);
      const APCResult r = apcss(t, method, cal);
      const APCResult rt = apcss(t.transposed(), method, cal_t);
      EXPECT_DOUBLE_EQ(r.apccrad, rt.apcrcad);
      EXPECT_DOUBLE_EQ(r.apcrcad, rt.apccrad);
      EXPECT_DOUBLE_EQ(r.statistic, rt.statistic);
    }
  }
}

}  // namespace
}  // namespace apcss
