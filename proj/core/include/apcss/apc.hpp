#pragma once

#include <cstddef>

#include "apcss/layout.hpp"
#include "apcss/null_calibration.hpp"
#include "apcss/ranking.hpp"

namespace apcss {

/// Which nuisance factor is removed by alignment and which by ranking.
enum class APCOrientation {
  ColumnAlignRowRank,  // APCCRA side: compare column pairs over row pairs
  RowAlignColumnRank,  // APCRCA side: compare row pairs over column pairs
};

enum class APCVariant { APCSSA, APCSSM };

struct APCResult {
  APCVariant variant = APCVariant::APCSSA;
  double apccrad = 0.0;
  double apcrcad = 0.0;
  double apccrad_star = 0.0;
  double apcrcad_star = 0.0;
  double statistic = 0.0;  // max(apccrad_star, apcrcad_star)
};

/// Crossed comparison of levels a < b of the factor named by `pair_axis`:
/// the sum over all pairs of levels of the other factor and all K^4
/// replicate combinations of the squared tetrad contrast
///   (r[a side, first] + r[b side, second]) - (r[a side, second] + r[b side, first]).
///
/// Column pairs (pair_axis == Axis::Column) require ranks taken within rows;
/// row pairs require ranks taken within columns. Indices are zero-based.
/// This is the direct K^4 enumeration and serves as the reference oracle.
double crossed_comparison_brute(const RankTable& ranks, Axis pair_axis,
                                std::size_t a, std::size_t b);

/// Same value as crossed_comparison_brute, computed from per-cell rank sums
/// and sums of squares in O(levels^2) per pair.
double crossed_comparison_fast(const RankTable& ranks, Axis pair_axis,
                               std::size_t a, std::size_t b);

/// Maximum crossed comparison over all level pairs of the compared factor,
/// divided by the number of summands K^4 * L(L-1)/2, L being the level count
/// of the summed-over factor. The ranks' axis must match the orientation.
double apc_scaled_max(const RankTable& ranks, APCOrientation orientation);

/// Number of summands in one crossed comparison for the given orientation.
double apc_divisor(const LayoutDims& dims, APCOrientation orientation);

/// Both scaled maxima (APCCRAD, APCRCAD) of a raw table after the
/// respective align-then-rank steps.
struct ScaledMaxima {
  double crad = 0.0;
  double rcad = 0.0;
};
ScaledMaxima apc_scaled_maxima(const DataTable& table, AlignmentMethod method);

/// Standardizes both maxima with the given null moments and takes the max.
/// Throws CorruptCalibration if either variance is not positive.
APCResult apc_standardize(const ScaledMaxima& maxima, AlignmentMethod method,
                          double e0_crad, double v0_crad, double e0_rcad,
                          double v0_rcad);

/// Full APCSSA (Average) / APCSSM (Median) statistic for `table`.
/// Throws CalibrationMismatch if `cal` was built for other dims or method.
APCResult apcss(const DataTable& table, AlignmentMethod method,
                const NullCalibration& cal);

const char* to_string(APCVariant variant);

}  // namespace apcss
