#include "apcss/apc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "apcss/errors.hpp"

namespace apcss {
namespace {

// Views a rank table as (summed level p, compared level q, replicate k),
// so both orientations share one code path.
struct PairView {
  const RankTable& ranks;
  Axis pair_axis;

  std::size_t compared_levels() const {
    return pair_axis == Axis::Column ? ranks.dims().cols : ranks.dims().rows;
  }
  std::size_t summed_levels() const {
    return pair_axis == Axis::Column ? ranks.dims().rows : ranks.dims().cols;
  }
  double operator()(std::size_t p, std::size_t q, std::size_t k) const {
    return pair_axis == Axis::Column ? ranks(p, q, k) : ranks(q, p, k);
  }
};

Axis required_rank_axis(Axis pair_axis) {
  return pair_axis == Axis::Column ? Axis::Row : Axis::Column;
}

void check_pair(const RankTable& ranks, Axis pair_axis, std::size_t a,
                std::size_t b) {
  if (ranks.axis() != required_rank_axis(pair_axis)) {
    throw InvalidArgument(pair_axis == Axis::Column
                              ? "column-pair comparison needs within-row ranks"
                              : "row-pair comparison needs within-column ranks");
  }
  const std::size_t levels = PairView{ranks, pair_axis}.compared_levels();
  if (!(a < b) || b >= levels) {
    throw InvalidArgument("crossed comparison needs level indices a < b < " +
                          std::to_string(levels) + ", got (" + std::to_string(a) +
                          ", " + std::to_string(b) + ")");
  }
}

// Per-cell rank sums and sums of squares laid out [p * compared + q].
struct CellMoments {
  std::size_t compared = 0;
  std::vector<double> sum;
  std::vector<double> sumsq;

  CellMoments(const PairView& view, std::size_t reps)
      : compared(view.compared_levels()),
        sum(view.summed_levels() * compared, 0.0),
        sumsq(view.summed_levels() * compared, 0.0) {
    for (std::size_t p = 0; p < view.summed_levels(); ++p) {
      for (std::size_t q = 0; q < compared; ++q) {
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t k = 0; k < reps; ++k) {
          const double r = view(p, q, k);
          s += r;
          s2 += r * r;
        }
        sum[p * compared + q] = s;
        sumsq[p * compared + q] = s2;
      }
    }
  }
};

// Sum over k1..k4 of ((x_a + x_b) - (x_c + x_d))^2 expanded in cell moments:
// K^3 (Qa+Qb+Qc+Qd) + 2K^2 (SaSb - SaSc - SaSd - SbSc - SbSd + ScSd).
double crossed_from_moments(const CellMoments& m, std::size_t summed,
                            std::size_t reps, std::size_t a, std::size_t b) {
  const double k = static_cast<double>(reps);
  const double k2 = k * k;
  const double k3 = k2 * k;
  double total = 0.0;
  for (std::size_t p = 0; p < summed; ++p) {
    for (std::size_t pp = p + 1; pp < summed; ++pp) {
      const std::size_t ia = p * m.compared + a;   // (p, a)
      const std::size_t ib = pp * m.compared + b;  // (p', b)
      const std::size_t ic = pp * m.compared + a;  // (p', a)
      const std::size_t id = p * m.compared + b;   // (p, b)
      const double sa = m.sum[ia], sb = m.sum[ib], sc = m.sum[ic], sd = m.sum[id];
      total += k3 * (m.sumsq[ia] + m.sumsq[ib] + m.sumsq[ic] + m.sumsq[id]) +
               2.0 * k2 * (sa * sb - sa * sc - sa * sd - sb * sc - sb * sd + sc * sd);
    }
  }
  return total;
}

Axis pair_axis_of(APCOrientation orientation) {
  return orientation == APCOrientation::ColumnAlignRowRank ? Axis::Column
                                                           : Axis::Row;
}

}  // namespace

double crossed_comparison_brute(const RankTable& ranks, Axis pair_axis,
                                std::size_t a, std::size_t b) {
  check_pair(ranks, pair_axis, a, b);
  const PairView view{ranks, pair_axis};
  const std::size_t summed = view.summed_levels();
  const std::size_t reps = ranks.dims().reps;
  double total = 0.0;
  for (std::size_t p = 0; p < summed; ++p) {
    for (std::size_t pp = p + 1; pp < summed; ++pp) {
      for (std::size_t k1 = 0; k1 < reps; ++k1)
        for (std::size_t k2 = 0; k2 < reps; ++k2)
          for (std::size_t k3 = 0; k3 < reps; ++k3)
            for (std::size_t k4 = 0; k4 < reps; ++k4) {
              const double diff = (view(p, a, k1) + view(pp, b, k2)) -
                                  (view(pp, a, k3) + view(p, b, k4));
              total += diff * diff;
            }
    }
  }
  return total;
}

double crossed_comparison_fast(const RankTable& ranks, Axis pair_axis,
                               std::size_t a, std::size_t b) {
  check_pair(ranks, pair_axis, a, b);
  const PairView view{ranks, pair_axis};
  const CellMoments moments(view, ranks.dims().reps);
  return crossed_from_moments(moments, view.summed_levels(), ranks.dims().reps,
                              a, b);
}

double apc_divisor(const LayoutDims& dims, APCOrientation orientation) {
  const double k = static_cast<double>(dims.reps);
  const double levels = static_cast<double>(
      orientation == APCOrientation::ColumnAlignRowRank ? dims.rows : dims.cols);
  return k * k * k * k * levels * (levels - 1.0) / 2.0;
}

double apc_scaled_max(const RankTable& ranks, APCOrientation orientation) {
  const Axis pair_axis = pair_axis_of(orientation);
  if (ranks.axis() != required_rank_axis(pair_axis)) {
    throw InvalidArgument(orientation == APCOrientation::ColumnAlignRowRank
                              ? "APCCRAD needs within-row ranks"
                              : "APCRCAD needs within-column ranks");
  }
  const PairView view{ranks, pair_axis};
  if (view.compared_levels() < 2 || view.summed_levels() < 2) {
    throw InvalidArgument("crossed comparisons need at least two levels per factor");
  }
  const CellMoments moments(view, ranks.dims().reps);
  double best = 0.0;
  for (std::size_t a = 0; a < view.compared_levels(); ++a) {
    for (std::size_t b = a + 1; b < view.compared_levels(); ++b) {
      best = std::max(best, crossed_from_moments(moments, view.summed_levels(),
                                                 ranks.dims().reps, a, b));
    }
  }
  return best / apc_divisor(ranks.dims(), orientation);
}

ScaledMaxima apc_scaled_maxima(const DataTable& table, AlignmentMethod method) {
  const RankTable row_ranks = rank_within(align(table, Axis::Column, method), Axis::Row);
  const RankTable col_ranks = rank_within(align(table, Axis::Row, method), Axis::Column);
  return {apc_scaled_max(row_ranks, APCOrientation::ColumnAlignRowRank),
          apc_scaled_max(col_ranks, APCOrientation::RowAlignColumnRank)};
}

APCResult apc_standardize(const ScaledMaxima& maxima, AlignmentMethod method,
                          double e0_crad, double v0_crad, double e0_rcad,
                          double v0_rcad) {
  if (!(v0_crad > 0.0) || !(v0_rcad > 0.0)) {
    throw CorruptCalibration("null variances must be positive");
  }
  APCResult r;
  r.variant = method == AlignmentMethod::Average ? APCVariant::APCSSA
                                                 : APCVariant::APCSSM;
  r.apccrad = maxima.crad;
  r.apcrcad = maxima.rcad;
  r.apccrad_star = (maxima.crad - e0_crad) / std::sqrt(v0_crad);
  r.apcrcad_star = (maxima.rcad - e0_rcad) / std::sqrt(v0_rcad);
  r.statistic = std::max(r.apccrad_star, r.apcrcad_star);
  return r;
}

APCResult apcss(const DataTable& table, AlignmentMethod method,
                const NullCalibration& cal) {
  if (cal.dims != table.dims()) {
    throw CalibrationMismatch("calibration is for " + cal.dims.to_string() +
                              ", data is " + table.dims().to_string());
  }
  if (cal.method != method) {
    throw CalibrationMismatch("calibration is for " + to_string(cal.method) +
                              " alignment, test requested " + to_string(method));
  }
  return apc_standardize(apc_scaled_maxima(table, method), method, cal.e0_crad,
                         cal.v0_crad, cal.e0_rcad, cal.v0_rcad);
}

const char* to_string(APCVariant variant) {
  return variant == APCVariant::APCSSA ? "APCSSA" : "APCSSM";
}

}  // namespace apcss
