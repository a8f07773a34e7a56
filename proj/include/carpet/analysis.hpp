#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "carpet/search.hpp"

namespace carpet {

/// Cheapest chain of one or two cells from p to q, over cells of levels
/// 0..level_cap. Two cells u, v qualify when p is in K_u, q in K_v and the
/// squares meet. Throws Error(InvalidPoint) if p or q is not in the carpet.
double adapted_distance_1(const WeightParams& params, const TriadicPoint& p,
                          const TriadicPoint& q, int level_cap);

struct AdaptedSample {
  TriadicPoint p, q;
  double d1 = 0.0;     ///< adapted_distance_1
  double d = 0.0;      ///< level-capped chain distance
  double ratio = 0.0;  ///< d1 / d
};

struct AdaptednessReport {
  std::vector<AdaptedSample> samples;
  double sup_ratio = 0.0;
  std::size_t dominance_violations = 0;  ///< samples with d1 < d (1e-12 relative)
};

AdaptednessReport adaptedness_probe(const WeightParams& params, std::size_t samples, int level,
                                    std::uint64_t seed, unsigned threads = 1);

/// max over the corner pairs of K_w of the MixedLevels(|w| + k) distance,
/// divided by weight(w).
double diam_ratio(const WeightParams& params, const Word& w, int extra_levels);

/// Exponents of the distortion function: kappa1 = -log max(a,b) / log 3,
/// kappa2 = -log min(a,b) / log 3.
struct QsExponents {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

QsExponents qs_exponents(const WeightParams& params);

struct QsSample {
  TriadicPoint p, q, s;
  double t = 0.0;       ///< |p - s|_inf / |p - q|_inf
  double ratio = 0.0;   ///< D(p, s) / D(p, q)
  double scaled = 0.0;  ///< ratio / max(t^kappa1, t^kappa2)
};

struct QsReport {
  QsExponents exponents;
  std::vector<QsSample> samples;
  double sup_scaled = 0.0;
};

QsReport quasisymmetry_probe(const WeightParams& params, std::size_t samples, int level,
                             std::uint64_t seed, unsigned threads = 1);

struct ChainConditionReport {
  double c_est = 0.0;
  double distance = 0.0;            ///< D(p, q)
  Chain chain;                      ///< refined witness used for splitting
  std::vector<TriadicPoint> points; ///< q_0 = p, ..., q_n = q
  std::vector<double> gaps;         ///< D(q_i, q_{i+1})
};

/// Estimate of the chain-condition constant C for one pair and one n.
///
/// The witness chain is first refined: while some cell is heavier than
/// total / n, it is replaced by the cheapest chain through its strict
/// subcells that joins the same entry and exit points, provided that costs
/// no more than the cell itself. The split points are then the junction
/// points where cumulative cost first reaches i * total / n, and
/// C_est = n * max gap / D(p, q).
ChainConditionReport chain_condition_probe(const WeightParams& params, const TriadicPoint& p,
                                           const TriadicPoint& q, int n, int level);

/// lambda >= 1 with 2a^lambda + b^lambda = 1 (a <= b side) or
/// a^lambda + 2b^lambda = 1 (a > b side); exactly 1 on a critical line.
/// Throws Error(WrongRegion) for non-metric params.
double critical_exponent(const WeightParams& params);

enum class Verdict { Exact1, Decaying, Indeterminate };

std::string_view to_string(Verdict verdict) noexcept;

struct ScanRow {
  double a = 0.0;
  double b = 0.0;
  int level = 0;
  ParamRegion region = ParamRegion::NonMetric;
  double distance = 0.0;     ///< MixedLevels D(p1, p3)
  double bottom_bound = 0.0; ///< (2a + b)^level
  Verdict verdict = Verdict::Indeterminate;
};

/// Rows for the grid a, b in {i / N : 0 < i < N}, N = round(1 / step), at
/// levels 1..level. Points within 1e-12 of a critical line are snapped onto
/// it. Rows are ordered by (a, b, level).
std::vector<ScanRow> degeneracy_scan(double grid_step, int level, unsigned threads = 1);

/// Verdict of a value given the value one level coarser (1 at level 0).
Verdict scan_verdict(double value, double previous);

/// Header "a,b,level,region,D_p1p3,bottom_bound,verdict" plus one line per row.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

/// MixedLevels distance between two points at one level cap.
double chain_distance(const WeightParams& params, const TriadicPoint& p, const TriadicPoint& q,
                      int level, LevelMode mode = LevelMode::Mixed);

}  // namespace carpet
