#include "carpet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "carpet/error.hpp"
#include "carpet/format.hpp"
#include "carpet/sampling.hpp"

namespace carpet {

double chain_distance(const WeightParams& params, const TriadicPoint& p, const TriadicPoint& q,
                      int level, LevelMode mode) {
  DistanceQuery query{params, p, q, level, mode, {}, {}};
  return shortest_chain(query).value;
}

double adapted_distance_1(const WeightParams& params, const TriadicPoint& p,
                          const TriadicPoint& q, int level_cap) {
  for (const TriadicPoint* x : {&p, &q}) {
    if (locate_point(*x, level_cap).empty()) {
      throw Error(ErrorKind::InvalidPoint, "point " + x->str() + " is not in the carpet");
    }
  }
  if (p == q) return 0.0;

  std::vector<CellId> at_p, at_q;
  for (int l = 0; l <= level_cap; ++l) {
    for (const CellId& c : locate_point(p, l)) at_p.push_back(c);
    for (const CellId& c : locate_point(q, l)) at_q.push_back(c);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const CellId& u : at_p) {
    const double wu = weight(params, u);
    if (cell_contains_point(u, q)) best = std::min(best, wu);
    for (const CellId& v : at_q) {
      if (cells_meet(u, v)) best = std::min(best, wu + weight(params, v));
    }
  }
  return best;
}

namespace {

std::pair<TriadicPoint, TriadicPoint> distinct_pair(std::mt19937_64& rng, int level) {
  const TriadicPoint p = random_carpet_point(rng, level);
  TriadicPoint q = random_carpet_point(rng, level);
  while (q == p) q = random_carpet_point(rng, level);
  return {p, q};
}

}  // namespace

AdaptednessReport adaptedness_probe(const WeightParams& params, std::size_t samples, int level,
                                    std::uint64_t seed, unsigned threads) {
  AdaptednessReport report;
  report.samples.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    auto rng = sample_rng(seed, i);
    auto [p, q] = distinct_pair(rng, level);
    AdaptedSample& s = report.samples[i];
    s.p = p;
    s.q = q;
    s.d1 = adapted_distance_1(params, p, q, level);
    s.d = chain_distance(params, p, q, level);
    s.ratio = s.d1 / s.d;
  });
  for (const AdaptedSample& s : report.samples) {
    report.sup_ratio = std::max(report.sup_ratio, s.ratio);
    if (s.d1 < s.d * (1.0 - 1e-12)) ++report.dominance_violations;
  }
  return report;
}

double diam_ratio(const WeightParams& params, const Word& w, int extra_levels) {
  const CellId cell = word_to_cell(w);
  const int level = cell.level + extra_levels;
  double diam = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      diam = std::max(diam, chain_distance(params, TriadicPoint::cell_corner(cell, i),
                                           TriadicPoint::cell_corner(cell, j), level));
    }
  }
  return diam / weight(params, w);
}

QsExponents qs_exponents(const WeightParams& params) {
  const double log3 = std::log(3.0);
  return {-std::log(std::max(params.a(), params.b())) / log3,
          -std::log(std::min(params.a(), params.b())) / log3};
}

QsReport quasisymmetry_probe(const WeightParams& params, std::size_t samples, int level,
                             std::uint64_t seed, unsigned threads) {
  QsReport report;
  report.exponents = qs_exponents(params);
  report.samples.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    auto rng = sample_rng(seed, i);
    auto [p, q] = distinct_pair(rng, level);
    TriadicPoint s = random_carpet_point(rng, level);
    while (s == p) s = random_carpet_point(rng, level);
    QsSample& out = report.samples[i];
    out.p = p;
    out.q = q;
    out.s = s;
    out.t = linf_distance(p, s) / linf_distance(p, q);
    out.ratio = chain_distance(params, p, s, level) / chain_distance(params, p, q, level);
    out.scaled = out.ratio / std::max(std::pow(out.t, report.exponents.kappa1),
                                      std::pow(out.t, report.exponents.kappa2));
  });
  for (const QsSample& s : report.samples) report.sup_scaled = std::max(report.sup_scaled, s.scaled);
  return report;
}

ChainConditionReport chain_condition_probe(const WeightParams& params, const TriadicPoint& p,
                                           const TriadicPoint& q, int n, int level) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "chain condition needs n >= 1");
  if (p == q) throw Error(ErrorKind::OutOfRange, "chain condition needs p != q");

  ChainConditionReport report;
  const DistanceResult best = shortest_chain(DistanceQuery{params, p, q, level, LevelMode::Mixed, {}, {}});
  report.distance = best.value;
  Chain chain = best.witness;

  std::set<CellId> stuck;
  for (;;) {
    double total = 0.0;
    for (const CellId& c : chain) total += weight(params, c);
    const double limit = total / n * (1.0 + 1e-9);

    std::size_t pick = chain.size();
    double heaviest = limit;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double w = weight(params, chain[i]);
      if (w > heaviest && chain[i].level < level && !stuck.count(chain[i])) {
        heaviest = w;
        pick = i;
      }
    }
    if (pick == chain.size()) break;

    const CellId cell = chain[pick];
    const TriadicPoint entry = pick == 0 ? p : junction_point(chain[pick - 1], cell);
    const TriadicPoint exit = pick + 1 == chain.size() ? q : junction_point(cell, chain[pick + 1]);
    if (entry == exit) {
      stuck.insert(cell);
      continue;
    }
    DistanceQuery sub{params, entry, exit, level, LevelMode::Mixed, {}, {}};
    sub.filter = [cell](const CellId& c) { return cells_relate(cell, c) == Relation::Contains; };
    DistanceResult inner;
    try {
      inner = shortest_chain(sub);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unreachable) throw;
      stuck.insert(cell);
      continue;
    }
    if (inner.value > heaviest * (1.0 + 1e-9)) {
      stuck.insert(cell);
      continue;
    }
    Chain spliced(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(pick));
    spliced.insert(spliced.end(), inner.witness.begin(), inner.witness.end());
    spliced.insert(spliced.end(), chain.begin() + static_cast<std::ptrdiff_t>(pick) + 1, chain.end());
    chain = std::move(spliced);
  }

  std::vector<double> cumulative;
  double running = 0.0;
  for (const CellId& c : chain) cumulative.push_back(running += weight(params, c));
  const double total = running;

  report.points.push_back(p);
  for (int i = 1; i < n; ++i) {
    const double target = total * i / n * (1.0 - 1e-12);
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    const auto j = static_cast<std::size_t>(it - cumulative.begin());
    report.points.push_back(j + 1 >= chain.size() ? q : junction_point(chain[j], chain[j + 1]));
  }
  report.points.push_back(q);

  double widest = 0.0;
  for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
    const double gap = report.points[i] == report.points[i + 1]
                           ? 0.0
                           : chain_distance(params, report.points[i], report.points[i + 1], level);
    report.gaps.push_back(gap);
    widest = std::max(widest, gap);
  }
  report.chain = std::move(chain);
  report.c_est = n * widest / report.distance;
  return report;
}

double critical_exponent(const WeightParams& params) {
  const ParamRegion region = params.region();
  if (region == ParamRegion::NonMetric) {
    throw Error(ErrorKind::WrongRegion, "critical exponent needs params in the metric region");
  }
  if (is_critical(region)) return 1.0;
  const double a = params.a(), b = params.b();
  const bool first = region == ParamRegion::Sigma1Interior;
  const auto f = [&](double lambda) {
    return first ? 2.0 * std::pow(a, lambda) + std::pow(b, lambda)
                 : std::pow(a, lambda) + 2.0 * std::pow(b, lambda);
  };
  double lo = 1.0, hi = 2.0;
  while (f(hi) >= 1.0) hi *= 2.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Exact1: return "Exact1";
    case Verdict::Decaying: return "Decaying";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Verdict scan_verdict(double value, double previous) {
  if (std::abs(value - 1.0) <= 1e-9) return Verdict::Exact1;
  if (value <= 0.95 * previous) return Verdict::Decaying;
  return Verdict::Indeterminate;
}

namespace {

WeightParams grid_params(double a, double b) {
  const double s1 = 2.0 * a + b, s2 = a + 2.0 * b;
  if (s1 != 1.0 && std::abs(s1 - 1.0) <= 1e-12) return WeightParams::snapped_i1(a);
  if (s2 != 1.0 && std::abs(s2 - 1.0) <= 1e-12) return WeightParams::snapped_i2(b);
  return WeightParams(a, b);
}

}  // namespace

std::vector<ScanRow> degeneracy_scan(double grid_step, int level, unsigned threads) {
  if (!(grid_step > 0.0 && grid_step < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "grid step must lie in (0, 1)");
  }
  if (level < 1) throw Error(ErrorKind::OutOfRange, "scan level must be >= 1");
  const long steps = std::lround(1.0 / grid_step);
  if (steps < 2) throw Error(ErrorKind::OutOfRange, "grid step too coarse");
  const auto side = static_cast<std::size_t>(steps - 1);

  const TriadicPoint p1 = TriadicPoint::anchor(1), p3 = TriadicPoint::anchor(3);
  std::vector<ScanRow> rows(side * side * static_cast<std::size_t>(level));
  parallel_for(side * side, threads, [&](std::size_t k) {
    const double a0 = static_cast<double>(k / side + 1) / static_cast<double>(steps);
    const double b0 = static_cast<double>(k % side + 1) / static_cast<double>(steps);
    const WeightParams params = grid_params(a0, b0);
    double previous = 1.0;
    for (int l = 1; l <= level; ++l) {
      ScanRow& row = rows[k * static_cast<std::size_t>(level) + static_cast<std::size_t>(l - 1)];
      row.a = params.a();
      row.b = params.b();
      row.level = l;
      row.region = params.region();
      row.distance = chain_distance(params, p1, p3, l);
      row.bottom_bound = std::pow(2.0 * params.a() + params.b(), l);
      row.verdict = scan_verdict(row.distance, previous);
      previous = row.distance;
    }
  });
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "a,b,level,region,D_p1p3,bottom_bound,verdict\n";
  for (const ScanRow& r : rows) {
    out << format_real(r.a) << ',' << format_real(r.b) << ',' << r.level << ',' << to_string(r.region)
        << ',' << format_real(r.distance) << ',' << format_real(r.bottom_bound) << ','
        << to_string(r.verdict) << '\n';
  }
}

}  // namespace carpet
