#include "carpet/oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "carpet/error.hpp"
#include "carpet/sampling.hpp"

namespace carpet {

namespace {

// Doubled anchor coordinates 2 p_i for i = 1..8.
constexpr std::array<std::array<std::int64_t, 2>, 8> kTwoP{{
    {0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1},
}};

struct Box {
  int level;
  std::int64_t ox, oy;      // level-grid origin
  std::int64_t x0, y0, len; // on the common lattice
  double w;
};

// Closed boxes, integer lattice.
bool meet(const Box& u, const Box& v, bool corners) {
  const std::int64_t ox = std::min(u.x0 + u.len, v.x0 + v.len) - std::max(u.x0, v.x0);
  const std::int64_t oy = std::min(u.y0 + u.len, v.y0 + v.len) - std::max(u.y0, v.y0);
  if (ox < 0 || oy < 0) return false;
  return corners || ox > 0 || oy > 0;
}

bool nested(const Box& u, const Box& v) {
  const auto inside = [](const Box& s, const Box& t) {
    return s.x0 >= t.x0 && s.y0 >= t.y0 && s.x0 + s.len <= t.x0 + t.len &&
           s.y0 + s.len <= t.y0 + t.len;
  };
  return inside(u, v) || inside(v, u);
}

bool holds(const Box& b, std::int64_t px, std::int64_t py) {
  return px >= b.x0 && px <= b.x0 + b.len && py >= b.y0 && py <= b.y0 + b.len;
}

}  // namespace

double exhaustive_oracle(const DistanceQuery& query, const OracleOptions& options) {
  const int cap = query.max_level;
  if (cap < 0 || cap > 2) throw Error(ErrorKind::OutOfRange, "oracle supports level caps 0..2");
  if (query.source == query.target) return 0.0;

  // Common lattice 2 * 3^m fine enough for the cells and both points.
  const int m = std::max({cap, query.source.exp(), query.target.exp()});
  const std::int64_t sx = query.source.scaled_x(m), sy = query.source.scaled_y(m);
  const std::int64_t tx = query.target.scaled_x(m), ty = query.target.scaled_y(m);

  std::vector<Box> boxes;
  const int lo = query.mode == LevelMode::Mixed ? 0 : cap;
  for (int level = lo; level <= cap; ++level) {
    const int count = level == 0 ? 1 : (level == 1 ? 8 : 64);
    for (int code = 0; code < count; ++code) {
      std::int64_t ox = 0, oy = 0;
      double w = 1.0;
      int rest = code;
      std::vector<int> digits(static_cast<std::size_t>(level));
      for (int k = level - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = rest % 8;
        rest /= 8;
      }
      for (int d : digits) {
        ox = 3 * ox + kTwoP[static_cast<std::size_t>(d)][0];
        oy = 3 * oy + kTwoP[static_cast<std::size_t>(d)][1];
        w *= (d % 2 == 0) ? query.params.a() : query.params.b();
      }
      const std::int64_t unit = 2 * pow3(m - level);
      Box box{level, ox, oy, ox * unit, oy * unit, unit, w};
      if (query.filter && !query.filter(CellId{level, ox, oy})) continue;
      boxes.push_back(box);
    }
  }

  const std::size_t n = boxes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !meet(boxes[i], boxes[j], query.options.corner_contacts)) continue;
      if (!options.containment_edges && nested(boxes[i], boxes[j])) continue;
      adj[i].push_back(j);
    }
  }

  const long double inf = std::numeric_limits<long double>::infinity();
  std::vector<long double> dist(n, inf);
  for (std::size_t i = 0; i < n; ++i) {
    if (holds(boxes[i], sx, sy)) dist[i] = boxes[i].w;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] == inf) continue;
      for (std::size_t j : adj[i]) {
        const long double candidate = dist[i] + boxes[j].w;
        if (candidate < dist[j]) {
          dist[j] = candidate;
          changed = true;
        }
      }
    }
  }

  long double best = inf;
  for (std::size_t i = 0; i < n; ++i) {
    if (holds(boxes[i], tx, ty)) best = std::min(best, dist[i]);
  }
  return static_cast<double>(best);
}

OracleReport oracle_equivalence(std::size_t samples, std::uint64_t seed, int max_level) {
  if (max_level < 0 || max_level > 2) throw Error(ErrorKind::OutOfRange, "oracle supports level caps 0..2");
  OracleReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_rng(seed, i);
    const auto unit = [&] { return 0.05 + 0.9 * static_cast<double>(uniform_below(rng, 1u << 20)) / (1u << 20); };
    const double a = unit(), b = unit();
    const int level = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_level) + 1));
    const TriadicPoint p = random_carpet_point(rng, std::max(level, 1));
    const TriadicPoint q = random_carpet_point(rng, std::max(level, 1));
    const LevelMode mode = uniform_below(rng, 2) == 0 ? LevelMode::Mixed : LevelMode::Pure;
    const bool segment = uniform_below(rng, 3) == 0;

    OracleCase c{DistanceQuery{WeightParams(a, b), p, q, level, mode, {}, {}}, segment, 0.0, 0.0, false};
    if (segment) c.query.filter = segment_filter(Segment{p, q});
    // Level-0 draws may pick points of a finer grid; both sides must then
    // agree that they are outside the approximation, so lift the level.
    if (locate_point(p, level).empty() || locate_point(q, level).empty()) c.query.max_level = max_level;
    try {
      c.search = shortest_chain(c.query).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unreachable) throw;
      c.search = std::numeric_limits<double>::infinity();
    }
    c.oracle = exhaustive_oracle(c.query);
    const double scale = std::max(std::abs(c.search), std::abs(c.oracle));
    c.ok = c.search == c.oracle ||
           std::abs(c.search - c.oracle) <= 8.0 * std::numeric_limits<double>::epsilon() * scale;
    ++report.checked;
    if (!c.ok) ++report.violations;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace carpet
