#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "carpet/chain.hpp"
#include "carpet/params.hpp"
#include "carpet/point.hpp"

namespace carpet {

/// Optional restriction on which cells a chain may use.
using CellFilter = std::function<bool(const CellId&)>;

struct SearchOptions {
  /// Cells meeting only at a corner count as adjacent. Turning this off
  /// restricts chains to edge contacts.
  bool corner_contacts = true;
  /// Upper bound for the dense per-node tables (distance + predecessor).
  std::size_t memory_budget_bytes = std::size_t{4} << 30;
};

struct DistanceQuery {
  WeightParams params;
  TriadicPoint source;
  TriadicPoint target;
  int max_level = 0;
  LevelMode mode = LevelMode::Mixed;
  CellFilter filter;
  SearchOptions options;
};

struct DistanceResult {
  double value = 0.0;
  Chain witness;             ///< optimal chain; empty when source == target
  std::size_t settled = 0;   ///< cells expanded by the search
};

/// Bytes of per-node state a search at this level cap needs.
std::size_t search_memory_bytes(int max_level, LevelMode mode);

/// Minimum total weight over admitted chains from a cell holding the source
/// to a cell holding the target. This is the level-capped upper
/// approximation of D_g; it is non-increasing in max_level for Mixed mode.
///
/// Best-first expansion with lazy re-insertion on a graph that is never
/// materialized. Every admitted source cell starts at its own weight, and
/// moving onto v adds weight(v). Equal keys pop in (level, ix, iy) order,
/// which makes witnesses reproducible.
///
/// Throws Error(InvalidPoint) if an endpoint is not in the level-n
/// approximation of the carpet, Error(Unreachable) if the filter rejects
/// every cell at an endpoint or disconnects them, and Error(LevelTooDeep)
/// when the tables would exceed the memory budget.
DistanceResult shortest_chain(const DistanceQuery& query);

/// Filter admitting cells whose closed square meets the segment.
CellFilter segment_filter(const Segment& segment);

/// Filter admitting `root` and the cells nested inside it.
CellFilter subcell_filter(const CellId& root);

/// shortest_chain restricted to cells meeting `segment`.
DistanceResult constrained_distance(DistanceQuery query, const Segment& segment);

struct BallCell {
  CellId cell;
  double dist = 0.0;  ///< cheapest chain from the center, weight(cell) included
};

/// Admitted cells at chain distance <= radius from the center, sorted by
/// (level, ix, iy). The union of their squares covers the metric ball at
/// this resolution from outside.
std::vector<BallCell> metric_ball(const WeightParams& params, const TriadicPoint& center,
                                  double radius, int max_level, LevelMode mode,
                                  const SearchOptions& options = {},
                                  const CellFilter& filter = {});

}  // namespace carpet
