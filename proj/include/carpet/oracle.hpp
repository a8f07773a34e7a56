#pragma once

#include <cstdint>
#include <vector>

#include "carpet/search.hpp"

namespace carpet {

struct OracleOptions {
  /// Also join cells nested in one another. Such edges never shorten a
  /// chain, so the value must not change.
  bool containment_edges = false;
};

/// Brute-force minimum chain cost for level caps <= 2 (at most 73 cells).
/// Builds the full cell list and adjacency from scratch and relaxes every
/// edge until nothing changes; shares no code with shortest_chain beyond
/// point parsing. Returns +inf when the endpoints are not connected and 0
/// when source == target.
///
/// Throws Error(OutOfRange) for max_level outside 0..2.
double exhaustive_oracle(const DistanceQuery& query, const OracleOptions& options = {});

struct OracleCase {
  DistanceQuery query;
  bool segment_filtered = false;
  double search = 0.0;  ///< shortest_chain value (+inf when Unreachable)
  double oracle = 0.0;
  bool ok = false;
};

struct OracleReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<OracleCase> cases;
};

/// shortest_chain against exhaustive_oracle on seeded random instances:
/// params in (0.05, 0.95)^2, endpoints among cell corners and edge
/// midpoints, Mixed or Pure mode, and for a third of the draws a filter
/// along the segment joining the endpoints. Values must agree to 8 ulp.
OracleReport oracle_equivalence(std::size_t samples, std::uint64_t seed, int max_level = 2);

}  // namespace carpet
