#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carpet/cell.hpp"
#include "carpet/params.hpp"

namespace carpet {

/// Sequence of cells (levels may differ) in which consecutive cells meet.
using Chain = std::vector<CellId>;

/// Which cell levels a search admits: all of 0..n, or level n only.
enum class LevelMode { Mixed, Pure };

std::string_view to_string(LevelMode mode) noexcept;

/// Consecutive cells have nonempty intersection, and every cell is valid.
bool validate_chain(std::span<const CellId> chain, bool corner_contacts = true);

/// Total weight (sum of cell weights, endpoints included).
/// Throws Error(InvalidChain) for chains that fail validate_chain.
double chain_cost(const WeightParams& params, std::span<const CellId> chain);

/// Comma-separated "n:ix:iy" list.
std::string format_chain(std::span<const CellId> chain);
Chain parse_chain(std::string_view text);

/// Chain from comma-separated words, e.g. "11,12,13".
Chain chain_from_words(std::string_view text);

enum class CanonicalKind {
  Bottom,    ///< level-n cells along p1 p3, cost (2a + b)^n
  Diagonal,  ///< level-n cells along p2 p4, cost (a + 2b)^n
};

Chain canonical_chain(CanonicalKind kind, int level);

/// Admitted cells meeting `cell` without nesting: same-level ring, coarser
/// cells touching from outside the ancestor, and the exterior ring of
/// `cell` at each finer admitted level. Sorted by (level, ix, iy).
std::vector<CellId> neighbors(const CellId& cell, int max_level, LevelMode mode,
                              bool corner_contacts = true);

}  // namespace carpet
