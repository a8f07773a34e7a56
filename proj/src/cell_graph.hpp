#pragma once

// Dense indexing and neighbor enumeration for the implicit chain graph.
// Not part of the installed interface.

#include <cstdint>
#include <vector>

#include "carpet/cell.hpp"

namespace carpet::detail {

/// Word index of a cell (digits 1..8 read as base-8 numerals 0..7) and its
/// number of edge-type digits. Invalid cells report valid == false.
struct Encoded {
  bool valid = false;
  std::uint64_t local = 0;
  int edge_digits = 0;
};

inline Encoded encode(const CellId& c) {
  Encoded e;
  std::int64_t x = c.ix, y = c.iy;
  std::uint64_t place = 1;
  for (int i = 0; i < c.level; ++i, x /= 3, y /= 3, place <<= 3) {
    const auto dx = static_cast<int>(x % 3), dy = static_cast<int>(y % 3);
    const std::uint8_t digit = kDigitAt[dx][dy];
    if (digit == 0) return e;
    e.local += (digit - 1u) * place;
    e.edge_digits += (dx == 1) != (dy == 1);
  }
  e.valid = true;
  return e;
}

inline CellId decode(int level, std::uint64_t local) {
  CellId c{level, 0, 0};
  std::int64_t scale = 1;
  for (int i = 0; i < level; ++i, local >>= 3, scale *= 3) {
    const auto& off = kDigitOffset[local & 7u];
    c.ix += off[0] * scale;
    c.iy += off[1] * scale;
  }
  return c;
}

/// Cell levels min_level..max_level laid out level-major in one array.
class LevelIndex {
 public:
  LevelIndex(int min_level, int max_level) : min_level_(min_level), max_level_(max_level) {
    std::uint64_t offset = 0;
    for (int l = min_level; l <= max_level; ++l) {
      offsets_.push_back(offset);
      offset += std::uint64_t{1} << (3 * l);
    }
    total_ = offset;
  }

  std::uint64_t size() const noexcept { return total_; }
  int min_level() const noexcept { return min_level_; }
  int max_level() const noexcept { return max_level_; }

  std::uint64_t global(int level, std::uint64_t local) const noexcept {
    return offsets_[static_cast<std::size_t>(level - min_level_)] + local;
  }

  CellId cell(std::uint64_t global) const noexcept {
    int l = max_level_;
    while (offsets_[static_cast<std::size_t>(l - min_level_)] > global) --l;
    return decode(l, global - offsets_[static_cast<std::size_t>(l - min_level_)]);
  }

 private:
  int min_level_;
  int max_level_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> offsets_;
};

/// Calls visit(CellId) for every in-range cell of levels
/// [min_level, max_level] that meets `c` without nesting. Carpet validity
/// of the visited cells is left to the caller.
template <class Visit>
void for_each_touching(const CellId& c, int min_level, int max_level, bool corners, Visit&& visit) {
  const int l = c.level;

  if (l >= min_level && l <= max_level) {
    const std::int64_t side = pow3(l);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if ((dx == 0 && dy == 0) || (!corners && dx != 0 && dy != 0)) continue;
        const std::int64_t x = c.ix + dx, y = c.iy + dy;
        if (x >= 0 && y >= 0 && x < side && y < side) visit(CellId{l, x, y});
      }
    }
  }

  // Coarser: neighbors of the ancestor that c touches through its boundary.
  for (int lc = min_level; lc < l && lc <= max_level; ++lc) {
    const std::int64_t s = pow3(l - lc);
    const std::int64_t ax = c.ix / s, ay = c.iy / s;
    const std::int64_t rx = c.ix % s, ry = c.iy % s;
    const bool left = rx == 0, right = rx == s - 1, bottom = ry == 0, top = ry == s - 1;
    if (!(left || right || bottom || top)) continue;
    const std::int64_t side = pow3(lc);
    for (int dy = -1; dy <= 1; ++dy) {
      if ((dy == -1 && !bottom) || (dy == 1 && !top)) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        if ((dx == 0 && dy == 0) || (dx == -1 && !left) || (dx == 1 && !right)) continue;
        if (!corners && dx != 0 && dy != 0) continue;
        const std::int64_t x = ax + dx, y = ay + dy;
        if (x >= 0 && y >= 0 && x < side && y < side) visit(CellId{lc, x, y});
      }
    }
  }

  // Finer: the one-cell-thick exterior ring of c at each finer level.
  for (int lf = std::max(l + 1, min_level); lf <= max_level; ++lf) {
    const std::int64_t s = pow3(lf - l);
    const std::int64_t side = pow3(lf);
    const std::int64_t x0 = c.ix * s, x1 = x0 + s;  // columns [x0, x1)
    const std::int64_t y0 = c.iy * s, y1 = y0 + s;
    const std::int64_t xa = corners ? x0 - 1 : x0, xb = corners ? x1 : x1 - 1;
    const std::int64_t xlo = std::max<std::int64_t>(xa, 0), xhi = std::min(xb, side - 1);
    if (y0 > 0) {
      for (std::int64_t x = xlo; x <= xhi; ++x) visit(CellId{lf, x, y0 - 1});
    }
    if (y1 < side) {
      for (std::int64_t x = xlo; x <= xhi; ++x) visit(CellId{lf, x, y1});
    }
    if (x0 > 0) {
      for (std::int64_t y = y0; y < y1; ++y) visit(CellId{lf, x0 - 1, y});
    }
    if (x1 < side) {
      for (std::int64_t y = y0; y < y1; ++y) visit(CellId{lf, x1, y});
    }
  }
}

}  // namespace carpet::detail
