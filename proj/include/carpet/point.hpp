#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "carpet/cell.hpp"

namespace carpet {

/// Exact point of the unit square with coordinates num / (h * 3^exp),
/// h = 2 when the half flag is set and 1 otherwise. The half flag carries
/// the non-triadic anchors such as p2 = (1/2, 0).
///
/// Values are kept in lowest terms, so equality of representations is
/// equality of points.
class TriadicPoint {
 public:
  TriadicPoint() = default;
  TriadicPoint(std::int64_t num_x, std::int64_t num_y, int exp, bool half = false);

  /// Accepted forms, per coordinate: "n/3^L", "n/2*3^L", "n/2·3^L" or a
  /// plain integer denominator of the form 3^k or 2*3^k ("1/2", "4/9").
  /// The names p1..p8 select the boundary anchors.
  static TriadicPoint parse(std::string_view text);

  /// Anchor p_i, i = 1..8: corners and edge midpoints of the unit square.
  static TriadicPoint anchor(int i);

  /// Corner of a cell's square: corner 0 = lower-left, 1 = lower-right,
  /// 2 = upper-right, 3 = upper-left.
  static TriadicPoint cell_corner(const CellId& cell, int corner);

  std::int64_t num_x() const noexcept { return num_x_; }
  std::int64_t num_y() const noexcept { return num_y_; }
  int exp() const noexcept { return exp_; }
  bool half() const noexcept { return half_; }

  /// Numerators over the common denominator 2 * 3^m (requires m >= exp()).
  std::int64_t scaled_x(int m) const;
  std::int64_t scaled_y(int m) const;

  double x() const noexcept;
  double y() const noexcept;

  /// "nx/3^L,ny/3^L", or "nx/2·3^L,ny/2·3^L" for half points.
  std::string str() const;

  TriadicPoint mirror_x() const;     ///< x -> 1 - x
  TriadicPoint mirror_y() const;     ///< y -> 1 - y
  TriadicPoint swap_xy() const;      ///< (x, y) -> (y, x)

  auto operator<=>(const TriadicPoint&) const = default;

 private:
  void normalize();

  std::int64_t num_x_ = 0;
  std::int64_t num_y_ = 0;
  int exp_ = 0;
  bool half_ = false;
};

/// Max-norm distance |p - q|_inf.
double linf_distance(const TriadicPoint& p, const TriadicPoint& q);

bool cell_contains_point(const CellId& cell, const TriadicPoint& p);

/// Carpet-valid level-n cells whose closed square holds p (0 to 4 cells,
/// ordered by (ix, iy)). Empty iff p is not in the level-n approximation.
std::vector<CellId> locate_point(const TriadicPoint& p, int level);

struct Segment {
  TriadicPoint from;
  TriadicPoint to;
};

/// Closed square against closed segment, decided exactly.
bool cell_meets_segment(const CellId& cell, const Segment& segment);

/// Lower-left corner of the rectangle K_u ∩ K_v (requires the cells to meet).
/// For touching carpet cells this is a corner of the finer cell and therefore
/// a carpet point.
TriadicPoint junction_point(const CellId& u, const CellId& v);

}  // namespace carpet
