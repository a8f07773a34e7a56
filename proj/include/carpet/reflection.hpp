#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carpet/chain.hpp"
#include "carpet/params.hpp"

namespace carpet {

enum class LineKind {
  Vertical,      ///< x = c
  Horizontal,    ///< y = c
  Diagonal,      ///< y = x + c
  AntiDiagonal,  ///< x + y = c
};

/// Symmetry line with constant c = num / (2 * 3^exp).
struct GridLine {
  LineKind kind = LineKind::Vertical;
  std::int64_t num = 0;
  int exp = 0;

  static GridLine vertical(std::int64_t num, int exp) { return {LineKind::Vertical, num, exp}; }
  static GridLine horizontal(std::int64_t num, int exp) { return {LineKind::Horizontal, num, exp}; }
  static GridLine diagonal(std::int64_t num, int exp) { return {LineKind::Diagonal, num, exp}; }
  static GridLine antidiagonal(std::int64_t num, int exp) { return {LineKind::AntiDiagonal, num, exp}; }

  /// x + y = 7/6 - 3^-n / 6 and its partner x + y = 7/6 + 3^-n / 6.
  static GridLine ell(int n);
  static GridLine ell_prime(int n);
  /// y = 1 / (2 * 3^(n-1)) and y = 1 / 3^n, n >= 1.
  static GridLine big_l(int n);
  static GridLine big_l_prime(int n);

  double value() const;
  /// Level-m cells map onto level-m grid squares: 2c * 3^m must be an
  /// integer for axis lines and c * 3^m for the two diagonals.
  bool compatible(int level) const;
  std::string str() const;
};

/// Mirror image of one cell. Throws Error(MisalignedLine),
/// Error(OutOfDomain) or Error(NotCarpetCell).
CellId reflect_cell(const CellId& cell, const GridLine& line);

/// Cell-wise mirror image; errors as reflect_cell.
Chain reflect_chain(const Chain& chain, const GridLine& line);

/// Change in (corner, edge) digit counts from `from` to `to`, so that
/// weight(to) = weight(from) * a^corner * b^edge exactly.
struct ExponentShift {
  int corner = 0;
  int edge = 0;
  bool operator==(const ExponentShift&) const = default;
};

ExponentShift exponent_shift(const CellId& from, const CellId& to);

enum class ReflectionRule {
  EllBand,     ///< ell_n / ell'_n reflections in the hexagon band, a >= b
  UpperStrip,  ///< across L_n, weight preserved, a <= b
  LowerStrip,  ///< across L'_n, weight times a/b, a <= b
};

struct ReflectionSample {
  CellId cell;
  CellId image;
  GridLine line;
  ExponentShift shift;
  bool ok = false;
};

struct ReflectionReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<ReflectionSample> samples;
};

/// Checks the weight law of one reflection rule on cells of `level` whose
/// centers lie in the rule's region. With samples >= region size every
/// region cell is checked; otherwise a seeded subset is drawn.
///
/// EllBand needs level >= n + 1, the other rules level >= n.
/// Throws Error(WrongRegion) if the params are on the wrong side of a = b
/// and Error(RegionEmpty) if no cell of the level is in the region.
ReflectionReport verify_reflection_rule(const WeightParams& params, ReflectionRule rule, int n,
                                         int level, std::size_t samples, std::uint64_t seed);

struct MirrorSample {
  CellId from;  ///< cell holding the chain
  CellId to;    ///< edge-sharing neighbor receiving the image
  Chain chain;
  Chain image;
  ExponentShift shift;  ///< common per-cell shift, if any
  double ratio = 0.0;   ///< cost(image) / cost(chain)
  bool ok = false;
};

struct MirrorReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<MirrorSample> samples;
};

/// Random chains inside a cell K_v mirrored across the edge v shares with a
/// same-level neighbor w. Every image cell must differ from its preimage by
/// the same shift (+1, -1) or (-1, +1), i.e. the cost ratio is a/b or b/a.
MirrorReport verify_mirror_ratio(const WeightParams& params, std::size_t samples,
                                 std::uint64_t seed, int max_level = 4);

}  // namespace carpet
