#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "carpet/params.hpp"

namespace carpet {

/// Deepest level representable by CellId / TriadicPoint arithmetic.
/// Scaled coordinates use denominators up to 2 * 3^(2 * kMaxLevel), which
/// stays inside 64 bits.
inline constexpr int kMaxLevel = 18;

/// 3^n for 0 <= n <= 39.
std::int64_t pow3(int n);

/// Base-3 offset (dx, dy) of the subsquare addressed by digit 1..8, in the
/// order p1..p8 walk the boundary counter-clockwise from the origin.
inline constexpr std::array<std::array<int, 2>, 8> kDigitOffset{{
    {0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1},
}};

/// Digit at base-3 offset (dx, dy); 0 marks the removed middle square.
inline constexpr std::array<std::array<std::uint8_t, 3>, 3> kDigitAt{{
    {1, 8, 7},  // dx = 0, dy = 0..2
    {2, 0, 6},  // dx = 1
    {3, 4, 5},  // dx = 2
}};

/// Corner digits 1, 3, 5, 7 carry weight a; edge digits 2, 4, 6, 8 carry b.
constexpr bool is_corner_digit(int digit) noexcept { return digit % 2 == 1; }

/// Finite word over {1..8}; the empty word addresses the whole carpet.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> digits);

  /// Text form: digits 1-8, the empty string for the root.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint8_t>& digits() const noexcept { return digits_; }

  Word prefix(std::size_t n) const;
  Word child(std::uint8_t digit) const;

  int corner_count() const noexcept;
  int edge_count() const noexcept { return static_cast<int>(size()) - corner_count(); }

  std::string str() const;

  friend Word operator+(const Word& lhs, const Word& rhs);
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// g_{a,b}(w): a per corner digit, b per edge digit; weight(root) = 1.
double weight(const WeightParams& params, const Word& word);

/// A carpet cell in grid form: the closed square
/// [ix, ix + 1] x [iy, iy + 1] scaled by 3^-level.
struct CellId {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  auto operator<=>(const CellId&) const = default;

  /// In range and no base-3 position where both ix and iy have digit 1.
  bool valid() const noexcept;

  /// Ancestor at a coarser level (requires 0 <= lvl <= level).
  CellId ancestor(int lvl) const;

  /// Number of edge-type digits in the cell's word (valid cells only).
  int edge_digits() const noexcept;

  /// "n:ix:iy".
  std::string str() const;
  static CellId parse(std::string_view text);
};

double weight(const WeightParams& params, const CellId& cell);

CellId word_to_cell(const Word& word);

/// Throws Error(InvalidCell) when the cell is out of range or lies in a
/// removed square.
Word cell_to_word(const CellId& cell);

enum class Relation {
  Disjoint,
  Touch,     ///< nonempty intersection, neither contains the other
  Contains,  ///< first strictly contains second
  Within,    ///< first strictly inside second
  Same,
};

std::string_view to_string(Relation relation) noexcept;

/// Closed-square relation of two cells of arbitrary levels, decided in
/// integer arithmetic at the finer level.
Relation cells_relate(const CellId& u, const CellId& v);

/// Nonempty intersection. With corner_contacts == false only contacts of
/// positive length (or overlap) count.
bool cells_meet(const CellId& u, const CellId& v, bool corner_contacts = true);

/// All carpet-valid cells of one level, ordered by word index.
std::vector<CellId> cells_at_level(int level);

}  // namespace carpet
