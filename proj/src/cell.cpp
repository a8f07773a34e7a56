#include "carpet/cell.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "carpet/error.hpp"

namespace carpet {

namespace {

constexpr auto make_pow3_table() {
  std::array<std::int64_t, 40> table{};
  table[0] = 1;
  for (std::size_t i = 1; i < table.size(); ++i) table[i] = table[i - 1] * 3;
  return table;
}

constexpr auto kPow3 = make_pow3_table();

void check_digit(int digit) {
  if (digit < 1 || digit > 8) {
    throw Error(ErrorKind::InvalidWord,
                "word digit out of range 1..8: " + std::to_string(digit));
  }
}

}  // namespace

std::int64_t pow3(int n) {
  if (n < 0 || n >= static_cast<int>(kPow3.size())) {
    throw Error(ErrorKind::OutOfRange, "3^n out of range: n=" + std::to_string(n));
  }
  return kPow3[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (auto d : digits_) check_digit(d);
}

Word Word::parse(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char ch : text) {
    if (ch < '1' || ch > '8') {
      throw Error(ErrorKind::InvalidWord, "not a word over 1..8: '" + std::string(text) + "'");
    }
    digits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return Word(std::move(digits));
}

Word Word::prefix(std::size_t n) const {
  Word out;
  out.digits_.assign(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return out;
}

Word Word::child(std::uint8_t digit) const {
  check_digit(digit);
  Word out = *this;
  out.digits_.push_back(digit);
  return out;
}

int Word::corner_count() const noexcept {
  return static_cast<int>(std::count_if(digits_.begin(), digits_.end(),
                                        [](std::uint8_t d) { return is_corner_digit(d); }));
}

std::string Word::str() const {
  std::string out;
  out.reserve(size());
  for (auto d : digits_) out.push_back(static_cast<char>('0' + d));
  return out;
}

Word operator+(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out.digits_.insert(out.digits_.end(), rhs.digits_.begin(), rhs.digits_.end());
  return out;
}

double weight(const WeightParams& params, const Word& word) {
  return params.weight(word.corner_count(), word.edge_count());
}

// ---------------------------------------------------------------------------
// CellId

bool CellId::valid() const noexcept {
  if (level < 0 || level > kMaxLevel) return false;
  const std::int64_t side = kPow3[static_cast<std::size_t>(level)];
  if (ix < 0 || iy < 0 || ix >= side || iy >= side) return false;
  std::int64_t x = ix, y = iy;
  for (int i = 0; i < level; ++i, x /= 3, y /= 3) {
    if (x % 3 == 1 && y % 3 == 1) return false;
  }
  return true;
}

CellId CellId::ancestor(int lvl) const {
  if (lvl < 0 || lvl > level) {
    throw Error(ErrorKind::OutOfRange, "ancestor level " + std::to_string(lvl) +
                                           " not in [0," + std::to_string(level) + "]");
  }
  const std::int64_t s = pow3(level - lvl);
  return CellId{lvl, ix / s, iy / s};
}

int CellId::edge_digits() const noexcept {
  int count = 0;
  std::int64_t x = ix, y = iy;
  for (int i = 0; i < level; ++i, x /= 3, y /= 3) {
    if ((x % 3 == 1) != (y % 3 == 1)) ++count;
  }
  return count;
}

std::string CellId::str() const {
  std::ostringstream out;
  out << level << ':' << ix << ':' << iy;
  return out.str();
}

CellId CellId::parse(std::string_view text) {
  CellId cell;
  std::array<std::int64_t, 3> parts{};
  std::size_t part = 0;
  const char* cur = text.data();
  const char* end = text.data() + text.size();
  while (part < parts.size()) {
    auto [ptr, ec] = std::from_chars(cur, end, parts[part]);
    if (ec != std::errc{}) break;
    ++part;
    cur = ptr;
    if (part < parts.size()) {
      if (cur == end || *cur != ':') break;
      ++cur;
    }
  }
  if (part != parts.size() || cur != end) {
    throw Error(ErrorKind::Parse, "cell must be 'level:ix:iy', got '" + std::string(text) + "'");
  }
  cell.level = static_cast<int>(parts[0]);
  cell.ix = parts[1];
  cell.iy = parts[2];
  if (!cell.valid()) throw Error(ErrorKind::InvalidCell, "not a carpet cell: " + cell.str());
  return cell;
}

double weight(const WeightParams& params, const CellId& cell) {
  const int edges = cell.edge_digits();
  return params.weight(cell.level - edges, edges);
}

CellId word_to_cell(const Word& word) {
  if (static_cast<int>(word.size()) > kMaxLevel) {
    throw Error(ErrorKind::OutOfRange, "word longer than kMaxLevel");
  }
  CellId cell;
  for (auto d : word.digits()) {
    const auto& off = kDigitOffset[d - 1u];
    cell.ix = cell.ix * 3 + off[0];
    cell.iy = cell.iy * 3 + off[1];
    ++cell.level;
  }
  return cell;
}

Word cell_to_word(const CellId& cell) {
  if (!cell.valid()) throw Error(ErrorKind::InvalidCell, "not a carpet cell: " + cell.str());
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(cell.level));
  std::int64_t x = cell.ix, y = cell.iy;
  for (int i = cell.level - 1; i >= 0; --i, x /= 3, y /= 3) {
    digits[static_cast<std::size_t>(i)] = kDigitAt[x % 3][y % 3];
  }
  return Word(std::move(digits));
}

std::string_view to_string(Relation relation) noexcept {
  switch (relation) {
    case Relation::Disjoint: return "Disjoint";
    case Relation::Touch: return "Touch";
    case Relation::Contains: return "Contains";
    case Relation::Within: return "Within";
    case Relation::Same: return "Same";
  }
  return "Unknown";
}

namespace {

struct Overlap {
  std::int64_t x_len;  // negative when disjoint in x
  std::int64_t y_len;
};

// Intervals of u and v rescaled to the finer of the two levels.
Overlap overlap(const CellId& u, const CellId& v, int fine) {
  const std::int64_t su = pow3(fine - u.level);
  const std::int64_t sv = pow3(fine - v.level);
  const auto len = [](std::int64_t lo1, std::int64_t hi1, std::int64_t lo2, std::int64_t hi2) {
    return std::min(hi1, hi2) - std::max(lo1, lo2);
  };
  return Overlap{len(u.ix * su, (u.ix + 1) * su, v.ix * sv, (v.ix + 1) * sv),
                 len(u.iy * su, (u.iy + 1) * su, v.iy * sv, (v.iy + 1) * sv)};
}

}  // namespace

Relation cells_relate(const CellId& u, const CellId& v) {
  const int fine = std::max(u.level, v.level);
  const Overlap o = overlap(u, v, fine);
  if (o.x_len < 0 || o.y_len < 0) return Relation::Disjoint;
  if (u.level == v.level) return u == v ? Relation::Same : Relation::Touch;
  // Grid squares of different levels are either nested or interior-disjoint.
  if (o.x_len > 0 && o.y_len > 0) return u.level < v.level ? Relation::Contains : Relation::Within;
  return Relation::Touch;
}

bool cells_meet(const CellId& u, const CellId& v, bool corner_contacts) {
  const Overlap o = overlap(u, v, std::max(u.level, v.level));
  if (o.x_len < 0 || o.y_len < 0) return false;
  return corner_contacts || o.x_len > 0 || o.y_len > 0;
}

std::vector<CellId> cells_at_level(int level) {
  if (level < 0 || level > 9) {
    throw Error(ErrorKind::OutOfRange, "cells_at_level limited to levels 0..9");
  }
  std::vector<CellId> out;
  out.reserve(static_cast<std::size_t>(1) << (3 * level));
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(level), 1);
  for (;;) {
    CellId cell;
    cell.level = level;
    for (auto d : digits) {
      cell.ix = cell.ix * 3 + kDigitOffset[d - 1u][0];
      cell.iy = cell.iy * 3 + kDigitOffset[d - 1u][1];
    }
    out.push_back(cell);
    int pos = level - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == 8) {
      digits[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace carpet
