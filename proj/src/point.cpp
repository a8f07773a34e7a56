#include "carpet/point.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>

#include "carpet/error.hpp"

namespace carpet {

namespace {

struct Coordinate {
  std::int64_t num = 0;
  int exp = 0;
  bool half = false;
};

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "' in point '" +
                                      std::string(whole) + "'");
  }
  return value;
}

Coordinate parse_coordinate(std::string_view text, std::string_view whole) {
  Coordinate c;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    c.num = parse_int(text, whole);
    return c;
  }
  c.num = parse_int(text.substr(0, slash), whole);
  std::string_view denom = text.substr(slash + 1);

  for (std::string_view prefix : {std::string_view("2*"), std::string_view("2\xC2\xB7")}) {
    if (denom.substr(0, prefix.size()) == prefix) {
      c.half = true;
      denom.remove_prefix(prefix.size());
      break;
    }
  }
  if (denom.substr(0, 2) == "3^") {
    c.exp = static_cast<int>(parse_int(denom.substr(2), whole));
    return c;
  }
  std::int64_t d = parse_int(denom, whole);
  if (!c.half && d % 2 == 0) {
    c.half = true;
    d /= 2;
  }
  while (d > 1 && d % 3 == 0) {
    d /= 3;
    ++c.exp;
  }
  if (d != 1) {
    throw Error(ErrorKind::Parse, "denominator must be 3^k or 2*3^k in point '" +
                                      std::string(whole) + "'");
  }
  return c;
}

}  // namespace

TriadicPoint::TriadicPoint(std::int64_t num_x, std::int64_t num_y, int exp, bool half)
    : num_x_(num_x), num_y_(num_y), exp_(exp), half_(half) {
  if (exp < 0 || exp > kMaxLevel) {
    throw Error(ErrorKind::InvalidPoint, "point exponent out of range: " + std::to_string(exp));
  }
  const std::int64_t denom = (half ? 2 : 1) * pow3(exp);
  if (num_x < 0 || num_y < 0 || num_x > denom || num_y > denom) {
    throw Error(ErrorKind::InvalidPoint, "point outside the unit square");
  }
  normalize();
}

void TriadicPoint::normalize() {
  if (half_ && num_x_ % 2 == 0 && num_y_ % 2 == 0) {
    num_x_ /= 2;
    num_y_ /= 2;
    half_ = false;
  }
  while (exp_ > 0 && num_x_ % 3 == 0 && num_y_ % 3 == 0) {
    num_x_ /= 3;
    num_y_ /= 3;
    --exp_;
  }
}

TriadicPoint TriadicPoint::parse(std::string_view text) {
  if (text.size() == 2 && text[0] == 'p' && text[1] >= '1' && text[1] <= '8') {
    return anchor(text[1] - '0');
  }
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorKind::Parse, "point must be 'x,y', got '" + std::string(text) + "'");
  }
  Coordinate cx = parse_coordinate(text.substr(0, comma), text);
  Coordinate cy = parse_coordinate(text.substr(comma + 1), text);
  const bool half = cx.half || cy.half;
  const int exp = std::max(cx.exp, cy.exp);
  if (exp > kMaxLevel) throw Error(ErrorKind::InvalidPoint, "point exponent too large");
  const auto lift = [&](const Coordinate& c) {
    return c.num * (half && !c.half ? 2 : 1) * pow3(exp - c.exp);
  };
  return TriadicPoint(lift(cx), lift(cy), exp, half);
}

TriadicPoint TriadicPoint::anchor(int i) {
  if (i < 1 || i > 8) throw Error(ErrorKind::OutOfRange, "anchor index must be 1..8");
  // p_i = offset(i) / 2, so the doubled coordinates are the digit offsets.
  const auto& off = kDigitOffset[static_cast<std::size_t>(i - 1)];
  return TriadicPoint(off[0], off[1], 0, true);
}

TriadicPoint TriadicPoint::cell_corner(const CellId& cell, int corner) {
  static constexpr std::array<std::array<int, 2>, 4> kCorner{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  if (corner < 0 || corner > 3) throw Error(ErrorKind::OutOfRange, "corner index must be 0..3");
  const auto& c = kCorner[static_cast<std::size_t>(corner)];
  return TriadicPoint(cell.ix + c[0], cell.iy + c[1], cell.level);
}

std::int64_t TriadicPoint::scaled_x(int m) const {
  return num_x_ * (half_ ? 1 : 2) * pow3(m - exp_);
}

std::int64_t TriadicPoint::scaled_y(int m) const {
  return num_y_ * (half_ ? 1 : 2) * pow3(m - exp_);
}

double TriadicPoint::x() const noexcept {
  return static_cast<double>(num_x_) / (static_cast<double>(half_ ? 2 : 1) * static_cast<double>(pow3(exp_)));
}

double TriadicPoint::y() const noexcept {
  return static_cast<double>(num_y_) / (static_cast<double>(half_ ? 2 : 1) * static_cast<double>(pow3(exp_)));
}

std::string TriadicPoint::str() const {
  const std::string denom = std::string(half_ ? "/2\xC2\xB7" : "/") + "3^" + std::to_string(exp_);
  return std::to_string(num_x_) + denom + "," + std::to_string(num_y_) + denom;
}

TriadicPoint TriadicPoint::mirror_x() const {
  const std::int64_t denom = (half_ ? 2 : 1) * pow3(exp_);
  return TriadicPoint(denom - num_x_, num_y_, exp_, half_);
}

TriadicPoint TriadicPoint::mirror_y() const {
  const std::int64_t denom = (half_ ? 2 : 1) * pow3(exp_);
  return TriadicPoint(num_x_, denom - num_y_, exp_, half_);
}

TriadicPoint TriadicPoint::swap_xy() const { return TriadicPoint(num_y_, num_x_, exp_, half_); }

double linf_distance(const TriadicPoint& p, const TriadicPoint& q) {
  const int m = std::max(p.exp(), q.exp());
  const std::int64_t dx = std::llabs(p.scaled_x(m) - q.scaled_x(m));
  const std::int64_t dy = std::llabs(p.scaled_y(m) - q.scaled_y(m));
  return static_cast<double>(std::max(dx, dy)) / (2.0 * static_cast<double>(pow3(m)));
}

bool cell_contains_point(const CellId& cell, const TriadicPoint& p) {
  const int m = std::max(cell.level, p.exp());
  const std::int64_t w = 2 * pow3(m - cell.level);
  const std::int64_t x = p.scaled_x(m), y = p.scaled_y(m);
  return cell.ix * w <= x && x <= (cell.ix + 1) * w && cell.iy * w <= y && y <= (cell.iy + 1) * w;
}

std::vector<CellId> locate_point(const TriadicPoint& p, int level) {
  if (level < 0 || level > kMaxLevel) {
    throw Error(ErrorKind::OutOfRange, "level out of range: " + std::to_string(level));
  }
  const int m = std::max(level, p.exp());
  const std::int64_t w = 2 * pow3(m - level);
  const std::int64_t side = pow3(level);
  const auto candidates = [&](std::int64_t coord) {
    std::vector<std::int64_t> out;
    const std::int64_t k = coord / w;
    if (coord % w == 0 && k - 1 >= 0) out.push_back(k - 1);
    if (k < side) out.push_back(k);
    return out;
  };
  std::vector<CellId> cells;
  for (std::int64_t ix : candidates(p.scaled_x(m))) {
    for (std::int64_t iy : candidates(p.scaled_y(m))) {
      CellId c{level, ix, iy};
      if (c.valid()) cells.push_back(c);
    }
  }
  return cells;
}

bool cell_meets_segment(const CellId& cell, const Segment& segment) {
  const int m = std::max({cell.level, segment.from.exp(), segment.to.exp()});
  const std::int64_t w = 2 * pow3(m - cell.level);
  const __int128 x0 = cell.ix * w, x1 = (cell.ix + 1) * w;
  const __int128 y0 = cell.iy * w, y1 = (cell.iy + 1) * w;
  const __int128 px = segment.from.scaled_x(m), py = segment.from.scaled_y(m);
  const __int128 qx = segment.to.scaled_x(m), qy = segment.to.scaled_y(m);

  if (std::max(px, qx) < x0 || std::min(px, qx) > x1) return false;
  if (std::max(py, qy) < y0 || std::min(py, qy) > y1) return false;

  // Bounding boxes overlap; the segment misses the square only if all four
  // corners lie strictly on one side of its supporting line.
  const __int128 dx = qx - px, dy = qy - py;
  int positive = 0, negative = 0;
  for (auto [cx, cy] : {std::pair{x0, y0}, std::pair{x1, y0}, std::pair{x1, y1}, std::pair{x0, y1}}) {
    const __int128 cross = dx * (cy - py) - dy * (cx - px);
    if (cross > 0) ++positive;
    if (cross < 0) ++negative;
  }
  return positive != 4 && negative != 4;
}

TriadicPoint junction_point(const CellId& u, const CellId& v) {
  const int fine = std::max(u.level, v.level);
  const std::int64_t su = pow3(fine - u.level), sv = pow3(fine - v.level);
  const std::int64_t x = std::max(u.ix * su, v.ix * sv);
  const std::int64_t y = std::max(u.iy * su, v.iy * sv);
  if (x > std::min((u.ix + 1) * su, (v.ix + 1) * sv) || y > std::min((u.iy + 1) * su, (v.iy + 1) * sv)) {
    throw Error(ErrorKind::InvalidChain, "junction of disjoint cells " + u.str() + " and " + v.str());
  }
  return TriadicPoint(x, y, fine);
}

}  // namespace carpet
