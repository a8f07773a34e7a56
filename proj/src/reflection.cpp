#include "carpet/reflection.hpp"

#include <algorithm>

#include "carpet/error.hpp"
#include "carpet/sampling.hpp"

namespace carpet {

namespace {

using i128 = __int128;

// num / (2 * 3^exp) compared with other / (2 * 3^other_exp).
int compare_half_triadic(std::int64_t num, int exp, std::int64_t other, int other_exp) {
  const int e = std::max(exp, other_exp);
  const i128 lhs = static_cast<i128>(num) * pow3(e - exp);
  const i128 rhs = static_cast<i128>(other) * pow3(e - other_exp);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Grid offset of the line at `level`: 2c * 3^m for axis lines, c * 3^m for
// diagonals. Returns false when it is not an integer.
bool line_offset(const GridLine& line, int level, std::int64_t& offset) {
  const bool axis = line.kind == LineKind::Vertical || line.kind == LineKind::Horizontal;
  const std::int64_t divisor_base = axis ? 1 : 2;
  if (level >= line.exp) {
    const i128 t = static_cast<i128>(line.num) * pow3(level - line.exp);
    if (t % divisor_base != 0) return false;
    offset = static_cast<std::int64_t>(t / divisor_base);
    return true;
  }
  const std::int64_t d = divisor_base * pow3(line.exp - level);
  if (line.num % d != 0) return false;
  offset = line.num / d;
  return true;
}

int corner_digits(const CellId& c) { return c.level - c.edge_digits(); }

}  // namespace

GridLine GridLine::ell(int n) {
  if (n < 0 || n > 16) throw Error(ErrorKind::OutOfRange, "ell index out of range");
  return antidiagonal(7 * pow3(n) - 1, n + 1);
}

GridLine GridLine::ell_prime(int n) {
  if (n < 0 || n > 16) throw Error(ErrorKind::OutOfRange, "ell' index out of range");
  return antidiagonal(7 * pow3(n) + 1, n + 1);
}

GridLine GridLine::big_l(int n) {
  if (n < 1 || n > 17) throw Error(ErrorKind::OutOfRange, "L index out of range");
  return horizontal(1, n - 1);
}

GridLine GridLine::big_l_prime(int n) {
  if (n < 1 || n > 17) throw Error(ErrorKind::OutOfRange, "L' index out of range");
  return horizontal(2, n);
}

double GridLine::value() const { return static_cast<double>(num) / (2.0 * static_cast<double>(pow3(exp))); }

bool GridLine::compatible(int level) const {
  std::int64_t offset = 0;
  return line_offset(*this, level, offset);
}

std::string GridLine::str() const {
  const std::string c = std::to_string(num) + "/2·3^" + std::to_string(exp);
  switch (kind) {
    case LineKind::Vertical: return "x=" + c;
    case LineKind::Horizontal: return "y=" + c;
    case LineKind::Diagonal: return "y=x+" + c;
    case LineKind::AntiDiagonal: return "x+y=" + c;
  }
  return c;
}

CellId reflect_cell(const CellId& cell, const GridLine& line) {
  std::int64_t t = 0;
  if (!line_offset(line, cell.level, t)) {
    throw Error(ErrorKind::MisalignedLine,
                "line " + line.str() + " is not aligned with level " + std::to_string(cell.level));
  }
  CellId image = cell;
  switch (line.kind) {
    case LineKind::Vertical: image.ix = t - cell.ix - 1; break;
    case LineKind::Horizontal: image.iy = t - cell.iy - 1; break;
    case LineKind::Diagonal:
      image.ix = cell.iy - t;
      image.iy = cell.ix + t;
      break;
    case LineKind::AntiDiagonal:
      image.ix = t - cell.iy - 1;
      image.iy = t - cell.ix - 1;
      break;
  }
  const std::int64_t side = pow3(cell.level);
  if (image.ix < 0 || image.iy < 0 || image.ix >= side || image.iy >= side) {
    throw Error(ErrorKind::OutOfDomain,
                "image of " + cell.str() + " across " + line.str() + " leaves the unit square");
  }
  if (!image.valid()) {
    throw Error(ErrorKind::NotCarpetCell,
                "image of " + cell.str() + " across " + line.str() + " is a removed square");
  }
  return image;
}

Chain reflect_chain(const Chain& chain, const GridLine& line) {
  Chain image;
  image.reserve(chain.size());
  for (const CellId& c : chain) image.push_back(reflect_cell(c, line));
  return image;
}

ExponentShift exponent_shift(const CellId& from, const CellId& to) {
  return {corner_digits(to) - corner_digits(from), to.edge_digits() - from.edge_digits()};
}

namespace {

// Rule line for a cell, or nullopt-like false when the cell is outside.
bool rule_line(ReflectionRule rule, int n, const CellId& c, GridLine& line) {
  const int m = c.level;
  const std::int64_t cy = 2 * c.iy + 1;                  // center y over 2 * 3^m
  if (rule == ReflectionRule::EllBand) {
    const std::int64_t s = 2 * (c.ix + c.iy + 1);       // center x + y
    const std::int64_t d = 2 * (c.ix - c.iy);           // center x - y
    if (compare_half_triadic(cy, m, 4, 2) < 0 || compare_half_triadic(cy, m, 8, 2) > 0) return false;
    if (compare_half_triadic(d, m, 2, 1) < 0 || compare_half_triadic(d, m, 4, 1) > 0) return false;
    const GridLine lo = GridLine::ell(n - 1), hi = GridLine::ell_prime(n - 1);
    const GridLine in_lo = GridLine::ell(n), in_hi = GridLine::ell_prime(n);
    if (compare_half_triadic(s, m, lo.num, lo.exp) < 0 || compare_half_triadic(s, m, hi.num, hi.exp) > 0) {
      return false;
    }
    if (compare_half_triadic(s, m, in_lo.num, in_lo.exp) < 0) {
      line = in_lo;
      return true;
    }
    if (compare_half_triadic(s, m, in_hi.num, in_hi.exp) > 0) {
      line = in_hi;
      return true;
    }
    return false;
  }
  if (rule == ReflectionRule::UpperStrip) {
    // 1 / (2 * 3^(n-1)) < y <= 1 / 3^(n-1)
    if (compare_half_triadic(cy, m, 1, n - 1) <= 0 || compare_half_triadic(cy, m, 2, n - 1) > 0) return false;
    line = GridLine::big_l(n);
    return true;
  }
  // 1 / 3^n < y <= 1 / (2 * 3^(n-1))
  if (compare_half_triadic(cy, m, 2, n) <= 0 || compare_half_triadic(cy, m, 1, n - 1) > 0) return false;
  line = GridLine::big_l_prime(n);
  return true;
}

bool law_holds(const WeightParams& params, ReflectionRule rule, const ExponentShift& shift) {
  if (rule == ReflectionRule::UpperStrip) return shift == ExponentShift{0, 0};
  if (rule == ReflectionRule::LowerStrip) return shift == ExponentShift{1, -1};
  // g(image) <= g(cell) with a >= b: the image may only trade corner digits
  // for edge digits, unless a == b.
  if (shift.corner + shift.edge != 0) return false;
  return params.a() == params.b() || shift.corner <= 0;
}

}  // namespace

ReflectionReport verify_reflection_rule(const WeightParams& params, ReflectionRule rule, int n,
                                         int level, std::size_t samples, std::uint64_t seed) {
  const ParamRegion region = params.region();
  if (rule == ReflectionRule::EllBand) {
    if (region != ParamRegion::Sigma2Interior && region != ParamRegion::OnI2 &&
        region != ParamRegion::OnBothCritical) {
      throw Error(ErrorKind::WrongRegion, "ell reflections need params with a >= b in the metric region");
    }
    if (n < 1 || level < n + 1) throw Error(ErrorKind::OutOfRange, "ell reflections need n >= 1, level >= n + 1");
  } else {
    if (region != ParamRegion::Sigma1Interior && region != ParamRegion::OnI1 &&
        region != ParamRegion::OnBothCritical) {
      throw Error(ErrorKind::WrongRegion, "L reflections need params with a <= b in the metric region");
    }
    if (n < 1 || level < n) throw Error(ErrorKind::OutOfRange, "L reflections need n >= 1, level >= n");
  }

  std::vector<std::pair<CellId, GridLine>> pool;
  for (const CellId& c : cells_at_level(level)) {
    GridLine line;
    if (rule_line(rule, n, c, line)) pool.emplace_back(c, line);
  }
  if (pool.empty()) {
    throw Error(ErrorKind::RegionEmpty, "no level-" + std::to_string(level) + " cell in the region");
  }

  std::vector<std::size_t> picks;
  if (samples >= pool.size()) {
    for (std::size_t i = 0; i < pool.size(); ++i) picks.push_back(i);
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      auto rng = sample_rng(seed, i);
      picks.push_back(static_cast<std::size_t>(uniform_below(rng, pool.size())));
    }
  }
  if (picks.empty()) throw Error(ErrorKind::RegionEmpty, "no cell sampled from the region");

  ReflectionReport report;
  for (std::size_t i : picks) {
    const auto& [cell, line] = pool[i];
    ReflectionSample s{cell, cell, line, {}, false};
    try {
      s.image = reflect_cell(cell, line);
      s.shift = exponent_shift(cell, s.image);
      s.ok = law_holds(params, rule, s.shift);
    } catch (const Error&) {
      s.ok = false;
    }
    ++report.checked;
    if (!s.ok) ++report.violations;
    report.samples.push_back(s);
  }
  return report;
}

MirrorReport verify_mirror_ratio(const WeightParams& params, std::size_t samples,
                                 std::uint64_t seed, int max_level) {
  if (max_level < 2 || max_level > 9) throw Error(ErrorKind::OutOfRange, "mirror samples need level cap 2..9");
  constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

  MirrorReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_rng(seed, i);
    const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_level - 1)));
    const CellId v = random_cell(rng, k);
    const std::int64_t side = pow3(k);

    CellId w = v;
    int step = 0;
    const auto start = static_cast<int>(uniform_below(rng, 4));
    for (int t = 0; t < 4; ++t) {
      step = (start + t) % 4;
      w = CellId{k, v.ix + kSteps[static_cast<std::size_t>(step)][0], v.iy + kSteps[static_cast<std::size_t>(step)][1]};
      if (w.ix >= 0 && w.iy >= 0 && w.ix < side && w.iy < side && w.valid()) break;
    }

    // Random walk through the level-s subcells of v.
    const int s = k + 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_level - k)));
    const CellId offset = random_cell(rng, s - k);
    const std::int64_t scale = pow3(s - k);
    Chain chain{CellId{s, v.ix * scale + offset.ix, v.iy * scale + offset.iy}};
    const auto length = 1 + uniform_below(rng, 6);
    for (std::uint64_t j = 1; j < length; ++j) {
      std::vector<CellId> next;
      for (const CellId& c : neighbors(chain.back(), s, LevelMode::Pure)) {
        if (cells_relate(v, c) == Relation::Contains) next.push_back(c);
      }
      if (next.empty()) break;
      chain.push_back(next[uniform_below(rng, next.size())]);
    }

    const std::int64_t edge = step == 0 || step == 1 ? (step == 0 ? v.ix + 1 : v.iy + 1)
                                                     : (step == 2 ? v.ix : v.iy);
    const GridLine line = step % 2 == 0 ? GridLine::vertical(2 * edge, k) : GridLine::horizontal(2 * edge, k);

    MirrorSample sample{v, w, chain, {}, {}, 0.0, false};
    try {
      sample.image = reflect_chain(chain, line);
      sample.shift = exponent_shift(chain.front(), sample.image.front());
      bool uniform = true;
      for (std::size_t j = 0; j < chain.size(); ++j) {
        uniform &= exponent_shift(chain[j], sample.image[j]) == sample.shift;
      }
      sample.ratio = chain_cost(params, sample.image) / chain_cost(params, chain);
      sample.ok = uniform && validate_chain(sample.image) &&
                  (sample.shift == ExponentShift{1, -1} || sample.shift == ExponentShift{-1, 1});
    } catch (const Error&) {
      sample.ok = false;
    }
    ++report.checked;
    if (!sample.ok) ++report.violations;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace carpet
