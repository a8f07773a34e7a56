#include "carpet/sampling.hpp"

#include <limits>

namespace carpet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection keeps the draw unbiased and identical across standard libraries.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

CellId random_cell(std::mt19937_64& rng, int level) {
  CellId c{level, 0, 0};
  for (int k = 0; k < level; ++k) {
    const auto& off = kDigitOffset[uniform_below(rng, 8)];
    c.ix = 3 * c.ix + off[0];
    c.iy = 3 * c.iy + off[1];
  }
  return c;
}

TriadicPoint random_carpet_point(std::mt19937_64& rng, int max_level) {
  const int level = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(max_level, 1))));
  const CellId c = random_cell(rng, level);
  // Eight boundary anchors of the cell: 4 corners, 4 edge midpoints.
  const auto& off = kDigitOffset[uniform_below(rng, 8)];
  return TriadicPoint(2 * c.ix + off[0], 2 * c.iy + off[1], level, true);
}

}  // namespace carpet
