#include "carpet/chain.hpp"

#include <algorithm>

#include "carpet/error.hpp"
#include "carpet/point.hpp"
#include "cell_graph.hpp"

namespace carpet {

std::string_view to_string(LevelMode mode) noexcept {
  return mode == LevelMode::Mixed ? "Mixed" : "Pure";
}

bool validate_chain(std::span<const CellId> chain, bool corner_contacts) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!chain[i].valid()) return false;
    if (i > 0 && !cells_meet(chain[i - 1], chain[i], corner_contacts)) return false;
  }
  return true;
}

double chain_cost(const WeightParams& params, std::span<const CellId> chain) {
  if (!validate_chain(chain)) {
    throw Error(ErrorKind::InvalidChain, "not a chain: " + format_chain(chain));
  }
  long double total = 0.0L;
  for (const auto& cell : chain) total += weight(params, cell);
  return static_cast<double>(total);
}

std::string format_chain(std::span<const CellId> chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) out += ',';
    out += chain[i].str();
  }
  return out;
}

namespace {

template <class Fn>
Chain split_list(std::string_view text, Fn&& parse_one) {
  Chain chain;
  if (text.empty()) return chain;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    chain.push_back(parse_one(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return chain;
}

}  // namespace

Chain parse_chain(std::string_view text) {
  return split_list(text, [](std::string_view item) { return CellId::parse(item); });
}

Chain chain_from_words(std::string_view text) {
  return split_list(text, [](std::string_view item) { return word_to_cell(Word::parse(item)); });
}

Chain canonical_chain(CanonicalKind kind, int level) {
  if (level < 1 || level > 12) {
    throw Error(ErrorKind::OutOfRange, "canonical chains need 1 <= level <= 12");
  }
  const std::int64_t side = pow3(level);
  Chain chain;
  if (kind == CanonicalKind::Bottom) {
    for (std::int64_t ix = 0; ix < side; ++ix) chain.push_back(CellId{level, ix, 0});
    return chain;
  }

  const Segment diagonal{TriadicPoint::anchor(2), TriadicPoint::anchor(4)};
  for (std::int64_t ix = side / 2; ix < side; ++ix) {
    // In cell units the segment is y = x - side/2.
    const std::int64_t guess = ix - side / 2;
    for (std::int64_t iy = std::max<std::int64_t>(guess - 2, 0); iy <= guess + 2 && iy < side; ++iy) {
      const CellId cell{level, ix, iy};
      if (cell.valid() && cell_meets_segment(cell, diagonal)) chain.push_back(cell);
    }
  }
  std::sort(chain.begin(), chain.end(), [](const CellId& u, const CellId& v) {
    return u.ix + u.iy != v.ix + v.iy ? u.ix + u.iy < v.ix + v.iy : u.ix < v.ix;
  });
  return chain;
}

std::vector<CellId> neighbors(const CellId& cell, int max_level, LevelMode mode,
                              bool corner_contacts) {
  if (!cell.valid()) throw Error(ErrorKind::InvalidCell, "not a carpet cell: " + cell.str());
  const int min_level = mode == LevelMode::Mixed ? 0 : max_level;
  if (cell.level < min_level || cell.level > max_level) {
    throw Error(ErrorKind::OutOfRange, "cell " + cell.str() + " not admitted at this level cap");
  }
  std::vector<CellId> out;
  detail::for_each_touching(cell, min_level, max_level, corner_contacts, [&](const CellId& c) {
    if (c.valid()) out.push_back(c);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace carpet
