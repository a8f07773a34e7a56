#include "carpet/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "carpet/error.hpp"
#include "cell_graph.hpp"

namespace carpet {

namespace {

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();
// Chain costs accumulate in extended precision so that long chains of tiny
// cells do not drift by more than an ulp from the exact sum of weights.
using Cost = long double;

constexpr std::size_t kBytesPerNode = sizeof(Cost) + sizeof(std::uint32_t);

// (level, ix, iy) packed so that integer order is lexicographic order.
std::uint64_t pack(const CellId& c) {
  return (static_cast<std::uint64_t>(c.level) << 58) | (static_cast<std::uint64_t>(c.ix) << 29) |
         static_cast<std::uint64_t>(c.iy);
}

CellId unpack(std::uint64_t key) {
  constexpr std::uint64_t mask = (std::uint64_t{1} << 29) - 1;
  return CellId{static_cast<int>(key >> 58), static_cast<std::int64_t>((key >> 29) & mask),
                static_cast<std::int64_t>(key & mask)};
}

struct HeapEntry {
  Cost dist;
  std::uint64_t key;
};

struct LaterFirst {
  bool operator()(const HeapEntry& lhs, const HeapEntry& rhs) const noexcept {
    return lhs.dist != rhs.dist ? lhs.dist > rhs.dist : lhs.key > rhs.key;
  }
};

int min_level_for(int max_level, LevelMode mode) {
  return mode == LevelMode::Mixed ? 0 : max_level;
}

void check_level(int max_level, LevelMode mode, const SearchOptions& options) {
  if (max_level < 0 || max_level > kMaxLevel) {
    throw Error(ErrorKind::OutOfRange, "level cap out of range: " + std::to_string(max_level));
  }
  const detail::LevelIndex index(min_level_for(max_level, mode), max_level);
  if (index.size() >= kNoParent || search_memory_bytes(max_level, mode) > options.memory_budget_bytes) {
    throw Error(ErrorKind::LevelTooDeep,
                "level cap " + std::to_string(max_level) + " needs " +
                    std::to_string(search_memory_bytes(max_level, mode)) +
                    " bytes, budget is " + std::to_string(options.memory_budget_bytes));
  }
}

void check_in_carpet(const TriadicPoint& p, int max_level) {
  if (locate_point(p, max_level).empty()) {
    throw Error(ErrorKind::InvalidPoint,
                "point " + p.str() + " is not in the level-" + std::to_string(max_level) +
                    " carpet approximation");
  }
}

// Node-weighted best-first search over the admitted cells.
class BestFirst {
 public:
  BestFirst(const WeightParams& params, int max_level, LevelMode mode, const SearchOptions& options,
            const CellFilter& filter)
      : index_(min_level_for(max_level, mode), max_level),
        corners_(options.corner_contacts),
        filter_(filter),
        dist_(index_.size(), std::numeric_limits<Cost>::infinity()),
        parent_(index_.size(), kNoParent) {
    weights_.resize(static_cast<std::size_t>(max_level) + 1);
    for (int l = 0; l <= max_level; ++l) {
      for (int e = 0; e <= l; ++e) weights_[static_cast<std::size_t>(l)].push_back(params.weight(l - e, e));
    }
  }

  bool admits(const CellId& c) const {
    return c.level >= index_.min_level() && c.level <= index_.max_level() && c.valid() &&
           (!filter_ || filter_(c));
  }

  std::size_t seed(const TriadicPoint& source) {
    std::size_t seeded = 0;
    for (int l = index_.min_level(); l <= index_.max_level(); ++l) {
      for (const CellId& c : locate_point(source, l)) {
        if (filter_ && !filter_(c)) continue;
        relax(c, detail::encode(c), 0.0, kNoParent);
        ++seeded;
      }
    }
    return seeded;
  }

  /// Pops cells in order of distance. `done(cell)` ends the search by
  /// returning true; a popped distance above `limit` ends it too.
  template <class Done>
  std::optional<CellId> run(Done&& done, Cost limit = std::numeric_limits<Cost>::infinity()) {
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), LaterFirst{});
      const HeapEntry top = heap_.back();
      heap_.pop_back();
      const CellId cell = unpack(top.key);
      const detail::Encoded enc = detail::encode(cell);
      const std::uint64_t g = index_.global(cell.level, enc.local);
      if (top.dist > dist_[g]) continue;  // stale entry
      if (top.dist > limit) {
        heap_.clear();
        return std::nullopt;
      }
      ++settled_;
      settled_nodes_.push_back(g);
      if (done(cell)) return cell;
      const auto parent = static_cast<std::uint32_t>(g);
      detail::for_each_touching(cell, index_.min_level(), index_.max_level(), corners_,
                                [&](const CellId& v) {
                                  const detail::Encoded ev = detail::encode(v);
                                  if (!ev.valid || (filter_ && !filter_(v))) return;
                                  relax(v, ev, top.dist, parent);
                                });
    }
    return std::nullopt;
  }

  Cost dist(const CellId& c) const {
    return dist_[index_.global(c.level, detail::encode(c).local)];
  }

  Chain witness(const CellId& last) const {
    Chain chain;
    std::uint64_t g = index_.global(last.level, detail::encode(last).local);
    for (;;) {
      chain.push_back(index_.cell(g));
      if (parent_[g] == kNoParent) break;
      g = parent_[g];
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

  std::size_t settled() const noexcept { return settled_; }
  const std::vector<std::uint64_t>& settled_nodes() const noexcept { return settled_nodes_; }
  const detail::LevelIndex& index() const noexcept { return index_; }

 private:
  void relax(const CellId& c, const detail::Encoded& enc, Cost base, std::uint32_t parent) {
    const std::uint64_t g = index_.global(c.level, enc.local);
    const Cost candidate =
        base + weights_[static_cast<std::size_t>(c.level)][static_cast<std::size_t>(enc.edge_digits)];
    if (candidate < dist_[g]) {
      dist_[g] = candidate;
      parent_[g] = parent;
      heap_.push_back(HeapEntry{candidate, pack(c)});
      std::push_heap(heap_.begin(), heap_.end(), LaterFirst{});
    }
  }

  detail::LevelIndex index_;
  bool corners_;
  const CellFilter& filter_;
  std::vector<std::vector<Cost>> weights_;
  std::vector<Cost> dist_;
  std::vector<std::uint32_t> parent_;
  std::vector<HeapEntry> heap_;
  std::vector<std::uint64_t> settled_nodes_;
  std::size_t settled_ = 0;
};

}  // namespace

std::size_t search_memory_bytes(int max_level, LevelMode mode) {
  const detail::LevelIndex index(min_level_for(max_level, mode), max_level);
  return static_cast<std::size_t>(index.size()) * kBytesPerNode;
}

DistanceResult shortest_chain(const DistanceQuery& query) {
  check_level(query.max_level, query.mode, query.options);
  check_in_carpet(query.source, query.max_level);
  check_in_carpet(query.target, query.max_level);
  if (query.source == query.target) return DistanceResult{0.0, {}, 0};

  BestFirst search(query.params, query.max_level, query.mode, query.options, query.filter);
  if (search.seed(query.source) == 0) {
    throw Error(ErrorKind::Unreachable, "filter rejects every cell holding the source");
  }
  bool target_admitted = false;
  for (int l = min_level_for(query.max_level, query.mode); l <= query.max_level && !target_admitted; ++l) {
    for (const CellId& c : locate_point(query.target, l)) target_admitted |= search.admits(c);
  }
  if (!target_admitted) {
    throw Error(ErrorKind::Unreachable, "filter rejects every cell holding the target");
  }

  const auto last = search.run(
      [&](const CellId& cell) { return cell_contains_point(cell, query.target); });
  if (!last) {
    throw Error(ErrorKind::Unreachable,
                "no admitted chain joins " + query.source.str() + " and " + query.target.str());
  }
  return DistanceResult{static_cast<double>(search.dist(*last)), search.witness(*last), search.settled()};
}

CellFilter segment_filter(const Segment& segment) {
  return [segment](const CellId& c) { return cell_meets_segment(c, segment); };
}

CellFilter subcell_filter(const CellId& root) {
  return [root](const CellId& c) {
    const Relation r = cells_relate(root, c);
    return r == Relation::Same || r == Relation::Contains;
  };
}

DistanceResult constrained_distance(DistanceQuery query, const Segment& segment) {
  query.filter = segment_filter(segment);
  return shortest_chain(query);
}

std::vector<BallCell> metric_ball(const WeightParams& params, const TriadicPoint& center,
                                  double radius, int max_level, LevelMode mode,
                                  const SearchOptions& options, const CellFilter& filter) {
  if (!(radius >= 0.0)) throw Error(ErrorKind::OutOfRange, "ball radius must be >= 0");
  check_level(max_level, mode, options);
  check_in_carpet(center, max_level);

  BestFirst search(params, max_level, mode, options, filter);
  search.seed(center);
  search.run([](const CellId&) { return false; }, radius);

  std::vector<BallCell> ball;
  for (std::uint64_t g : search.settled_nodes()) {
    const CellId c = search.index().cell(g);
    const Cost d = search.dist(c);
    if (d <= radius) ball.push_back(BallCell{c, static_cast<double>(d)});
  }
  std::sort(ball.begin(), ball.end(),
            [](const BallCell& lhs, const BallCell& rhs) { return lhs.cell < rhs.cell; });
  return ball;
}

}  // namespace carpet
