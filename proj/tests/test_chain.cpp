#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "carpet/chain.hpp"
#include "carpet/error.hpp"
#include "carpet/oracle.hpp"
#include "carpet/sampling.hpp"
#include "carpet/search.hpp"

using namespace carpet;

namespace {

const WeightParams kThird(1.0 / 3.0, 1.0 / 3.0);

CellId cell(const char* word) { return word_to_cell(Word::parse(word)); }

std::set<std::string> words(const std::vector<CellId>& cells) {
  std::set<std::string> out;
  for (const CellId& c : cells) out.insert(cell_to_word(c).str());
  return out;
}

double ulps(double x, double y) {
  if (x == y) return 0.0;
  return std::abs(x - y) / (std::numeric_limits<double>::epsilon() * std::max(std::abs(x), std::abs(y)));
}

DistanceResult search(const WeightParams& p, const TriadicPoint& s, const TriadicPoint& t, int level,
                      LevelMode mode = LevelMode::Mixed, CellFilter filter = {}) {
  return shortest_chain(DistanceQuery{p, s, t, level, mode, std::move(filter), {}});
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no carpet::Error thrown";
  return ErrorKind::Parse;
}

WeightParams random_params(std::mt19937_64& rng) {
  const auto unit = [&] { return 0.2 + 0.7 * static_cast<double>(uniform_below(rng, 1 << 20)) / (1 << 20); };
  return WeightParams(unit(), unit());
}

}  // namespace

TEST(Neighbors, Examples) {
  EXPECT_EQ(words(neighbors(cell("1"), 1, LevelMode::Pure)), (std::set<std::string>{"2", "8"}));
  EXPECT_EQ(words(neighbors(cell("2"), 1, LevelMode::Pure)), (std::set<std::string>{"1", "3", "4", "8"}));
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(neighbors(cell(""), n, LevelMode::Mixed).empty());
  EXPECT_EQ(words(neighbors(cell("2"), 1, LevelMode::Pure, false)), (std::set<std::string>{"1", "3"}));
}

TEST(Neighbors, ExactlyTheTouchingCells) {
  for (LevelMode mode : {LevelMode::Mixed, LevelMode::Pure}) {
    const int cap = 3;
    std::vector<CellId> admitted;
    for (int l = mode == LevelMode::Mixed ? 0 : cap; l <= cap; ++l) {
      for (const CellId& c : cells_at_level(l)) admitted.push_back(c);
    }
    for (const CellId& u : admitted) {
      std::vector<CellId> expected;
      for (const CellId& v : admitted) {
        if (cells_relate(u, v) == Relation::Touch) expected.push_back(v);
      }
      std::sort(expected.begin(), expected.end());
      const auto got = neighbors(u, cap, mode);
      ASSERT_EQ(got, expected) << u.str();
      std::map<int, int> per_level;
      for (const CellId& v : got) ++per_level[v.level];
      for (auto [l, count] : per_level) {
        if (l == u.level) EXPECT_LE(count, 8);
        if (l < u.level) EXPECT_LE(count, 5);
      }
    }
  }
}

TEST(ChainCost, Examples) {
  EXPECT_NEAR(chain_cost(kThird, chain_from_words("1,2,3")), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(chain_cost(WeightParams(0.5, 0.25), chain_from_words("2,8")), 0.5);
  EXPECT_FALSE(validate_chain(chain_from_words("1,3")));
  EXPECT_TRUE(validate_chain(chain_from_words("1,2,3")));
  EXPECT_TRUE(validate_chain(chain_from_words("13,2,31")));
  EXPECT_EQ(kind_of([] { chain_cost(kThird, chain_from_words("1,3")); }), ErrorKind::InvalidChain);
  EXPECT_FALSE(validate_chain(Chain{CellId{1, 1, 1}}));
  EXPECT_EQ(format_chain(chain_from_words("1,2")), "1:0:0,1:1:0");
  EXPECT_EQ(parse_chain("1:0:0,1:1:0"), chain_from_words("1,2"));
}

TEST(CanonicalChain, Examples) {
  EXPECT_EQ(canonical_chain(CanonicalKind::Bottom, 1), chain_from_words("1,2,3"));
  EXPECT_EQ(canonical_chain(CanonicalKind::Diagonal, 1), chain_from_words("2,3,4"));
  EXPECT_EQ(canonical_chain(CanonicalKind::Bottom, 2), chain_from_words("11,12,13,21,22,23,31,32,33"));
  EXPECT_EQ(canonical_chain(CanonicalKind::Diagonal, 2), chain_from_words("22,23,24,38,37,36,42,43,44"));
  EXPECT_EQ(kind_of([] { canonical_chain(CanonicalKind::Bottom, 0); }), ErrorKind::OutOfRange);
}

TEST(CanonicalChain, CostsArePowers) {
  for (const WeightParams& p : {WeightParams(0.3, 0.3), WeightParams(0.5, 0.25), WeightParams(0.2, 0.45)}) {
    for (int n = 1; n <= 6; ++n) {
      const Chain bottom = canonical_chain(CanonicalKind::Bottom, n);
      const Chain diag = canonical_chain(CanonicalKind::Diagonal, n);
      ASSERT_TRUE(validate_chain(bottom));
      ASSERT_TRUE(validate_chain(diag));
      EXPECT_EQ(bottom.size(), static_cast<std::size_t>(pow3(n)));
      EXPECT_NEAR(chain_cost(p, bottom), std::pow(2 * p.a() + p.b(), n), 1e-12);
      EXPECT_NEAR(chain_cost(p, diag), std::pow(p.a() + 2 * p.b(), n), 1e-12);
    }
  }
}

TEST(ShortestChain, Examples) {
  const auto p1 = TriadicPoint::anchor(1), p3 = TriadicPoint::anchor(3);
  EXPECT_NEAR(search(kThird, p1, p3, 3).value, 1.0, 1e-12);
  // Frozen from the exhaustive oracle: the level-2 bottom chain, (2a+b)^2.
  const WeightParams p(0.3, 0.3);
  const DistanceResult r = search(p, p1, p3, 2);
  EXPECT_NEAR(r.value, 0.81, 1e-12);
  EXPECT_LE(ulps(r.value, exhaustive_oracle(DistanceQuery{p, p1, p3, 2, LevelMode::Mixed, {}, {}})), 8.0);
  const DistanceResult same = search(p, TriadicPoint(1, 2, 2), TriadicPoint(1, 2, 2), 3);
  EXPECT_EQ(same.value, 0.0);
  EXPECT_TRUE(same.witness.empty());
}

TEST(ShortestChain, WitnessIsValidAndCostsTheValue) {
  auto rng = sample_rng(21, 0);
  for (int i = 0; i < 100; ++i) {
    const WeightParams p = random_params(rng);
    const int level = 1 + static_cast<int>(uniform_below(rng, 4));
    const TriadicPoint s = random_carpet_point(rng, level), t = random_carpet_point(rng, level);
    if (s == t) continue;
    const LevelMode mode = uniform_below(rng, 2) ? LevelMode::Mixed : LevelMode::Pure;
    const DistanceResult r = search(p, s, t, level, mode);
    ASSERT_FALSE(r.witness.empty());
    EXPECT_TRUE(validate_chain(r.witness));
    EXPECT_TRUE(cell_contains_point(r.witness.front(), s));
    EXPECT_TRUE(cell_contains_point(r.witness.back(), t));
    EXPECT_LE(ulps(chain_cost(p, r.witness), r.value), 8.0);
    for (const CellId& c : r.witness) {
      EXPECT_LE(c.level, level);
      if (mode == LevelMode::Pure) EXPECT_EQ(c.level, level);
    }
  }
}

TEST(ShortestChain, Reproducible) {
  const WeightParams p(0.4, 0.35);
  const auto a = search(p, TriadicPoint::anchor(1), TriadicPoint::anchor(6), 4);
  const auto b = search(p, TriadicPoint::anchor(1), TriadicPoint::anchor(6), 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.settled, b.settled);
}

TEST(ShortestChain, Errors) {
  const auto p1 = TriadicPoint::anchor(1), p3 = TriadicPoint::anchor(3);
  EXPECT_EQ(kind_of([&] { search(kThird, TriadicPoint(1, 1, 0, true), p3, 2); }), ErrorKind::InvalidPoint);
  EXPECT_EQ(kind_of([&] { search(kThird, p1, TriadicPoint(4, 4, 2), 2); }), ErrorKind::InvalidPoint);
  const CellFilter corners_only = [](const CellId& c) {
    return c.level == 1 && (cell_to_word(c).str() == "1" || cell_to_word(c).str() == "5");
  };
  EXPECT_EQ(kind_of([&] { search(kThird, p1, TriadicPoint::anchor(5), 1, LevelMode::Pure, corners_only); }),
            ErrorKind::Unreachable);
  EXPECT_EQ(kind_of([&] { search(kThird, p1, p3, 2, LevelMode::Mixed, [](const CellId&) { return false; }); }),
            ErrorKind::Unreachable);
  DistanceQuery deep{kThird, p1, p3, 6, LevelMode::Mixed, {}, {}};
  deep.options.memory_budget_bytes = 1 << 20;
  EXPECT_EQ(kind_of([&] { shortest_chain(deep); }), ErrorKind::LevelTooDeep);
  EXPECT_EQ(kind_of([&] { search(kThird, p1, p3, -1); }), ErrorKind::OutOfRange);
  EXPECT_LT(search_memory_bytes(8, LevelMode::Mixed), std::size_t{1} << 30);
}

TEST(ConstrainedDistance, Examples) {
  const WeightParams p(0.5, 0.25);
  const auto p2 = TriadicPoint::anchor(2), p8 = TriadicPoint::anchor(8);
  const Segment seg{p2, p8};
  const DistanceResult pure1 = constrained_distance(DistanceQuery{p, p2, p8, 1, LevelMode::Pure, {}, {}}, seg);
  EXPECT_NEAR(pure1.value, 0.5, 1e-12);
  EXPECT_EQ(pure1.witness, chain_from_words("2,8"));
  for (int n = 1; n <= 4; ++n) {
    for (LevelMode mode : {LevelMode::Mixed, LevelMode::Pure}) {
      const double v = constrained_distance(DistanceQuery{p, p2, p8, n, mode, {}, {}}, seg).value;
      EXPECT_GE(v, 0.2 - 1e-12) << n;
    }
  }
  const auto p1 = TriadicPoint::anchor(1), p3 = TriadicPoint::anchor(3);
  for (int n = 1; n <= 4; ++n) {
    const double v =
        constrained_distance(DistanceQuery{kThird, p1, p3, n, LevelMode::Pure, {}, {}}, Segment{p1, p3}).value;
    EXPECT_NEAR(v, 1.0, 1e-12) << n;
  }
}

TEST(MetricBall, Examples) {
  const auto p1 = TriadicPoint::anchor(1);
  const auto ball = metric_ball(kThird, p1, 0.34, 1, LevelMode::Pure);
  ASSERT_EQ(ball.size(), 1u);
  EXPECT_EQ(ball[0].cell, cell("1"));
  EXPECT_NEAR(ball[0].dist, 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(metric_ball(kThird, p1, 0.0, 3, LevelMode::Mixed).empty());
  const WeightParams p(0.45, 0.3);
  for (int n = 1; n <= 3; ++n) {
    const double bound = 8 * std::pow(0.45, n) * static_cast<double>(pow3(n));
    EXPECT_EQ(metric_ball(p, p1, bound, n, LevelMode::Pure).size(), std::size_t{1} << (3 * n));
  }
  EXPECT_EQ(kind_of([&] { metric_ball(kThird, p1, -1.0, 2, LevelMode::Mixed); }), ErrorKind::OutOfRange);
}

TEST(MetricBall, DistancesAreAtLeastTheCellWeight) {
  const WeightParams p(0.4, 0.35);
  const auto ball = metric_ball(p, TriadicPoint::anchor(2), 0.5, 2, LevelMode::Mixed);
  EXPECT_FALSE(ball.empty());
  for (const BallCell& b : ball) {
    EXPECT_LE(b.dist, 0.5);
    EXPECT_GE(b.dist, weight(p, b.cell) * (1 - 1e-15));
  }
}

TEST(Oracle, Examples) {
  const auto p1 = TriadicPoint::anchor(1), p3 = TriadicPoint::anchor(3);
  const DistanceQuery q1{kThird, p1, p3, 1, LevelMode::Mixed, {}, {}};
  EXPECT_NEAR(exhaustive_oracle(q1), 1.0, 1e-15);
  EXPECT_LE(ulps(exhaustive_oracle(q1), shortest_chain(q1).value), 8.0);
  const DistanceQuery q2{WeightParams(0.5, 0.25), TriadicPoint::anchor(2), TriadicPoint::anchor(8), 1,
                         LevelMode::Mixed, {}, {}};
  EXPECT_DOUBLE_EQ(exhaustive_oracle(q2), 0.5);
  EXPECT_EQ(exhaustive_oracle(q2), shortest_chain(q2).value);
  const OracleReport report = oracle_equivalence(50, 7, 2);
  EXPECT_EQ(report.checked, 50u);
  EXPECT_EQ(report.violations, 0u);
  EXPECT_EQ(kind_of([&] { exhaustive_oracle(DistanceQuery{kThird, p1, p3, 3, LevelMode::Mixed, {}, {}}); }),
            ErrorKind::OutOfRange);
}

TEST(Oracle, NestedDropKeepsValues) {
  auto rng = sample_rng(31, 0);
  for (int i = 0; i < 100; ++i) {
    const WeightParams p = random_params(rng);
    const TriadicPoint s = random_carpet_point(rng, 2), t = random_carpet_point(rng, 2);
    const LevelMode mode = uniform_below(rng, 2) ? LevelMode::Mixed : LevelMode::Pure;
    const DistanceQuery q{p, s, t, 2, mode, {}, {}};
    const double plain = exhaustive_oracle(q);
    const double nested = exhaustive_oracle(q, OracleOptions{true});
    EXPECT_LE(ulps(plain, nested), 8.0);
    EXPECT_LE(ulps(plain, shortest_chain(q).value), 8.0);
  }
}

TEST(Oracle, EdgeContactsOnly) {
  auto rng = sample_rng(32, 0);
  for (int i = 0; i < 40; ++i) {
    const WeightParams p = random_params(rng);
    const TriadicPoint s = random_carpet_point(rng, 2), t = random_carpet_point(rng, 2);
    DistanceQuery q{p, s, t, 2, LevelMode::Mixed, {}, {}};
    q.options.corner_contacts = false;
    const double edges = shortest_chain(q).value;
    EXPECT_LE(ulps(edges, exhaustive_oracle(q)), 8.0);
    q.options.corner_contacts = true;
    EXPECT_LE(shortest_chain(q).value, edges);
  }
}

TEST(Distance, Symmetry) {
  auto rng = sample_rng(41, 0);
  for (int i = 0; i < 200; ++i) {
    const WeightParams p = random_params(rng);
    const int level = 1 + static_cast<int>(uniform_below(rng, 4));
    const TriadicPoint s = random_carpet_point(rng, level), t = random_carpet_point(rng, level);
    EXPECT_LE(ulps(search(p, s, t, level).value, search(p, t, s, level).value), 8.0);
  }
}

TEST(Distance, TriangleInequality) {
  auto rng = sample_rng(42, 0);
  for (int i = 0; i < 100; ++i) {
    const WeightParams p = random_params(rng);
    const int level = 1 + static_cast<int>(uniform_below(rng, 4));
    const TriadicPoint x = random_carpet_point(rng, level), y = random_carpet_point(rng, level),
                       z = random_carpet_point(rng, level);
    const double direct = search(p, x, z, level).value;
    const double via = search(p, x, y, level).value + search(p, y, z, level).value;
    EXPECT_LE(direct, via + 8 * std::numeric_limits<double>::epsilon() * via);
  }
}

TEST(Distance, LevelMonotone) {
  auto rng = sample_rng(43, 0);
  for (int i = 0; i < 60; ++i) {
    const WeightParams p = random_params(rng);
    const TriadicPoint s = random_carpet_point(rng, 2), t = random_carpet_point(rng, 2);
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 5; ++n) {
      const double v = search(p, s, t, n).value;
      EXPECT_LE(v, previous);
      previous = v;
    }
  }
}

TEST(Distance, SelfSimilarity) {
  auto rng = sample_rng(44, 0);
  for (int i = 0; i < 50; ++i) {
    const WeightParams p = random_params(rng);
    const int depth = 1 + static_cast<int>(uniform_below(rng, 3));
    const int k = 1 + static_cast<int>(uniform_below(rng, 3));
    const CellId w = random_cell(rng, depth);
    const int ci = static_cast<int>(uniform_below(rng, 4));
    const int cj = (ci + 1 + static_cast<int>(uniform_below(rng, 3))) % 4;
    const double inside = search(p, TriadicPoint::cell_corner(w, ci), TriadicPoint::cell_corner(w, cj),
                                 depth + k, LevelMode::Mixed, subcell_filter(w))
                              .value;
    const CellId root{0, 0, 0};
    const double unscaled =
        search(p, TriadicPoint::cell_corner(root, ci), TriadicPoint::cell_corner(root, cj), k).value;
    EXPECT_LE(ulps(inside, weight(p, w) * unscaled), 8.0) << w.str() << " k=" << k;
  }
}

TEST(Distance, MirrorInvariance) {
  auto rng = sample_rng(45, 0);
  for (int i = 0; i < 60; ++i) {
    const WeightParams p = random_params(rng);
    const int level = 1 + static_cast<int>(uniform_below(rng, 3));
    const TriadicPoint s = random_carpet_point(rng, level), t = random_carpet_point(rng, level);
    const double base = search(p, s, t, level).value;
    EXPECT_LE(ulps(base, search(p, s.mirror_x(), t.mirror_x(), level).value), 8.0);
    EXPECT_LE(ulps(base, search(p, s.mirror_y(), t.mirror_y(), level).value), 8.0);
    EXPECT_LE(ulps(base, search(p, s.swap_xy(), t.swap_xy(), level).value), 8.0);
  }
}
