#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "fixtures.hpp"
#include "g4f8/search.hpp"

using namespace g4f8;

namespace {

std::vector<std::uint8_t> random_digits(const SearchCase& c, std::mt19937_64& rng) {
  std::vector<std::uint8_t> d(c.free_count());
  for (auto& x : d) x = static_cast<std::uint8_t>(rng() % 8);
  return d;
}

}  // namespace

TEST(Families, ShapeOfEachCase) {
  const std::map<CaseId, std::size_t> free = {{CaseId::red1a, 9},    {CaseId::red1b, 9},   {CaseId::red2, 8},
                                              {CaseId::red3_p1, 11}, {CaseId::red3_p2, 11}};
  for (CaseId id : kAllCases) {
    const auto& c = search_case(id);
    EXPECT_EQ(c.free_count(), free.at(id)) << to_string(id);
    EXPECT_EQ(c.columns.size(), c.free_count());
    EXPECT_EQ(parse_case_id(to_string(id)), id);
    const bool red3 = id == CaseId::red3_p1 || id == CaseId::red3_p2;
    EXPECT_EQ(c.homogeneous(), red3);
    EXPECT_EQ(c.quadric, id == CaseId::red2 ? QuadricId::cone : red3 ? QuadricId::nonsplit : QuadricId::split);
  }
  EXPECT_THROW(parse_case_id("red4"), std::invalid_argument);
}

TEST(Families, IndexDigitRoundTrip) {
  std::mt19937_64 rng(1);
  for (CaseId id : kAllCases) {
    const auto& c = search_case(id);
    for (int t = 0; t < 200; ++t) {
      const std::uint64_t idx = rng() % c.size();
      EXPECT_EQ(digits_to_index(c, index_to_digits(c, idx)), idx);
    }
    EXPECT_EQ(index_to_digits(c, 1).back(), 1);
  }
}

TEST(Families, MembersSatisfyPrescribedAndForbiddenPoints) {
  std::mt19937_64 rng(2);
  for (CaseId id : kAllCases) {
    const auto& c = search_case(id);
    for (int t = 0; t < 2000; ++t) {
      const auto cub = materialize_cubic(c, random_digits(c, rng));
      for (const auto& p : c.prescribed) ASSERT_TRUE(eval(cub, p).is_zero()) << to_string(id);
      for (const auto& p : c.forbidden) ASSERT_FALSE(eval(cub, p).is_zero()) << to_string(id);
      for (auto i : c.zero_indices) ASSERT_TRUE(cub.c[i].is_zero());
      for (auto [i, v] : c.fixed_values) ASSERT_EQ(cub.c[i], v);
    }
  }
}

TEST(Families, MaterializeIsAffineInTheDigits) {
  std::mt19937_64 rng(3);
  const auto& c = search_case(CaseId::red1a);
  const auto zero = materialize_cubic(c, std::vector<std::uint8_t>(c.free_count(), 0));
  EXPECT_EQ(zero, c.base);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_digits(c, rng), b = random_digits(c, rng);
    std::vector<std::uint8_t> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] ^ b[i];
    EXPECT_EQ(materialize_cubic(c, s) + c.base, materialize_cubic(c, a) + materialize_cubic(c, b));
  }
}

TEST(Families, FirstExampleLiesInTheFirstSplitCase) {
  const auto ex = g4f8::testing::worked_examples().front();
  const auto& c = search_case(CaseId::red1a);
  std::vector<std::uint8_t> d;
  for (auto i : c.free_indices) d.push_back(ex.cubic.c[i].code());
  EXPECT_EQ(materialize_cubic(c, d), ex.cubic);
  EXPECT_EQ(digits_to_index(c, d), 2165655u);
}

TEST(Families, PointConditionFolding) {
  SearchCase c = search_case(CaseId::red1a);
  const auto& q = quadric(c.quadric);
  // Pick a quadric point not already forced onto or off the cubic.
  std::optional<Point8> extra;
  for (const auto& p : q.points8()) {
    try {
      SearchCase trial = c;
      add_point_condition(trial, p);
      extra = p;
      c = std::move(trial);
      break;
    } catch (const std::invalid_argument&) {
    }
  }
  ASSERT_TRUE(extra.has_value());
  EXPECT_EQ(c.free_count(), search_case(CaseId::red1a).free_count() - 1);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) EXPECT_TRUE(eval(materialize_cubic(c, random_digits(c, rng)), *extra).is_zero());
  // A prescribed point gives a constant condition.
  EXPECT_THROW(add_point_condition(c, c.prescribed.front()), std::invalid_argument);
}

TEST(Counting, TableAgreesWithDirectEvaluation) {
  std::mt19937_64 rng(5);
  for (const auto* q : canonical_quadrics()) {
    const auto table = precompute_monomial_table(*q);
    for (int t = 0; t < 1000; ++t) {
      CubicForm c;
      for (auto& x : c.c) x = Gf8::from_code(rng() % 8);
      const auto n = table_count(table, c);
      ASSERT_EQ(n, zero_locus_count(c, q->points8()));
      ASSERT_EQ(direct_count(*q, c, 27, false), n);
      if (n != 27) {
        ASSERT_NE(direct_count(*q, c, 27, true), 27u);
      }
    }
  }
}

TEST(Search, KernelMatchesSerialReference) {
  for (CaseId id : kAllCases) {
    const auto& c = search_case(id);
    SearchOptions o;
    o.start = id == CaseId::red1b ? 3'000'000 : 0;
    o.end = o.start + 60'000;
    const auto fast = run_search(c, o);
    const auto ref = run_search_reference(c, o);
    EXPECT_EQ(fast.hits, ref.hits) << to_string(id);
    EXPECT_EQ(fast.evaluated, 60'000u);
    for (const auto& h : fast.hits) {
      EXPECT_EQ(h.n8, 27u);
      EXPECT_EQ(zero_locus_count(h.coeffs, quadric(c.quadric).points8()), 27u);
    }
  }
}

TEST(Search, OtherTargetsAgreeWithReference) {
  const auto& c = search_case(CaseId::red2);
  for (std::size_t target : {25u, 28u, 30u}) {
    SearchOptions o;
    o.end = 40'000;
    o.target = target;
    EXPECT_EQ(run_search(c, o).hits, run_search_reference(c, o).hits) << target;
  }
}

TEST(Search, ResultIndependentOfWorkersAndChunking) {
  const auto& c = search_case(CaseId::red1a);
  SearchOptions a;
  a.end = 300'000;
  a.workers = 1;
  SearchOptions b = a;
  b.workers = 4;
  b.chunk = 4099;
  EXPECT_EQ(run_search(c, a).hits, run_search(c, b).hits);
}

TEST(Search, ScalingNormalizationReproducesThePrefix) {
  // The representative of v has a leading digit 1, so its index is at most v's.
  for (CaseId id : {CaseId::red3_p1, CaseId::red3_p2}) {
    const auto& c = search_case(id);
    SearchOptions plain;
    plain.end = 1u << 21;
    SearchOptions norm = plain;
    norm.normalize_scaling = true;
    const auto full = run_search(c, plain);
    auto reduced = run_search(c, norm);
    EXPECT_LT(reduced.evaluated, full.evaluated);
    std::vector<SearchHit> inside;
    for (auto& h : reduced.hits)
      if (h.index < *plain.end) inside.push_back(h);
    EXPECT_EQ(inside, full.hits) << to_string(id);
  }
  SearchOptions bad;
  bad.normalize_scaling = true;
  EXPECT_THROW(run_search(search_case(CaseId::red1a), bad), std::invalid_argument);
}

TEST(Search, RangeValidation) {
  const auto& c = search_case(CaseId::red2);
  SearchOptions o;
  o.end = c.size() + 1;
  EXPECT_THROW(run_search(c, o), std::out_of_range);
  o.start = 10;
  o.end = 5;
  EXPECT_THROW(run_search(c, o), std::out_of_range);
  o.start = 5;
  o.end = 5;
  EXPECT_TRUE(run_search(c, o).hits.empty());
}

TEST(Search, CanonicalRangesCoverOneVectorPerLine) {
  const auto& c = search_case(CaseId::red3_p1);
  std::uint64_t total = 0;
  for (auto [lo, hi] : canonical_ranges(c, 0, c.size())) total += hi - lo;
  EXPECT_EQ(total, (c.size() - 1) / 7 + 1);
}
