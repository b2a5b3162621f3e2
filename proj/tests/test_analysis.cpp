#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "g4f8/analysis.hpp"

using namespace g4f8;

TEST(Intersection, FastCountsMatchDirectEvaluation) {
  std::mt19937_64 rng(21);
  for (const auto* q : canonical_quadrics()) {
    for (int t = 0; t < 40; ++t) {
      CubicForm c;
      for (auto& x : c.c) x = Gf8::from_code(rng() % 8);
      EXPECT_EQ(count_intersection(*q, c, FieldId::gf8), count_intersection_direct(*q, c, FieldId::gf8));
      EXPECT_EQ(count_intersection(*q, c, FieldId::gf64), count_intersection_direct(*q, c, FieldId::gf64));
    }
  }
}

TEST(Intersection, WorkedExamples) {
  const auto& q = quadric(QuadricId::split);
  for (const auto& ex : g4f8::testing::worked_examples()) {
    const auto r = analyze(q, ex.cubic);
    EXPECT_EQ(r.n8, 27u);
    EXPECT_EQ(r.n64, ex.n64);
    EXPECT_EQ(count_intersection_direct(q, ex.cubic, FieldId::gf64), ex.n64);
    std::vector<std::string> lines;
    for (int i : r.contained.lines) lines.push_back(q.curves()[i].label);
    std::sort(lines.begin(), lines.end());
    EXPECT_EQ(lines, ex.lines);
    EXPECT_FALSE(r.good_curve);
    EXPECT_FALSE(r.anomalous);
    EXPECT_NE(std::find(r.bad_labels.begin(), r.bad_labels.end(), ex.label), r.bad_labels.end()) << ex.label;
  }
}

TEST(Intersection, ProfileSumsAlongARuling) {
  std::mt19937_64 rng(22);
  const auto& q = quadric(QuadricId::split);
  for (int t = 0; t < 20; ++t) {
    CubicForm c;
    for (auto& x : c.c) x = Gf8::from_code(rng() % 8);
    const auto prof = incidence_profile(q, c);
    std::size_t per[2] = {0, 0};
    for (std::size_t i = 0; i < prof.size(); ++i) per[q.curves()[i].ruling] += prof[i];
    const auto n8 = count_intersection(q, c, FieldId::gf8);
    EXPECT_EQ(per[0], n8);
    EXPECT_EQ(per[1], n8);
    EXPECT_EQ(incidences_at_most(q, c, 9), true);
  }
}

TEST(PlaneConics, OneForEachNonTangentPlane) {
  EXPECT_EQ(plane_conics(quadric(QuadricId::split)).size(), 585u - 81u);
  EXPECT_EQ(plane_conics(quadric(QuadricId::nonsplit)).size(), 585u - 65u);
  EXPECT_EQ(plane_conics(quadric(QuadricId::cone)).size(), 585u - 73u);
  for (const auto& pc : plane_conics(quadric(QuadricId::cone))) EXPECT_EQ(pc.points8.size(), 9u);
}

TEST(PlaneConics, ReducibleCubicContainsItsPlaneSection) {
  // (plane) * (generic quadric): the section of the plane lies on the cubic.
  const auto& q = quadric(QuadricId::nonsplit);
  const auto& pc = plane_conics(q).front();
  LinearForm l;
  for (int i = 0; i < 4; ++i) l.c[i] = pc.plane[i];
  QuadraticForm g;
  g.c[quad::X2] = Gf8::one();
  g.c[quad::YW] = Gf8::eta();
  g.c[quad::Z2] = Gf8::eta_pow(3);
  const auto c = multiply(l, g);
  const auto cc = contained_curves(q, c);
  EXPECT_NE(std::find(cc.conics.begin(), cc.conics.end(), pc.plane), cc.conics.end());
}

TEST(GoodCurve, OnlyTheTwoSmoothCounts) {
  EXPECT_TRUE(good_curve_test(27, 45));
  EXPECT_TRUE(good_curve_test(27, 43));
  for (std::size_t n : bad_n64_values()) EXPECT_FALSE(good_curve_test(27, n));
  EXPECT_THROW(good_curve_test(26, 45), std::invalid_argument);
}

TEST(Taxonomy, TableShape) {
  EXPECT_EQ(bad_n64_values(), (std::vector<std::size_t>{119, 181, 189, 191, 195, 197, 199, 205}));
  EXPECT_EQ(bad_case_table().size(), 10u);
  EXPECT_EQ(component_point_cap(3), 9);
  EXPECT_EQ(component_point_cap(4), 14);
  EXPECT_EQ(component_point_cap(5), 18);
  EXPECT_THROW(component_point_cap(6), std::invalid_argument);
  EXPECT_EQ(non_definable_point_cap(3), 9);
  for (const auto& row : bad_case_table())
    if (row.genus1_points && row.label.find("singular") == std::string::npos) {
      // A smooth genus-1 curve with N points over GF(8) has 81 - (N - 9)^2 over GF(64).
      const int x = *row.genus1_points - 9;
      EXPECT_EQ(*row.genus1_points64, 81 - x * x) << row.label;
    }
}

TEST(Taxonomy, NonTwentySevenReportsAreNotClassified) {
  CubicForm c;
  c.c[cubic::X3] = Gf8::one();
  const auto r = analyze(quadric(QuadricId::split), c);
  EXPECT_NE(r.n8, 27u);
  EXPECT_FALSE(r.good_curve);
  EXPECT_FALSE(r.anomalous);
  EXPECT_TRUE(r.bad_labels.empty());
}
