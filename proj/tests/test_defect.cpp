#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "g4f8/defect.hpp"

using namespace g4f8;

namespace {

IntPoly P(std::initializer_list<long> hi) { return IntPoly::from_high(hi); }

std::set<std::string> strings(const std::vector<IntPoly>& ps) {
  std::set<std::string> s;
  for (const auto& p : ps) s.insert(to_string(p));
  return s;
}

// Monic cubic: all roots real iff the discriminant is >= 0; then alternating
// signs force them positive.
bool cubic_roots_positive(const IntPoly& p) {
  const mpz_class b = p.coeff(2), c = p.coeff(1), d = p.coeff(0);
  const mpz_class disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
  return disc >= 0 && b < 0 && c > 0 && d < 0;
}

}  // namespace

TEST(Factors, EnumerationTables) {
  EXPECT_EQ(strings(enumerate_defect_factors(0)), (std::set<std::string>{"t - 1"}));
  EXPECT_EQ(strings(enumerate_defect_factors(1)), (std::set<std::string>{"t^2 - 3t + 1", "t - 2"}));
  EXPECT_EQ(strings(enumerate_defect_factors(2)),
            (std::set<std::string>{"t^3 - 5t^2 + 6t - 1", "t^2 - 4t + 1", "t^2 - 4t + 2", "t - 3"}));
  EXPECT_EQ(enumerate_defect_factors(3).size(), 13u);
  for (int k = 0; k <= 3; ++k)
    for (const auto& f : enumerate_defect_factors(k)) {
      EXPECT_EQ(factor_defect(f), k);
      EXPECT_TRUE(certify_positive_real_roots(f));
    }
}

TEST(Factors, PositiveRealPolynomialsAgreeWithNumericRoots) {
  // Degree 2: t^2 - s t + p has positive real roots iff s > 0, p > 0, s^2 >= 4p.
  for (int k = 0; k <= 3; ++k) {
    std::set<std::string> expect;
    const int s = k + 2;
    for (int p = 1; 4 * p <= s * s; ++p) expect.insert(to_string(P({1, -s, p})));
    EXPECT_EQ(strings(positive_real_polys(k, 2)), expect) << k;
  }
  for (int k = 0; k <= 3; ++k) {
    // Brute force over the box that Vieta bounds allow for trace k + 3.
    std::set<std::string> expect;
    const long s = k + 3;
    for (long c = 1; c <= s * s; ++c)
      for (long d = 1; d <= s * s * s; ++d)
        if (cubic_roots_positive(P({1, -s, c, -d}))) expect.insert(to_string(P({1, -s, c, -d})));
    EXPECT_EQ(strings(positive_real_polys(k, 3)), expect) << k;
  }
  EXPECT_FALSE(certify_positive_real_roots(P({1, -5, 7})));
}

TEST(Entries, ThresholdsMatchPrintedTables) {
  const auto& printed = printed_defect3_tables();
  ASSERT_EQ(printed.size(), 25u);
  const auto entries = defect_entries(3);
  ASSERT_EQ(entries.size(), 25u);
  for (const auto& row : printed) {
    const auto& e = defect3_entry(row.number);
    EXPECT_EQ(e.type_class, row.type_class);
    EXPECT_EQ(e.g_min, row.g_min) << row.number;
    EXPECT_EQ(strings(e.factors), strings(row.factors)) << row.number;
    EXPECT_TRUE(threshold_matches(threshold_21(e), row.threshold)) << row.number;
  }
}

TEST(Entries, ThresholdIsCertified) {
  const auto& e = defect3_entry(1);
  const auto t = threshold_21(e, 6);
  EXPECT_GE(t.digits, 6);
  EXPECT_THROW(t.render(t.digits + 5), std::invalid_argument);
  if (t.restricts) {
    // 1 - smallest root, numerically.
    const auto P1 = e.full_P(e.g_min);
    const auto roots = isolate_real_roots(squarefree_part(P1), mpq_class(1, 1000000));
    EXPECT_NEAR(t.approx(), 1 - roots.front().first.get_d(), 1e-5);
  }
}

TEST(RootSize, FractionalPartOfTwoSqrtQ) {
  EXPECT_EQ(floor_two_sqrt(8), 5);
  EXPECT_EQ(floor_two_sqrt(16), 8);
  EXPECT_EQ(floor_two_sqrt(2), 2);
  EXPECT_NEAR(2 * std::sqrt(8.0) - 5, 0.65685, 1e-5);
}

TEST(Decomposability, ListedEliminations) {
  EXPECT_EQ(decomposability_eliminations(2), (std::vector<int>{17}));
  EXPECT_EQ(decomposability_eliminations(4),
            (std::vector<int>{3, 4, 6, 8, 9, 10, 14, 15, 17, 19, 20, 21, 22, 23}));
  const auto g7 = decomposability_eliminations(7);
  EXPECT_EQ(g7.size(), 19u);
  for (int n : g7) {
    const auto cert = find_unit_split(defect3_entry(n), 7);
    ASSERT_TRUE(cert.has_value()) << n;
    EXPECT_EQ(resultant(cert->f, cert->g), cert->resultant);
    EXPECT_TRUE(cert->resultant == P({1}) || cert->resultant == P({-1}));
  }
}

TEST(GenusBounds, ClosedForms) {
  EXPECT_EQ(genus_bound_entry11(8), mpq_class(95, 37));
  EXPECT_EQ(genus_bound_single_root(8, 3), mpq_class(40, 7));
}

TEST(ZetaTypes, PointCounts) {
  EXPECT_EQ(points_from_type(ZetaType::from_integers({3, 3, 3, 3}, 8), 1), 21);
  // Genus 1 over F_8: N_64 = 64 + 1 + 2*8 - x^2.
  for (long x : {1L, 3L, 4L, 5L})
    EXPECT_EQ(points_from_type(ZetaType::from_integers({x}, 8), 2), 81 - x * x);
  const auto pc = place_counts(ZetaType::from_integers({5, 5, 5, 3}, 8));
  EXPECT_EQ(pc.a1, 27);
  EXPECT_EQ(pc.a2, 9);
  EXPECT_TRUE(pc.nonnegative_integers());
}

TEST(ZetaTypes, SmoothTwentySevenPointCurves) {
  const auto r = defect_pipeline(8, 4, 2);
  ASSERT_EQ(r.survivor_types.size(), 2u);
  std::set<long> n64;
  for (const auto& t : r.survivor_types) {
    EXPECT_EQ(points_from_type(t, 1), 27);
    n64.insert(points_from_type(t, 2).get_si());
  }
  EXPECT_EQ(n64, (std::set<long>{43, 45}));
}

TEST(Elliptic, TraceAdmissibility) {
  EXPECT_FALSE(elliptic_trace_admissible(8, 2));
  EXPECT_TRUE(elliptic_trace_admissible(8, 0));
  EXPECT_TRUE(elliptic_trace_admissible(8, 4));
  EXPECT_TRUE(elliptic_trace_admissible(8, 5));
  EXPECT_THROW(elliptic_trace_admissible(8, 6), std::out_of_range);
  EXPECT_THROW(elliptic_trace_admissible(4, 1), std::invalid_argument);
  EXPECT_THROW(elliptic_trace_admissible(12, 1), std::invalid_argument);
}

TEST(Pipeline, DefectThreeLeavesNothing) {
  const auto r = defect_pipeline(8, 4, 3);
  EXPECT_TRUE(r.survivors.empty());
  EXPECT_EQ(r.log.back(), "survivors: none");
  EXPECT_EQ(r.alive_after("2.1"), (std::vector<int>{8, 9, 10, 11, 13, 15, 17, 19, 21, 22, 23, 24, 25}));
  EXPECT_EQ(r.alive_after("HT"), std::vector<int>{});
  std::map<int, std::string> stage;
  for (const auto& rec : r.records) stage[rec.entry] = rec.stage;
  EXPECT_EQ(stage.size(), 25u);
  EXPECT_EQ(stage[11], "A.2");
  EXPECT_EQ(stage[13], "HT");
  EXPECT_EQ(stage[24], "g_min");
  EXPECT_EQ(stage[25], "g_min");
  for (int n : {8, 9, 10, 15, 17, 19, 21, 22, 23}) EXPECT_EQ(stage[n], "A.1") << n;
  const auto audit = r.audit_json();
  EXPECT_NE(audit.find("\"stage_eliminated\""), std::string::npos);
}

TEST(Pipeline, DefectTwoKeepsTheTwoSmoothTypes) {
  const auto r = defect_pipeline(8, 4, 2);
  ASSERT_EQ(r.survivors.size(), 2u);
  std::set<std::string> prods;
  for (const auto& e : r.survivors) prods.insert(to_string(e.mandatory()));
  EXPECT_EQ(prods, (std::set<std::string>{"t - 3", to_string(P({1, -3, 1}).pow(2))}));
}

TEST(Pipeline, OtherFieldsRun) {
  const auto r = defect_pipeline(16, 4, 3);
  ASSERT_EQ(r.survivors.size(), 1u);
  EXPECT_EQ(r.survivors.front().number, 13);
}
