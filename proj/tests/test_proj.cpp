#include <gtest/gtest.h>

#include <random>
#include <set>

#include "g4f8/proj.hpp"

using namespace g4f8;

TEST(Monomials, DegreeLexOrder) {
  EXPECT_EQ(num_monomials(2), 10u);
  EXPECT_EQ(num_monomials(3), 20u);
  const char* names[] = {"X3", "X2Y", "X2Z", "X2W", "XY2", "XYZ", "XYW", "XZ2", "XZW", "XW2",
                         "Y3", "Y2Z", "Y2W", "YZ2", "YZW", "YW2", "Z3", "Z2W", "ZW2", "W3"};
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(monomial_name<3>(i), names[i]);
  EXPECT_EQ(monomial_name<2>(quad::ZW), "ZW");
  EXPECT_EQ(cubic::XYZ, monomial_index<3>({2, 0, 1}));
}

TEST(Points, EnumerationCountsAndCanonicalForm) {
  const auto p8 = enumerate_points<Gf8>();
  EXPECT_EQ(p8.size(), 585u);
  EXPECT_EQ(enumerate_points<Gf64>().size(), 266305u);
  std::set<Point8> uniq(p8.begin(), p8.end());
  EXPECT_EQ(uniq.size(), p8.size());
  for (const auto& p : p8) EXPECT_TRUE(p.is_canonical());
  EXPECT_THROW(Point8::normalized({}), std::invalid_argument);
}

TEST(Points, NormalizationIsScaleInvariant) {
  for (const auto& p : enumerate_points<Gf8>())
    for (int k = 1; k < 7; ++k) {
      auto v = p.x;
      for (auto& c : v) c = c * Gf8::eta_pow(k);
      EXPECT_EQ(Point8::normalized(v), p);
    }
}

TEST(Forms, EvaluationIsHomogeneousOfItsDegree) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    CubicForm f;
    for (auto& c : f.c) c = Gf8::from_code(rng() % 8);
    std::array<Gf8, 4> x;
    for (auto& c : x) c = Gf8::from_code(rng() % 8);
    const Gf8 s = Gf8::from_code(1 + rng() % 7);
    auto sx = x;
    for (auto& c : sx) c = c * s;
    EXPECT_EQ(eval(f, Point8{sx}), s * s * s * eval(f, Point8{x}));
  }
}

TEST(Forms, CodesRoundTripAndSizeCheck) {
  CubicForm f;
  f.c[cubic::XYW] = Gf8::eta();
  EXPECT_EQ(CubicForm::from_codes(f.codes()), f);
  EXPECT_THROW(CubicForm::from_codes({1, 2, 3}), std::invalid_argument);
}

TEST(Forms, ProductEvaluatesAsProduct) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    LinearForm l;
    QuadraticForm q;
    for (auto& c : l.c) c = Gf8::from_code(rng() % 8);
    for (auto& c : q.c) c = Gf8::from_code(rng() % 8);
    const auto prod = multiply(l, q);
    for (const auto& p : enumerate_points<Gf8>()) ASSERT_EQ(eval(prod, p), eval(l, p) * eval(q, p));
  }
}

TEST(Forms, SubstitutionComposesAndEvaluates) {
  std::mt19937 rng(3);
  auto random_matrix = [&] {
    Matrix8 m;
    do {
      for (auto& c : m.m) c = Gf8::from_code(rng() % 8);
    } while (!m.invertible());
    return m;
  };
  for (int trial = 0; trial < 30; ++trial) {
    QuadraticForm f;
    for (auto& c : f.c) c = Gf8::from_code(rng() % 8);
    const Matrix8 a = random_matrix(), b = random_matrix();
    EXPECT_EQ(substitute(f, a * b), substitute(substitute(f, a), b));
    const auto g = substitute(f, a);
    for (const auto& p : enumerate_points<Gf8>()) ASSERT_EQ(eval(g, p), eval(f, Point8{a.apply(p.x)}));
  }
  EXPECT_THROW(substitute(QuadraticForm{}, Matrix8{}), std::invalid_argument);
}

TEST(Forms, EmbeddingPreservesZeros) {
  CubicForm f;
  f.c[cubic::X3] = Gf8::one();
  f.c[cubic::YZW] = Gf8::eta();
  const auto f64 = embed_form(f);
  for (const auto& p : enumerate_points<Gf8>())
    EXPECT_EQ(eval(f, p).is_zero(), eval(f64, embed_point(p)).is_zero());
}

TEST(Matrices, DeterminantAndRank) {
  EXPECT_EQ(Matrix8::identity().det(), Gf8::one());
  Matrix8 m = Matrix8::identity();
  m(3, 3) = Gf8::zero();
  EXPECT_FALSE(m.invertible());
  std::vector<Point8> pts = {Point8::normalized({Gf8::one(), Gf8::zero(), Gf8::zero(), Gf8::zero()}),
                             Point8::normalized({Gf8::zero(), Gf8::one(), Gf8::zero(), Gf8::zero()}),
                             Point8::normalized({Gf8::one(), Gf8::one(), Gf8::zero(), Gf8::zero()})};
  EXPECT_EQ(span_rank(pts), 2);
}
