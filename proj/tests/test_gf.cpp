#include <gtest/gtest.h>

#include <set>

#include "g4f8/gf.hpp"
#include "g4f8/proj.hpp"

using namespace g4f8;

namespace {

// Carry-less product reduced by the given modulus; independent of the log tables.
unsigned clmul_mod(unsigned a, unsigned b, unsigned modulus, int degree) {
  unsigned r = 0;
  for (int i = 0; i < degree; ++i)
    if (b >> i & 1) r ^= a << i;
  for (int i = 2 * degree - 2; i >= degree; --i)
    if (r >> i & 1) r ^= modulus << (i - degree);
  return r;
}

}  // namespace

TEST(Gf8, MultiplicationMatchesPolynomialArithmetic) {
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b)
      EXPECT_EQ((Gf8::from_code(a) * Gf8::from_code(b)).code(), clmul_mod(a, b, 0b1011, 3)) << a << "*" << b;
}

TEST(Gf8, EtaSatisfiesItsMinimalPolynomial) {
  const Gf8 eta = Gf8::eta();
  EXPECT_EQ(eta * eta * eta, eta + Gf8::one());
  EXPECT_EQ(Gf8::eta_pow(7), Gf8::one());
  EXPECT_EQ(Gf8::eta_pow(-1) * eta, Gf8::one());
  std::set<unsigned> powers;
  for (int k = 0; k < 7; ++k) powers.insert(Gf8::eta_pow(k).code());
  EXPECT_EQ(powers.size(), 7u);
}

TEST(Gf8, FieldAxioms) {
  const auto f = field_elements<Gf8>();
  for (auto a : f) {
    EXPECT_EQ(a + a, Gf8::zero());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inv(), Gf8::one());
      EXPECT_EQ(Gf8::eta_pow(a.log()), a);
    }
    EXPECT_EQ(gf8_sqrt(a) * gf8_sqrt(a), a);
    for (auto b : f)
      for (auto c : f) {
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
      }
  }
}

TEST(Gf8, Errors) {
  EXPECT_THROW(Gf8::from_code(8), std::out_of_range);
  EXPECT_THROW(Gf8::zero().inv(), std::domain_error);
  EXPECT_THROW(Gf8::zero().log(), std::domain_error);
  EXPECT_FALSE(gf8_checked_div(Gf8::one(), Gf8::zero()).ok);
}

TEST(Gf64, MultiplicationMatchesPolynomialArithmetic) {
  const unsigned mod = Gf64::modulus();
  EXPECT_EQ(mod, 0b1000011u);
  for (unsigned a = 0; a < 64; ++a)
    for (unsigned b = 0; b < 64; ++b)
      ASSERT_EQ((Gf64::from_code(a) * Gf64::from_code(b)).code(), clmul_mod(a, b, mod, 6)) << a << "*" << b;
}

TEST(Gf64, BetaGeneratesTheMultiplicativeGroup) {
  std::set<unsigned> seen;
  Gf64 x = Gf64::one();
  for (int k = 0; k < 63; ++k) {
    seen.insert(x.code());
    EXPECT_EQ(Gf64::beta_pow(k), x);
    x = x * Gf64::beta();
  }
  EXPECT_EQ(x, Gf64::one());
  EXPECT_EQ(seen.size(), 63u);
}

TEST(Gf64, InverseSqrtAndFrobenius) {
  for (auto a : field_elements<Gf64>()) {
    if (!a.is_zero()) EXPECT_EQ(a * a.inv(), Gf64::one());
    EXPECT_EQ(gf64_sqrt(a) * gf64_sqrt(a), a);
    Gf64 f = a;
    for (int i = 0; i < 6; ++i) f = frobenius(f);
    EXPECT_EQ(f, a);
  }
  EXPECT_THROW(Gf64::from_code(64), std::out_of_range);
  EXPECT_THROW(Gf64::zero().inv(), std::domain_error);
}

TEST(Gf64, EmbeddingIsAnInjectiveHomomorphism) {
  EXPECT_EQ(embed(Gf8::eta()), Gf64::beta_pow(9));
  std::set<unsigned> image;
  for (auto a : field_elements<Gf8>()) {
    image.insert(embed(a).code());
    // Image is the fixed field of x -> x^8.
    const Gf64 x = embed(a);
    EXPECT_EQ(frobenius(frobenius(frobenius(x))), x);
    for (auto b : field_elements<Gf8>()) {
      EXPECT_EQ(embed(a + b), embed(a) + embed(b));
      EXPECT_EQ(embed(a * b), embed(a) * embed(b));
    }
  }
  EXPECT_EQ(image.size(), 8u);
}

TEST(Gf64, TablesAgreeWithOperators) {
  const auto& t = gf64_tables();
  EXPECT_EQ(t.modulus, Gf64::modulus());
  EXPECT_EQ(t.beta, Gf64::beta().code());
  for (unsigned a = 1; a < 64; ++a) EXPECT_EQ(t.exp[t.log[a]], a);
  for (unsigned a = 0; a < 8; ++a) EXPECT_EQ(t.embed8[a], embed(Gf8::from_code(a)).code());
}
