#pragma once

#include <string>

#include "g4f8/proj.hpp"

namespace g4f8::testing {

inline Gf8 e(int k) { return Gf8::eta_pow(k); }

struct WorkedExample {
  CubicForm cubic;
  std::size_t n64;
  std::vector<std::string> lines;
  std::string label;
};

// Three cubics on the split quadric XY + ZW with 27 points.
inline std::vector<WorkedExample> worked_examples() {
  using namespace cubic;
  const Gf8 o = Gf8::one();

  CubicForm c1;
  c1.c[X2W] = o;
  c1.c[XYW] = e(1);
  c1.c[XZW] = e(-1);
  c1.c[XW2] = e(-3);
  c1.c[Y2Z] = e(1);
  c1.c[Y2W] = o;
  c1.c[YZ2] = e(-2);
  c1.c[YZW] = e(-1);
  c1.c[YW2] = o;

  // (eta Y + Z) times a quadric.
  LinearForm l;
  l.c[1] = e(1);
  l.c[2] = o;
  QuadraticForm g;
  g.c[quad::YZ] = o;
  g.c[quad::XZ] = o;
  g.c[quad::XW] = e(1);
  g.c[quad::W2] = e(-1);
  g.c[quad::ZW] = e(1);
  g.c[quad::YW] = e(-1);
  const CubicForm c2 = multiply(l, g);

  CubicForm c3;
  c3.c[X2Z] = e(-2);
  c3.c[XYZ] = e(3);
  c3.c[XYW] = e(3);
  c3.c[XZ2] = e(-2);
  c3.c[XZW] = e(3);
  c3.c[Y2W] = o;
  c3.c[YZW] = e(3);
  c3.c[YW2] = o;

  return {
      {c1, 119, {"A[1:0]"}, "(5,1)"},
      {c2, 197, {"A[1:5]", "B[1:0]"}, "(4,1,1) genus-1 12 points, transversal contact"},
      {c3, 195, {"B[0:1]", "B[1:0]", "B[1:1]"}, "(1,1,1,1,1,1)"},
  };
}

/// GF(2), for brute-force group computations small enough to run in a test.
struct Gf2 {
  static constexpr unsigned order = 2;
  std::uint8_t v = 0;

  static Gf2 from_code(unsigned c) {
    if (c >= 2) throw std::out_of_range("GF(2) codec");
    return Gf2{static_cast<std::uint8_t>(c)};
  }
  static Gf2 zero() { return {0}; }
  static Gf2 one() { return {1}; }
  unsigned code() const { return v; }
  bool is_zero() const { return v == 0; }
  Gf2 inv() const {
    if (!v) throw std::domain_error("inverse of zero");
    return *this;
  }
  friend Gf2 operator+(Gf2 a, Gf2 b) { return {static_cast<std::uint8_t>(a.v ^ b.v)}; }
  friend Gf2 operator*(Gf2 a, Gf2 b) { return {static_cast<std::uint8_t>(a.v & b.v)}; }
  friend bool operator==(Gf2, Gf2) = default;
};

}  // namespace g4f8::testing
