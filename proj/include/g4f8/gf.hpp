#pragma once

// Arithmetic in GF(8) and GF(64).
//
// GF(8) = GF(2)[eta]/(eta^3 + eta + 1). An element is stored as its bit
// vector (b2,b1,b0) = b2*eta^2 + b1*eta + b0, i.e. the integer codec 0..7.
//
// GF(64) uses the smallest degree-6 irreducible modulus over GF(2) that
// admits a generator beta with beta^9 a root of t^3 + t + 1; beta is the
// smallest such generator. The embedding GF(8) -> GF(64) sends eta to beta^9.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace g4f8 {

namespace detail {
constexpr std::array<std::uint8_t, 7> make_gf8_exp() {
  std::array<std::uint8_t, 7> e{};
  unsigned x = 1;
  for (int i = 0; i < 7; ++i) {
    e[i] = static_cast<std::uint8_t>(x);
    x <<= 1;
    if (x & 8) x ^= 0b1011;  // eta^3 = eta + 1
  }
  return e;
}
constexpr std::array<std::uint8_t, 8> make_gf8_log() {
  std::array<std::uint8_t, 8> l{};
  auto e = make_gf8_exp();
  for (int i = 0; i < 7; ++i) l[e[i]] = static_cast<std::uint8_t>(i);
  return l;
}
inline constexpr auto kGf8Exp = make_gf8_exp();
inline constexpr auto kGf8Log = make_gf8_log();
}  // namespace detail

class Gf8 {
 public:
  static constexpr unsigned order = 8;

  constexpr Gf8() = default;

  static constexpr Gf8 from_code(unsigned c) {
    if (c >= order) throw std::out_of_range("GF(8) codec out of range: " + std::to_string(c));
    return Gf8(static_cast<std::uint8_t>(c));
  }
  static constexpr Gf8 zero() { return Gf8(0); }
  static constexpr Gf8 one() { return Gf8(1); }
  static constexpr Gf8 eta() { return Gf8(2); }
  // eta^k for any integer k (negative exponents allowed).
  static constexpr Gf8 eta_pow(int k) {
    int e = ((k % 7) + 7) % 7;
    return Gf8(kExp[e]);
  }

  constexpr std::uint8_t code() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }
  // Discrete log base eta; undefined for zero.
  constexpr int log() const {
    if (v_ == 0) throw std::domain_error("log of zero in GF(8)");
    return kLog[v_];
  }

  friend constexpr Gf8 operator+(Gf8 a, Gf8 b) { return Gf8(a.v_ ^ b.v_); }
  friend constexpr Gf8 operator-(Gf8 a, Gf8 b) { return a + b; }
  friend constexpr Gf8 operator*(Gf8 a, Gf8 b) {
    if (a.v_ == 0 || b.v_ == 0) return Gf8(0);
    return Gf8(kExp[(kLog[a.v_] + kLog[b.v_]) % 7]);
  }
  constexpr Gf8& operator+=(Gf8 b) { return *this = *this + b; }
  constexpr Gf8& operator*=(Gf8 b) { return *this = *this * b; }

  constexpr Gf8 inv() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in GF(8)");
    return Gf8(kExp[(7 - kLog[v_]) % 7]);
  }
  friend constexpr Gf8 operator/(Gf8 a, Gf8 b) { return a * b.inv(); }

  friend constexpr bool operator==(Gf8, Gf8) = default;
  friend constexpr auto operator<=>(Gf8 a, Gf8 b) { return a.v_ <=> b.v_; }

 private:
  constexpr explicit Gf8(std::uint8_t v) : v_(v) {}

  static constexpr auto kExp = detail::kGf8Exp;
  static constexpr auto kLog = detail::kGf8Log;

  std::uint8_t v_ = 0;
};

/// Square root in GF(8): squaring is a bijection, and a^8 = a gives sqrt(a) = a^4.
constexpr Gf8 gf8_sqrt(Gf8 a) {
  Gf8 a2 = a * a;
  return a2 * a2;
}

/// Division that reports a zero divisor as an empty result instead of throwing.
struct Gf8Result {
  bool ok = false;
  Gf8 value;
};
constexpr Gf8Result gf8_checked_div(Gf8 a, Gf8 b) {
  if (b.is_zero()) return {};
  return {true, a / b};
}

class Gf64 {
 public:
  static constexpr unsigned order = 64;

  constexpr Gf64() = default;

  static Gf64 from_code(unsigned c) {
    if (c >= order) throw std::out_of_range("GF(64) codec out of range: " + std::to_string(c));
    return Gf64(static_cast<std::uint8_t>(c));
  }
  static constexpr Gf64 zero() { return Gf64(0); }
  static constexpr Gf64 one() { return Gf64(1); }
  static Gf64 beta();
  static Gf64 beta_pow(int k);

  /// Modulus of the polynomial basis, as an integer with bit i = coefficient of x^i.
  static unsigned modulus();

  constexpr std::uint8_t code() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }
  int log() const;

  friend constexpr Gf64 operator+(Gf64 a, Gf64 b) { return Gf64(a.v_ ^ b.v_); }
  friend constexpr Gf64 operator-(Gf64 a, Gf64 b) { return a + b; }
  friend Gf64 operator*(Gf64 a, Gf64 b);
  Gf64& operator+=(Gf64 b) { return *this = *this + b; }
  Gf64& operator*=(Gf64 b) { return *this = *this * b; }
  Gf64 inv() const;
  friend Gf64 operator/(Gf64 a, Gf64 b) { return a * b.inv(); }

  friend constexpr bool operator==(Gf64, Gf64) = default;
  friend constexpr auto operator<=>(Gf64 a, Gf64 b) { return a.v_ <=> b.v_; }

 private:
  constexpr explicit Gf64(std::uint8_t v) : v_(v) {}
  std::uint8_t v_ = 0;
};

/// The field embedding GF(8) -> GF(64), eta -> beta^9.
Gf64 embed(Gf8 a);

constexpr Gf8 frobenius(Gf8 a) { return a * a; }
inline Gf64 frobenius(Gf64 a) { return a * a; }

Gf64 gf64_sqrt(Gf64 a);

/// The raw tables behind GF(64), exposed for kernels that want byte-level access.
struct Gf64Tables {
  unsigned modulus = 0;
  std::uint8_t beta = 0;
  std::array<std::uint8_t, 64> log{};
  std::array<std::uint8_t, 126> exp{};  // doubled so exp[i + j] needs no reduction
  std::array<std::uint8_t, 8> embed8{};
};
const Gf64Tables& gf64_tables();

}  // namespace g4f8
