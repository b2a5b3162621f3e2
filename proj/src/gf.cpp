#include "g4f8/gf.hpp"

namespace g4f8 {
namespace {

unsigned degree(unsigned p) {
  unsigned d = 0;
  while (p >> (d + 1)) ++d;
  return d;
}

unsigned poly_mod(unsigned a, unsigned m) {
  const unsigned dm = degree(m);
  while (a && degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

unsigned mul_mod(unsigned a, unsigned b, unsigned m) {
  unsigned r = 0;
  for (unsigned i = 0; b >> i; ++i)
    if ((b >> i) & 1) r ^= a << i;
  return poly_mod(r, m);
}

bool irreducible_deg6(unsigned f) {
  // Trial division by every polynomial of degree 1..3.
  for (unsigned g = 2; g < 16; ++g)
    if (poly_mod(f, g) == 0) return false;
  return true;
}

Gf64Tables build_tables() {
  for (unsigned m = 64; m < 128; ++m) {
    if (!irreducible_deg6(m)) continue;
    for (unsigned b = 2; b < 64; ++b) {
      std::array<std::uint8_t, 63> pw{};
      unsigned x = 1;
      bool generator = true;
      for (unsigned i = 0; i < 63; ++i) {
        pw[i] = static_cast<std::uint8_t>(x);
        x = mul_mod(x, b, m);
        if (x == 1 && i + 1 < 63) {
          generator = false;
          break;
        }
      }
      if (!generator) continue;
      const unsigned t = pw[9];
      const unsigned t3 = mul_mod(mul_mod(t, t, m), t, m);
      if ((t3 ^ t ^ 1u) != 0) continue;

      Gf64Tables tab;
      tab.modulus = m;
      tab.beta = static_cast<std::uint8_t>(b);
      for (unsigned i = 0; i < 126; ++i) tab.exp[i] = pw[i % 63];
      for (unsigned i = 0; i < 63; ++i) tab.log[pw[i]] = static_cast<std::uint8_t>(i);
      const unsigned t2 = mul_mod(t, t, m);
      for (unsigned c = 0; c < 8; ++c) {
        unsigned v = 0;
        if (c & 1) v ^= 1;
        if (c & 2) v ^= t;
        if (c & 4) v ^= t2;
        tab.embed8[c] = static_cast<std::uint8_t>(v);
      }
      return tab;
    }
  }
  throw std::logic_error("no GF(64) modulus admits a generator beta with beta^9 a root of t^3+t+1");
}

}  // namespace

const Gf64Tables& gf64_tables() {
  static const Gf64Tables tables = build_tables();
  return tables;
}

Gf64 Gf64::beta() { return Gf64(gf64_tables().beta); }

Gf64 Gf64::beta_pow(int k) {
  int e = ((k % 63) + 63) % 63;
  return Gf64(gf64_tables().exp[e]);
}

unsigned Gf64::modulus() { return gf64_tables().modulus; }

int Gf64::log() const {
  if (v_ == 0) throw std::domain_error("log of zero in GF(64)");
  return gf64_tables().log[v_];
}

Gf64 operator*(Gf64 a, Gf64 b) {
  if (a.v_ == 0 || b.v_ == 0) return Gf64(0);
  const auto& t = gf64_tables();
  return Gf64(t.exp[t.log[a.v_] + t.log[b.v_]]);
}

Gf64 Gf64::inv() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in GF(64)");
  const auto& t = gf64_tables();
  return Gf64(t.exp[(63 - t.log[v_]) % 63]);
}

Gf64 embed(Gf8 a) { return Gf64::from_code(gf64_tables().embed8[a.code()]); }

Gf64 gf64_sqrt(Gf64 a) {
  // a^64 = a, so sqrt(a) = a^32.
  Gf64 r = a;
  for (int i = 0; i < 5; ++i) r = r * r;
  return r;
}

}  // namespace g4f8
