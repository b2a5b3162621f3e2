#pragma once

// Exact univariate polynomials over Z and Q, Sturm sequences, and
// resultants of polynomials whose coefficients are themselves integer
// polynomials in a symbol m.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace g4f8 {

/// Coefficients low to high; the zero polynomial has no coefficients.
template <class T>
class Poly {
 public:
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  static Poly monomial(T v, int deg) {
    std::vector<T> cs(deg + 1);
    cs[deg] = std::move(v);
    return Poly(std::move(cs));
  }
  /// Coefficients listed from the leading term down, as printed in tables.
  static Poly from_high(std::initializer_list<long> hi) {
    std::vector<T> cs;
    for (auto it = std::rbegin(hi); it != std::rend(hi); ++it) cs.emplace_back(*it);
    return Poly(std::move(cs));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const T& leading() const { return c.back(); }
  T coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : T(0); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

  Poly pow(int e) const {
    Poly r = constant(T(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  Poly derivative() const {
    std::vector<T> r;
    for (std::size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * T(static_cast<long>(i)));
    return Poly(std::move(r));
  }
  /// p(s) for s in any ring that T converts into.
  template <class S>
  S eval(const S& x) const {
    S acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + S(c[i]);
    return acc;
  }
  /// p(t + a)
  Poly shift(const T& a) const {
    Poly r;
    const Poly lin(std::vector<T>{a, T(1)});
    for (std::size_t i = c.size(); i-- > 0;) r = r * lin + constant(c[i]);
    return r;
  }
};

using IntPoly = Poly<mpz_class>;
using QPoly = Poly<mpq_class>;

std::string to_string(const IntPoly& p, char var = 't');
/// "1 -6 9 -3": coefficients from the leading term down.
std::string coeff_string(const IntPoly& p);

QPoly to_q(const IntPoly& p);
/// Scales a rational polynomial to a primitive integer polynomial with positive leading coefficient.
IntPoly primitive_part(const QPoly& p);

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);
/// Exact quotient a / b over Z, if b divides a.
bool divides(const IntPoly& b, const IntPoly& a, IntPoly* quotient = nullptr);

/// p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);

// ---------------------------------------------------------------------------
// Real roots

/// a + b sqrt(d), with d > 0 not required to be a non-square.
struct Surd {
  mpq_class a, b;
  mpz_class d;
};

int sign(const mpq_class& x);
int sign(const Surd& x);
int sign_at(const QPoly& p, const mpq_class& x);
int sign_at(const QPoly& p, const Surd& x);

class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);
  /// Sign changes at x.
  int variations(const mpq_class& x) const;
  int variations(const Surd& x) const;
  /// Distinct real roots in (a, b].
  int count(const mpq_class& a, const mpq_class& b) const;
  int count(const Surd& a, const Surd& b) const;
  const QPoly& base() const { return seq_.front(); }

 private:
  std::vector<QPoly> seq_;
};

/// Cauchy bound: every root has absolute value below it.
mpq_class root_bound(const IntPoly& p);

/// True iff every root of p, with multiplicity, is real and strictly positive.
bool certify_positive_real_roots(const IntPoly& p);

/// Disjoint intervals (lo, hi], one per distinct real root, in increasing order, each narrower than width.
std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const IntPoly& p, const mpq_class& width);

/// Distinct roots of p in the closed interval [lo, hi].
int count_roots_closed(const IntPoly& p, const Surd& lo, const Surd& hi);

// ---------------------------------------------------------------------------
// Polynomials in T over Z[m]

using MPoly = IntPoly;  // an element of Z[m]

struct ZmPoly {
  std::vector<MPoly> c;  // coefficients of T^i, low to high
  int degree() const { return static_cast<int>(c.size()) - 1; }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  friend ZmPoly operator*(const ZmPoly& a, const ZmPoly& b);
  friend bool operator==(const ZmPoly&, const ZmPoly&) = default;
};

/// p(T + m + 1) for an integer polynomial p(t).
ZmPoly shift_by_m_plus_1(const IntPoly& p);
ZmPoly zm_from(std::vector<MPoly> coeffs);

/// Sylvester-matrix determinant, exact (fraction-free elimination over Z[m]).
MPoly resultant(const ZmPoly& f, const ZmPoly& g);

std::string to_string(const ZmPoly& p);

}  // namespace g4f8
