#pragma once

// Points of P^3 and homogeneous quadratic/cubic forms in X, Y, Z, W over a
// small characteristic-2 field, with evaluation and linear substitution.
//
// Monomials are indexed in degree-lex order with X > Y > Z > W:
//   quadratic: X2 XY XZ XW Y2 YZ YW Z2 ZW W2
//   cubic:     X3 X2Y X2Z X2W XY2 XYZ XYW XZ2 XZW XW2
//              Y3 Y2Z Y2W YZ2 YZW YW2 Z3 Z2W ZW2 W3
// Every certificate indexes coefficients by these orders.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "g4f8/gf.hpp"

namespace g4f8 {

template <class F>
concept SmallField = requires(F a, F b, unsigned c) {
  { a + b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a.inv() } -> std::same_as<F>;
  { a.code() } -> std::convertible_to<unsigned>;
  { a.is_zero() } -> std::same_as<bool>;
  { F::from_code(c) } -> std::same_as<F>;
  F::order;
};

template <SmallField F>
std::vector<F> field_elements() {
  std::vector<F> out;
  out.reserve(F::order);
  for (unsigned c = 0; c < F::order; ++c) out.push_back(F::from_code(c));
  return out;
}

// ---------------------------------------------------------------------------
// Monomials

constexpr int kVars = 4;

constexpr std::size_t num_monomials(int degree) {
  // C(degree + 3, 3)
  return static_cast<std::size_t>((degree + 1) * (degree + 2) * (degree + 3) / 6);
}

/// Variable multiset of each monomial: e.g. cubic index 5 (XYZ) -> {0, 1, 2}.
template <int Degree>
constexpr std::array<std::array<std::uint8_t, Degree>, num_monomials(Degree)> monomial_vars() {
  std::array<std::array<std::uint8_t, Degree>, num_monomials(Degree)> out{};
  std::array<std::uint8_t, Degree> cur{};
  std::size_t n = 0;
  // Non-decreasing variable tuples in lexicographic order.
  while (true) {
    out[n++] = cur;
    int i = Degree - 1;
    while (i >= 0 && cur[i] == kVars - 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < Degree; ++j) cur[j] = cur[i];
  }
  return out;
}

template <int Degree>
constexpr std::size_t monomial_index(std::array<std::uint8_t, Degree> vars) {
  std::sort(vars.begin(), vars.end());
  constexpr auto table = monomial_vars<Degree>();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == vars) return i;
  throw std::logic_error("unknown monomial");
}

/// Printable name of a monomial, e.g. "X2Y" or "YZW".
template <int Degree>
std::string monomial_name(std::size_t index) {
  static constexpr char kNames[] = {'X', 'Y', 'Z', 'W'};
  constexpr auto table = monomial_vars<Degree>();
  std::array<int, kVars> exps{};
  for (auto v : table.at(index)) ++exps[v];
  std::string s;
  for (int v = 0; v < kVars; ++v) {
    if (exps[v] == 0) continue;
    s += kNames[v];
    if (exps[v] > 1) s += std::to_string(exps[v]);
  }
  return s;
}

namespace cubic {
// Coefficient positions of the cubic monomials, by name.
enum : std::size_t {
  X3, X2Y, X2Z, X2W, XY2, XYZ, XYW, XZ2, XZW, XW2,
  Y3, Y2Z, Y2W, YZ2, YZW, YW2, Z3, Z2W, ZW2, W3
};
}  // namespace cubic

namespace quad {
enum : std::size_t { X2, XY, XZ, XW, Y2, YZ, YW, Z2, ZW, W2 };
}  // namespace quad

// ---------------------------------------------------------------------------
// Points

template <SmallField F>
struct ProjPoint {
  std::array<F, 4> x{};

  /// Scales so the first nonzero coordinate is 1. Throws on the zero vector.
  static ProjPoint normalized(std::array<F, 4> v) {
    for (int i = 0; i < 4; ++i) {
      if (!v[i].is_zero()) {
        F s = v[i].inv();
        for (auto& c : v) c = c * s;
        return ProjPoint{v};
      }
    }
    throw std::invalid_argument("the zero vector is not a projective point");
  }

  bool is_canonical() const {
    for (int i = 0; i < 4; ++i)
      if (!x[i].is_zero()) return x[i] == F::one();
    return false;
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) {
    for (int i = 0; i < 4; ++i)
      if (auto c = a.x[i].code() <=> b.x[i].code(); c != 0) return c;
    return std::strong_ordering::equal;
  }
};

using Point8 = ProjPoint<Gf8>;
using Point64 = ProjPoint<Gf64>;

/// All canonical points of P^3(F) in lexicographic order of the codec.
template <SmallField F>
std::vector<ProjPoint<F>> enumerate_points() {
  const auto elems = field_elements<F>();
  const std::size_t q = elems.size();
  std::vector<ProjPoint<F>> out;
  out.reserve((q * q * q * q - 1) / (q - 1));
  // Leading 1 in position 3, 2, 1, 0 gives increasing lexicographic blocks.
  for (int lead = 3; lead >= 0; --lead) {
    const int free = 3 - lead;
    std::size_t total = 1;
    for (int i = 0; i < free; ++i) total *= q;
    for (std::size_t n = 0; n < total; ++n) {
      ProjPoint<F> p;
      p.x[lead] = F::one();
      std::size_t r = n;
      for (int i = 3; i > lead; --i) {
        p.x[i] = elems[r % q];
        r /= q;
      }
      out.push_back(p);
    }
  }
  return out;
}

template <SmallField F>
F dot(const std::array<F, 4>& a, const std::array<F, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// ---------------------------------------------------------------------------
// Forms

template <SmallField F, int Degree>
struct Form {
  static constexpr int degree = Degree;
  static constexpr std::size_t size = num_monomials(Degree);
  std::array<F, size> c{};

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](F v) { return v.is_zero(); });
  }
  friend Form operator+(const Form& a, const Form& b) {
    Form r;
    for (std::size_t i = 0; i < size; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Form operator*(F s, const Form& a) {
    Form r;
    for (std::size_t i = 0; i < size; ++i) r.c[i] = s * a.c[i];
    return r;
  }
  friend bool operator==(const Form&, const Form&) = default;

  std::vector<unsigned> codes() const {
    std::vector<unsigned> out;
    for (auto v : c) out.push_back(v.code());
    return out;
  }
  static Form from_codes(const std::vector<unsigned>& codes) {
    if (codes.size() != size)
      throw std::invalid_argument("expected " + std::to_string(size) + " coefficients, got " +
                                  std::to_string(codes.size()));
    Form f;
    for (std::size_t i = 0; i < size; ++i) f.c[i] = F::from_code(codes[i]);
    return f;
  }
};

using QuadraticForm = Form<Gf8, 2>;
using CubicForm = Form<Gf8, 3>;

using LinearForm = Form<Gf8, 1>;

/// Product of forms, reduced to the degree-lex monomial basis.
template <SmallField F, int A, int B>
Form<F, A + B> multiply(const Form<F, A>& f, const Form<F, B>& g) {
  constexpr auto va = monomial_vars<A>();
  constexpr auto vb = monomial_vars<B>();
  Form<F, A + B> out;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (f.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (g.c[j].is_zero()) continue;
      std::array<std::uint8_t, A + B> vars{};
      std::copy(va[i].begin(), va[i].end(), vars.begin());
      std::copy(vb[j].begin(), vb[j].end(), vars.begin() + A);
      const auto k = monomial_index<A + B>(vars);
      out.c[k] = out.c[k] + f.c[i] * g.c[j];
    }
  }
  return out;
}

/// Value of each monomial at the given coordinates.
template <SmallField F, int Degree>
std::array<F, num_monomials(Degree)> monomial_values(const std::array<F, 4>& x) {
  constexpr auto vars = monomial_vars<Degree>();
  std::array<F, num_monomials(Degree)> out{};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    F v = F::one();
    for (auto k : vars[i]) v = v * x[k];
    out[i] = v;
  }
  return out;
}

/// Direct evaluation: sum of coefficient times monomial product.
template <SmallField F, int Degree>
F eval(const Form<F, Degree>& f, const ProjPoint<F>& p) {
  constexpr auto vars = monomial_vars<Degree>();
  F acc = F::zero();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (f.c[i].is_zero()) continue;
    F v = f.c[i];
    for (auto k : vars[i]) v = v * p.x[k];
    acc = acc + v;
  }
  return acc;
}

template <int Degree>
Form<Gf64, Degree> embed_form(const Form<Gf8, Degree>& f) {
  Form<Gf64, Degree> r;
  for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i] = embed(f.c[i]);
  return r;
}

inline Point64 embed_point(const Point8& p) {
  return Point64{{embed(p.x[0]), embed(p.x[1]), embed(p.x[2]), embed(p.x[3])}};
}

/// GF(8) form evaluated at a GF(64) point.
template <int Degree>
Gf64 eval(const Form<Gf8, Degree>& f, const Point64& p) {
  return eval(embed_form(f), p);
}

template <SmallField F, int Degree>
std::size_t zero_locus_count(const Form<F, Degree>& f, const std::vector<ProjPoint<F>>& points) {
  std::size_t n = 0;
  for (const auto& p : points)
    if (eval(f, p).is_zero()) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Matrices

template <SmallField F>
struct Matrix4 {
  std::array<F, 16> m{};  // row-major

  static Matrix4 identity() {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) r.m[i * 5] = F::one();
    return r;
  }
  static Matrix4 from_rows(std::initializer_list<std::initializer_list<F>> rows) {
    Matrix4 r;
    int i = 0;
    for (auto& row : rows) {
      int j = 0;
      for (auto v : row) r.m[i * 4 + j++] = v;
      ++i;
    }
    return r;
  }

  F& operator()(int i, int j) { return m[i * 4 + j]; }
  F operator()(int i, int j) const { return m[i * 4 + j]; }

  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        F acc = F::zero();
        for (int k = 0; k < 4; ++k) acc = acc + a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    return r;
  }

  std::array<F, 4> apply(const std::array<F, 4>& v) const {
    std::array<F, 4> r{};
    for (int i = 0; i < 4; ++i) r[i] = a_row_dot(i, v);
    return r;
  }
  ProjPoint<F> apply(const ProjPoint<F>& p) const { return ProjPoint<F>::normalized(apply(p.x)); }

  F det() const {
    Matrix4 a = *this;
    F d = F::one();
    for (int col = 0; col < 4; ++col) {
      int piv = -1;
      for (int r = col; r < 4; ++r)
        if (!a(r, col).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return F::zero();
      if (piv != col)
        for (int j = 0; j < 4; ++j) std::swap(a(piv, j), a(col, j));  // sign is irrelevant in char 2
      d = d * a(col, col);
      F inv = a(col, col).inv();
      for (int r = col + 1; r < 4; ++r) {
        F f = a(r, col) * inv;
        if (f.is_zero()) continue;
        for (int j = col; j < 4; ++j) a(r, j) = a(r, j) + f * a(col, j);
      }
    }
    return d;
  }
  bool invertible() const { return !det().is_zero(); }

  friend bool operator==(const Matrix4&, const Matrix4&) = default;

 private:
  F a_row_dot(int i, const std::array<F, 4>& v) const {
    return m[i * 4] * v[0] + m[i * 4 + 1] * v[1] + m[i * 4 + 2] * v[2] + m[i * 4 + 3] * v[3];
  }
};

using Matrix8 = Matrix4<Gf8>;

/// The composed form f(M v). Right action: substitute(f, A*B) == substitute(substitute(f, A), B).
template <SmallField F, int Degree>
Form<F, Degree> substitute(const Form<F, Degree>& f, const Matrix4<F>& mat) {
  if (!mat.invertible()) throw std::invalid_argument("substitution by a singular matrix");
  constexpr auto vars = monomial_vars<Degree>();
  Form<F, Degree> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (f.c[i].is_zero()) continue;
    // Expand prod_k (sum_j mat(v_k, j) X_j).
    std::array<std::uint8_t, Degree> pick{};
    while (true) {
      F coeff = f.c[i];
      for (int k = 0; k < Degree && !coeff.is_zero(); ++k) coeff = coeff * mat(vars[i][k], pick[k]);
      if (!coeff.is_zero()) {
        auto idx = monomial_index<Degree>(pick);
        out.c[idx] = out.c[idx] + coeff;
      }
      int k = Degree - 1;
      while (k >= 0 && pick[k] == kVars - 1) pick[k--] = 0;
      if (k < 0) break;
      ++pick[k];
    }
  }
  return out;
}

/// Rank of a set of vectors in F^4.
template <SmallField F>
int span_rank(const std::vector<ProjPoint<F>>& pts) {
  std::vector<std::array<F, 4>> rows;
  for (const auto& p : pts) rows.push_back(p.x);
  int rank = 0;
  for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    F inv = rows[rank][col].inv();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col].is_zero()) continue;
      F f = rows[r][col] * inv;
      for (int j = 0; j < 4; ++j) rows[r][j] = rows[r][j] + f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace g4f8
