#include "g4f8/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace g4f8 {

std::string to_string(const IntPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const mpz_class& a = p.c[i];
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::string coeff_string(const IntPoly& p) {
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    if (!s.empty()) s += ' ';
    s += p.c[i].get_str();
  }
  return s;
}

QPoly to_q(const IntPoly& p) {
  std::vector<mpq_class> c;
  for (const auto& a : p.c) c.emplace_back(a);
  return QPoly(std::move(c));
}

IntPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return {};
  mpz_class den = 1;
  for (const auto& a : p.c) den = lcm(den, mpz_class(a.get_den()));
  std::vector<mpz_class> c;
  mpz_class g = 0;
  for (const auto& a : p.c) {
    mpq_class s = a * den;
    c.push_back(s.get_num());
    g = gcd(g, c.back());
  }
  if (p.leading() < 0) g = -g;
  for (auto& a : c) a /= g;
  return IntPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  QPoly r = a;
  std::vector<mpq_class> q(std::max(0, a.degree() - b.degree() + 1));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int k = r.degree() - b.degree();
    const mpq_class f = r.leading() / b.leading();
    q[k] = f;
    r = r - QPoly::monomial(f, k) * b;
  }
  return {QPoly(std::move(q)), r};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const mpq_class lc = a.leading();
  for (auto& x : a.c) x /= lc;
  return a;
}

bool divides(const IntPoly& b, const IntPoly& a, IntPoly* quotient) {
  auto [q, r] = divmod(to_q(a), to_q(b));
  if (!r.is_zero()) return false;
  std::vector<mpz_class> c;
  for (const auto& x : q.c) {
    if (x.get_den() != 1) return false;
    c.push_back(x.get_num());
  }
  if (quotient) *quotient = IntPoly(std::move(c));
  return true;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() < 1) return p;
  const QPoly qp = to_q(p);
  const QPoly g = gcd(qp, qp.derivative());
  return primitive_part(divmod(qp, g).first);
}

// ---------------------------------------------------------------------------

int sign(const mpq_class& x) { return sgn(x); }

int sign(const Surd& x) {
  const int sa = sgn(x.a);
  const int sb = x.d == 0 ? 0 : sgn(x.b);
  if (x.d < 0) throw std::domain_error("surd with negative radicand");
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 d.
  const mpq_class diff = x.a * x.a - x.b * x.b * mpq_class(x.d);
  return sa * sgn(diff);
}

int sign_at(const QPoly& p, const mpq_class& x) { return sgn(p.eval(x)); }

int sign_at(const QPoly& p, const Surd& x) {
  mpq_class u = 0, v = 0;
  const mpq_class d(x.d);
  for (std::size_t i = p.c.size(); i-- > 0;) {
    mpq_class nu = u * x.a + v * x.b * d + p.c[i];
    mpq_class nv = u * x.b + v * x.a;
    u = std::move(nu);
    v = std::move(nv);
  }
  return sign(Surd{u, v, x.d});
}

SturmSequence::SturmSequence(const IntPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("Sturm sequence of a constant");
  seq_.push_back(to_q(squarefree_part(p)));
  seq_.push_back(seq_.front().derivative());
  while (seq_.back().degree() > 0) {
    auto r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
    if (r.is_zero()) break;
    seq_.push_back(-r);
  }
}

namespace {
template <class X>
int variations_of(const std::vector<QPoly>& seq, const X& x) {
  int prev = 0, n = 0;
  for (const auto& p : seq) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++n;
    prev = s;
  }
  return n;
}
}  // namespace

int SturmSequence::variations(const mpq_class& x) const { return variations_of(seq_, x); }
int SturmSequence::variations(const Surd& x) const { return variations_of(seq_, x); }
int SturmSequence::count(const mpq_class& a, const mpq_class& b) const { return variations(a) - variations(b); }
int SturmSequence::count(const Surd& a, const Surd& b) const { return variations(a) - variations(b); }

mpq_class root_bound(const IntPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("root bound of a constant");
  mpq_class m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    mpq_class r = mpq_class(abs(p.c[i])) / mpq_class(abs(p.leading()));
    if (r > m) m = r;
  }
  return m + 1;
}

bool certify_positive_real_roots(const IntPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("constant polynomial");
  const IntPoly s = squarefree_part(p);
  const SturmSequence sturm(s);
  return sturm.count(mpq_class(0), root_bound(s)) == s.degree();
}

std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(const IntPoly& p, const mpq_class& width) {
  const IntPoly s = squarefree_part(p);
  const SturmSequence sturm(s);
  const mpq_class b = root_bound(s);
  std::vector<std::pair<mpq_class, mpq_class>> out, stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = sturm.count(lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo < width) {
      out.emplace_back(lo, hi);
      continue;
    }
    const mpq_class mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_roots_closed(const IntPoly& p, const Surd& lo, const Surd& hi) {
  const SturmSequence sturm(p);
  return sturm.count(lo, hi) + (sign_at(sturm.base(), lo) == 0 ? 1 : 0);
}

// ---------------------------------------------------------------------------

ZmPoly zm_from(std::vector<MPoly> coeffs) {
  ZmPoly p{std::move(coeffs)};
  p.trim();
  return p;
}

ZmPoly operator*(const ZmPoly& a, const ZmPoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  std::vector<MPoly> r(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
  return zm_from(std::move(r));
}

ZmPoly shift_by_m_plus_1(const IntPoly& p) {
  // T + (m + 1)
  const ZmPoly lin = zm_from({MPoly::from_high({1, 1}), MPoly::constant(1)});
  ZmPoly r;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    r = r * lin;
    if (r.c.empty()) r.c.resize(1);
    r.c[0] = r.c[0] + MPoly::constant(p.c[i]);
    r.trim();
  }
  return r;
}

namespace {
MPoly exact_div(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!divides(b, a, &q)) throw std::logic_error("inexact division in fraction-free elimination");
  return q;
}
}  // namespace

MPoly resultant(const ZmPoly& f, const ZmPoly& g) {
  const int n = f.degree(), k = g.degree();
  if (n < 0 || k < 0) throw std::invalid_argument("resultant of a zero polynomial");
  const int size = n + k;
  if (size == 0) return MPoly::constant(1);
  std::vector<std::vector<MPoly>> m(size, std::vector<MPoly>(size));
  for (int r = 0; r < k; ++r)
    for (int i = 0; i <= n; ++i) m[r][r + i] = f.c[n - i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= k; ++i) m[k + r][r + i] = g.c[k - i];

  int sgn_flip = 1;
  MPoly prev = MPoly::constant(1);
  for (int col = 0; col < size; ++col) {
    int piv = col;
    while (piv < size && m[piv][col].is_zero()) ++piv;
    if (piv == size) return {};
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sgn_flip = -sgn_flip;
    }
    for (int i = col + 1; i < size; ++i) {
      for (int j = col + 1; j < size; ++j) m[i][j] = exact_div(m[col][col] * m[i][j] - m[i][col] * m[col][j], prev);
      m[i][col] = MPoly();
    }
    prev = m[col][col];
  }
  MPoly det = m[size - 1][size - 1];
  if (sgn_flip < 0) det = -det;
  return det;
}

std::string to_string(const ZmPoly& p) {
  if (p.c.empty()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    if (p.c[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(p.c[i], 'm') + ")";
    if (i > 0) s += i > 1 ? "T^" + std::to_string(i) : "T";
  }
  return s;
}

}  // namespace g4f8
