#include "g4f8/search.hpp"

#include "search_internal.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace g4f8 {

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::red1a: return "red1a";
    case CaseId::red1b: return "red1b";
    case CaseId::red2: return "red2";
    case CaseId::red3_p1: return "red3_p1";
    case CaseId::red3_p2: return "red3_p2";
  }
  return "?";
}

CaseId parse_case_id(std::string_view s) {
  for (auto id : kAllCases)
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown case id: " + std::string(s));
}

namespace {

using namespace cubic;

Gf8 e(int k) { return Gf8::eta_pow(k); }

Point8 pt(Gf8 a, Gf8 b, Gf8 c, Gf8 d) { return Point8::normalized({a, b, c, d}); }

// Affine expression in the free digits: constant + sum_i coeff[i] * digit_i.
struct Expr {
  Gf8 constant;
  std::vector<Gf8> coeff;
};

struct Rule {
  std::size_t pos;
  Gf8 constant;
  std::vector<std::pair<std::size_t, Gf8>> terms;  // positions already defined
};

SearchCase make_case(CaseId id, QuadricId quadric, std::vector<std::size_t> zeros,
                     std::vector<std::pair<std::size_t, Gf8>> fixed, std::vector<std::size_t> free,
                     std::vector<Rule> rules) {
  SearchCase c{id, quadric, zeros, fixed, {}, free, {}, {}, {}, {}, false};
  const std::size_t n = free.size();
  std::array<std::optional<Expr>, 20> ex;
  auto define = [&](std::size_t pos, Expr x) {
    if (ex.at(pos)) throw std::logic_error("coefficient position assigned twice");
    ex[pos] = std::move(x);
  };
  for (auto p : zeros) define(p, Expr{Gf8::zero(), std::vector<Gf8>(n)});
  for (auto [p, v] : fixed) define(p, Expr{v, std::vector<Gf8>(n)});
  for (std::size_t i = 0; i < n; ++i) {
    Expr x{Gf8::zero(), std::vector<Gf8>(n)};
    x.coeff[i] = Gf8::one();
    define(free[i], std::move(x));
  }
  for (const auto& r : rules) {
    Expr x{r.constant, std::vector<Gf8>(n)};
    for (auto [p, k] : r.terms) {
      const Expr& src = ex.at(p).value();
      x.constant += k * src.constant;
      for (std::size_t i = 0; i < n; ++i) x.coeff[i] += k * src.coeff[i];
    }
    define(r.pos, std::move(x));
    c.determined.push_back(r.pos);
  }
  c.columns.resize(n);
  for (std::size_t pos = 0; pos < 20; ++pos) {
    const Expr& x = ex[pos].value();
    c.base.c[pos] = x.constant;
    for (std::size_t i = 0; i < n; ++i) c.columns[i].c[pos] = x.coeff[i];
  }
  return c;
}

Rule sum_rule(std::size_t pos, Gf8 constant, std::vector<std::size_t> positions) {
  Rule r{pos, constant, {}};
  for (auto p : positions) r.terms.emplace_back(p, Gf8::one());
  return r;
}

void check_case(const SearchCase& c) {
  std::array<int, 20> seen{};
  for (auto p : c.zero_indices) ++seen.at(p);
  for (auto [p, v] : c.fixed_values) ++seen.at(p);
  for (auto p : c.determined) ++seen.at(p);
  for (auto p : c.free_indices) ++seen.at(p);
  for (int s : seen)
    if (s != 1) throw std::logic_error(std::string(to_string(c.id)) + ": positions do not partition the monomials");
  if (c.columns.size() != c.free_indices.size())
    throw std::logic_error(std::string(to_string(c.id)) + ": column count mismatch");
  // Membership is affine in the digits, so checking base and columns covers every member.
  for (const auto& p : c.prescribed) {
    bool ok = eval(c.base, p).is_zero();
    for (const auto& col : c.columns) ok = ok && eval(col, p).is_zero();
    if (!ok) throw std::logic_error(std::string(to_string(c.id)) + ": a prescribed point can leave the cubic");
  }
  for (const auto& p : c.forbidden) {
    bool ok = !eval(c.base, p).is_zero();
    for (const auto& col : c.columns) ok = ok && eval(col, p).is_zero();
    if (!ok) throw std::logic_error(std::string(to_string(c.id)) + ": a forbidden point can lie on the cubic");
  }
  const auto& q = quadric(c.quadric);
  for (const auto& p : c.prescribed)
    if (q.index_of(p) < 0) throw std::logic_error("prescribed point off the quadric");
}

std::vector<SearchCase> build_cases() {
  const Gf8 o = Gf8::one(), z = Gf8::zero();
  std::vector<SearchCase> out;

  {
    auto c = make_case(CaseId::red1a, QuadricId::split, {X3, Y3, Z3, W3, X2Y, XY2, Z2W, ZW2}, {{Y2W, o}, {YW2, o}},
                       {X2Z, X2W, XYZ, XYW, XZ2, XZW, XW2, Y2Z, YZ2},
                       {sum_rule(YZW, z, {X2Z, X2W, XYZ, XYW, XZ2, XZW, XW2, Y2Z, YZ2})});
    c.prescribed = {pt(z, o, z, z), pt(z, z, z, o), pt(z, o, z, o), pt(z, z, o, z), pt(o, z, z, z), pt(o, o, o, o)};
    out.push_back(std::move(c));
  }
  {
    auto c = make_case(CaseId::red1b, QuadricId::split, {Y3, Z3, W3, X2Y, XY2, Z2W, ZW2}, {{X3, o}},
                       {X2Z, X2W, XYZ, XYW, XZW, Y2Z, Y2W, YZ2, YZW},
                       {sum_rule(XZ2, o, {X2Z}), sum_rule(XW2, o, {X2W}),
                        sum_rule(YW2, o, {XYZ, XYW, XZW, Y2Z, Y2W, YZ2, YZW})});
    c.prescribed = {pt(z, o, z, z), pt(z, z, z, o), pt(z, z, o, z), pt(o, z, o, z), pt(o, z, z, o), pt(o, o, o, o)};
    c.forbidden = {pt(o, z, z, z)};
    out.push_back(std::move(c));
  }
  {
    auto c = make_case(CaseId::red2, QuadricId::cone, {X3, X2Y, XY2, Y3, Z3, Z2W},
                       {{W3, o}, {X2W, e(1)}, {Y2W, e(1)}, {XW2, e(3)}, {YW2, e(3)}},
                       {X2Z, XYZ, XYW, XZ2, XZW, Y2Z, YZW, ZW2}, {sum_rule(YZ2, z, {X2Z, XYZ, XZ2, Y2Z})});
    c.prescribed = {pt(z, o, z, z), pt(z, o, z, o), pt(z, o, z, e(1)), pt(o, z, z, z),
                    pt(o, z, z, o), pt(o, z, z, e(1)), pt(o, o, o, z)};
    c.forbidden = {pt(z, z, z, o)};
    out.push_back(std::move(c));
  }
  for (auto [id, k] : {std::pair{CaseId::red3_p1, 2}, std::pair{CaseId::red3_p2, 3}}) {
    Rule y2z{Y2Z, z, {{Y2W, e(-1)}, {YZ2, e(3)}, {YW2, e(1)}, {Z2W, o}, {ZW2, e(-1)}}};
    auto c = make_case(id, QuadricId::nonsplit, {X3, X2Y, X2Z, X2W, Z3, W3}, {},
                       {XY2, XYZ, XYW, XZ2, XZW, XW2, Y2W, YZ2, YZW, YW2, Z2W, ZW2},
                       {y2z, sum_rule(Y3, z, {Y2Z, Y2W, YZ2, YZW, YW2, Z2W, ZW2})});
    c.prescribed = {pt(z, z, o, z), pt(z, z, z, o), pt(z, o, o, o), pt(z, o, e(1), e(-1))};
    const Point8 extra = pt(z, o, e(k), e(-k));
    add_point_condition(c, extra);
    c.conic_filter = true;
    out.push_back(std::move(c));
  }
  for (const auto& c : out) check_case(c);
  return out;
}

}  // namespace

void add_point_condition(SearchCase& c, const Point8& p) {
  const Gf8 v0 = eval(c.base, p);
  std::vector<Gf8> v;
  for (const auto& col : c.columns) v.push_back(eval(col, p));
  std::size_t s = v.size();
  for (std::size_t i = v.size(); i-- > 0;)
    if (!v[i].is_zero()) {
      s = i;
      break;
    }
  if (s == v.size()) throw std::invalid_argument("point condition does not depend on the free digits");
  // digit_s = (v0 + sum_{i != s} v_i digit_i) / v_s
  const Gf8 inv = v[s].inv();
  const CubicForm cs = c.columns[s];
  c.base = c.base + (v0 * inv) * cs;
  for (std::size_t i = 0; i < c.columns.size(); ++i)
    if (i != s) c.columns[i] = c.columns[i] + (v[i] * inv) * cs;
  c.columns.erase(c.columns.begin() + static_cast<std::ptrdiff_t>(s));
  c.determined.push_back(c.free_indices[s]);
  c.free_indices.erase(c.free_indices.begin() + static_cast<std::ptrdiff_t>(s));
  c.prescribed.push_back(p);
}

const std::vector<SearchCase>& case_families() {
  static const std::vector<SearchCase> cases = build_cases();
  return cases;
}

const SearchCase& search_case(CaseId id) {
  for (const auto& c : case_families())
    if (c.id == id) return c;
  throw std::logic_error("missing case");
}

std::vector<std::uint8_t> index_to_digits(const SearchCase& c, std::uint64_t index) {
  if (index >= c.size()) throw std::out_of_range("free-vector index out of range");
  std::vector<std::uint8_t> d(c.free_count());
  for (std::size_t i = d.size(); i-- > 0;) {
    d[i] = static_cast<std::uint8_t>(index & 7);
    index >>= 3;
  }
  return d;
}

std::uint64_t digits_to_index(const SearchCase& c, const std::vector<std::uint8_t>& digits) {
  if (digits.size() != c.free_count()) throw std::invalid_argument("free vector has the wrong length");
  std::uint64_t idx = 0;
  for (auto d : digits) {
    if (d >= 8) throw std::out_of_range("free digit out of range");
    idx = (idx << 3) | d;
  }
  return idx;
}

CubicForm materialize_cubic(const SearchCase& c, const std::vector<std::uint8_t>& digits) {
  if (digits.size() != c.free_count()) throw std::invalid_argument("free vector has the wrong length");
  CubicForm f = c.base;
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i]) f = f + Gf8::from_code(digits[i]) * c.columns[i];
  return f;
}

CubicForm materialize_cubic(const SearchCase& c, std::uint64_t index) {
  return materialize_cubic(c, index_to_digits(c, index));
}

// ---------------------------------------------------------------------------

MonomialTable precompute_monomial_table(const QuadricModel& q) {
  MonomialTable t{q.id(), {}};
  for (const auto& p : q.points8()) t.rows.push_back(monomial_values<Gf8, 3>(p.x));
  return t;
}

std::size_t table_count(const MonomialTable& t, const CubicForm& c) {
  std::size_t n = 0;
  for (const auto& row : t.rows) {
    Gf8 acc;
    for (std::size_t i = 0; i < 20; ++i) acc += row[i] * c.c[i];
    if (acc.is_zero()) ++n;
  }
  return n;
}

std::array<std::size_t, 3> first_block_counts(const CubicForm& c) {
  const auto& q = quadric(QuadricId::nonsplit);
  std::array<std::size_t, 3> out{};
  const char* labels[] = {"C[inf]", "C[0]", "C[1]"};
  for (int k = 0; k < 3; ++k) {
    const auto it = std::find_if(q.curves().begin(), q.curves().end(),
                                 [&](const StructureCurve& s) { return s.label == labels[k]; });
    for (const auto& p : it->points8) {
      if (std::find(q.base_points().begin(), q.base_points().end(), p) != q.base_points().end()) continue;
      if (eval(c, p).is_zero()) ++out[k];
    }
  }
  return out;
}

bool passes_conic_filter(const CubicForm& c) {
  const auto n = first_block_counts(c);
  return n[0] >= n[1] && n[1] >= n[2] && n[0] + n[1] + n[2] >= 9;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::uint64_t, std::uint64_t>> canonical_ranges(const SearchCase& c, std::uint64_t start,
                                                                      std::uint64_t end) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw{{0, 1}};
  for (std::size_t k = 0; k < c.free_count(); ++k) {
    const std::uint64_t lo = std::uint64_t{1} << (3 * k);
    raw.emplace_back(lo, 2 * lo);
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto [lo, hi] : raw) {
    const auto a = std::max(lo, start), b = std::min(hi, end);
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

std::vector<SearchHit> scaled_hits(const SearchCase& c, const SearchHit& h) {
  if (!c.homogeneous()) throw std::logic_error("scaling normalization needs a homogeneous family");
  std::vector<SearchHit> out;
  for (int k = 1; k < 7; ++k) {
    const Gf8 a = Gf8::eta_pow(k);
    SearchHit s = h;
    for (auto& d : s.digits) d = (a * Gf8::from_code(d)).code();
    s.index = digits_to_index(c, s.digits);
    s.coeffs = a * h.coeffs;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Three bitplanes of the per-point values, two 64-bit words each.
struct Planes {
  std::uint64_t w[6] = {};
  Planes& operator^=(const Planes& o) {
    for (int i = 0; i < 6; ++i) w[i] ^= o.w[i];
    return *this;
  }
};

struct Kernel {
  std::size_t n = 0;
  Planes base;
  std::vector<std::array<Planes, 8>> delta;
  std::uint64_t mask[2] = {};

  Kernel(const SearchCase& c) : n(c.free_count()) {
    const auto& pts = quadric(c.quadric).points8();
    if (pts.size() > 128) throw std::logic_error("kernel supports at most 128 points");
    auto planes_of = [&](const CubicForm& f) {
      Planes p;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const unsigned v = eval(f, pts[i]).code();
        for (int b = 0; b < 3; ++b)
          if ((v >> b) & 1) p.w[(i / 64) * 3 + b] |= std::uint64_t{1} << (i % 64);
      }
      return p;
    };
    base = planes_of(c.base);
    for (const auto& col : c.columns) {
      std::array<Planes, 8> d;
      for (unsigned k = 0; k < 8; ++k) d[k] = planes_of(Gf8::from_code(k) * col);
      delta.push_back(d);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) mask[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  unsigned zeros(const Planes& p) const {
    return static_cast<unsigned>(std::popcount(~(p.w[0] | p.w[1] | p.w[2]) & mask[0]) +
                                 std::popcount(~(p.w[3] | p.w[4] | p.w[5]) & mask[1]));
  }

  // Appends every index in [lo, hi) whose zero count equals target.
  void scan(std::uint64_t lo, std::uint64_t hi, unsigned target, std::vector<std::uint64_t>& out) const {
    if (lo >= hi) return;
    if (n == 0) {
      if (zeros(base) == target) out.push_back(0);
      return;
    }
    std::vector<std::uint8_t> d(n);
    std::uint64_t r = lo;
    for (std::size_t i = n; i-- > 0;) {
      d[i] = r & 7;
      r >>= 3;
    }
    Planes outer = base;
    for (std::size_t i = 0; i + 1 < n; ++i) outer ^= delta[i][d[i]];
    const auto& last = delta[n - 1];
    std::uint64_t idx = lo;
    while (idx < hi) {
      for (unsigned k = d[n - 1]; k < 8 && idx < hi; ++k, ++idx) {
        Planes p = outer;
        p ^= last[k];
        if (zeros(p) == target) out.push_back(idx);
      }
      if (idx >= hi) break;
      d[n - 1] = 0;
      for (std::size_t i = n - 1; i-- > 0;) {
        const std::uint8_t old = d[i];
        d[i] = (old + 1) & 7;
        outer ^= delta[i][old ^ d[i]];
        if (d[i] != 0) break;
      }
    }
  }
};

}  // namespace

namespace detail {

std::uint64_t resolve_end(const SearchCase& c, const SearchOptions& opt) {
  const std::uint64_t end = opt.end.value_or(c.size());
  if (opt.start > end || end > c.size()) throw std::out_of_range("search range outside the family");
  if (opt.normalize_scaling && !c.homogeneous())
    throw std::invalid_argument("scaling normalization needs a homogeneous family");
  return end;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> work_ranges(const SearchCase& c, const SearchOptions& opt,
                                                                 std::uint64_t end) {
  if (opt.normalize_scaling) return canonical_ranges(c, opt.start, end);
  if (opt.start == end) return {};
  return {{opt.start, end}};
}

void finish_hits(const SearchCase& c, const SearchOptions& opt, std::vector<SearchHit>& hits) {
  if (opt.normalize_scaling) {
    const std::size_t n = hits.size();
    for (std::size_t i = 0; i < n; ++i)
      for (auto& s : scaled_hits(c, hits[i])) hits.push_back(std::move(s));
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return a.index < b.index; });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const SearchHit& a, const SearchHit& b) { return a.index == b.index; }),
             hits.end());
}

std::optional<SearchHit> make_hit(const SearchCase& c, std::uint64_t idx, std::size_t n8) {
  SearchHit h{c.id, idx, index_to_digits(c, idx), {}, n8};
  h.coeffs = materialize_cubic(c, h.digits);
  if (c.conic_filter && !passes_conic_filter(h.coeffs)) return std::nullopt;
  return h;
}

}  // namespace detail

using namespace detail;

SearchResult run_search(const SearchCase& c, const SearchOptions& opt) {
  const std::uint64_t end = resolve_end(c, opt);
  const Kernel kernel(c);
  const std::uint64_t chunk = std::max<std::uint64_t>(opt.chunk, 8);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> tasks;
  SearchResult res;
  for (auto [lo, hi] : work_ranges(c, opt, end)) {
    res.evaluated += hi - lo;
    for (std::uint64_t a = lo; a < hi; a += std::min(chunk, hi - a)) tasks.emplace_back(a, std::min(a + chunk, hi));
  }

  std::vector<std::vector<SearchHit>> found(tasks.size());
  const int threads = opt.workers > 0 ? opt.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<std::uint64_t> idx;
    kernel.scan(tasks[t].first, tasks[t].second, static_cast<unsigned>(opt.target), idx);
    for (auto i : idx)
      if (auto h = make_hit(c, i, opt.target)) found[t].push_back(std::move(*h));
  }
  for (auto& f : found)
    for (auto& h : f) res.hits.push_back(std::move(h));
  finish_hits(c, opt, res.hits);
  return res;
}

}  // namespace g4f8
