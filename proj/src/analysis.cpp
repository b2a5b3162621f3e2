#include "g4f8/analysis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace g4f8 {

namespace {

// prod[(j * 8 + v) * n + p] = v * m_j(p) over GF(64), m_j the j-th cubic monomial.
struct Gf64Evaluator {
  std::size_t n = 0;
  std::vector<std::uint8_t> prod;

  explicit Gf64Evaluator(const QuadricModel& q) : n(q.points64().size()), prod(20 * 8 * n) {
    for (std::size_t p = 0; p < n; ++p) {
      const auto mono = monomial_values<Gf64, 3>(q.points64()[p].x);
      for (std::size_t j = 0; j < 20; ++j)
        for (unsigned v = 0; v < 8; ++v) prod[(j * 8 + v) * n + p] = (embed(Gf8::from_code(v)) * mono[j]).code();
    }
  }

  // Values of c at every GF(64) point of the quadric.
  std::vector<std::uint8_t> values(const CubicForm& c) const {
    std::vector<std::uint8_t> acc(n, 0);
    for (std::size_t j = 0; j < 20; ++j) {
      const unsigned v = c.c[j].code();
      if (v == 0) continue;
      const std::uint8_t* row = &prod[(j * 8 + v) * n];
      for (std::size_t p = 0; p < n; ++p) acc[p] ^= row[p];
    }
    return acc;
  }
};

const Gf64Evaluator& evaluator(const QuadricModel& q) {
  static std::once_flag flags[3];
  static std::optional<Gf64Evaluator> ev[3];
  const int i = static_cast<int>(q.id());
  std::call_once(flags[i], [&] { ev[i].emplace(quadric(q.id())); });
  return *ev[i];
}

std::vector<bool> zeros8(const QuadricModel& q, const CubicForm& c) {
  std::vector<bool> z;
  for (const auto& p : q.points8()) z.push_back(eval(c, p).is_zero());
  return z;
}

std::vector<PlaneConic> build_plane_conics(const QuadricModel& q) {
  std::vector<PlaneConic> out;
  for (const auto& a : all_points8()) {
    PlaneConic pc{a.x, {}, {}};
    std::vector<Point8> sec;
    for (std::size_t i = 0; i < q.points8().size(); ++i)
      if (dot(a.x, q.points8()[i].x).is_zero()) {
        pc.points8.push_back(static_cast<int>(i));
        sec.push_back(q.points8()[i]);
      }
    if (sec.size() != 9 || span_rank(sec) != 3) continue;
    const std::array<Gf64, 4> a64{embed(a.x[0]), embed(a.x[1]), embed(a.x[2]), embed(a.x[3])};
    for (std::size_t i = 0; i < q.points64().size(); ++i)
      if (dot(a64, q.points64()[i].x).is_zero()) pc.points64.push_back(static_cast<int>(i));
    if (pc.points64.size() != 65) continue;
    out.push_back(std::move(pc));
  }
  return out;
}

}  // namespace

std::size_t count_intersection(const QuadricModel& q, const CubicForm& c, FieldId field) {
  if (field == FieldId::gf8) {
    const auto z = zeros8(q, c);
    return static_cast<std::size_t>(std::count(z.begin(), z.end(), true));
  }
  const auto v = evaluator(q).values(c);
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0));
}

std::size_t count_intersection_direct(const QuadricModel& q, const CubicForm& c, FieldId field) {
  if (field == FieldId::gf8) return zero_locus_count(c, q.points8());
  const auto f = embed_form(c);
  return zero_locus_count(f, q.points64());
}

std::vector<std::size_t> incidence_profile(const QuadricModel& q, const CubicForm& c) {
  const auto z = zeros8(q, c);
  std::vector<std::size_t> out;
  for (const auto& curve : q.curves()) {
    std::size_t n = 0;
    for (int i : curve.point_indices)
      if (z[i]) ++n;
    out.push_back(n);
  }
  return out;
}

bool incidences_at_most(const QuadricModel& q, const CubicForm& c, std::size_t bound) {
  const auto p = incidence_profile(q, c);
  return std::all_of(p.begin(), p.end(), [&](std::size_t n) { return n <= bound; });
}

const std::vector<PlaneConic>& plane_conics(const QuadricModel& q) {
  static std::once_flag flags[3];
  static std::vector<PlaneConic> cache[3];
  const int i = static_cast<int>(q.id());
  std::call_once(flags[i], [&] { cache[i] = build_plane_conics(quadric(q.id())); });
  return cache[i];
}

namespace {

ContainedCurves contained_from(const QuadricModel& q, const CubicForm& c, const std::vector<bool>& z8,
                               const std::vector<std::uint8_t>* v64) {
  ContainedCurves out;
  for (std::size_t k = 0; k < q.curves().size(); ++k) {
    const auto& curve = q.curves()[k];
    if (curve.kind != StructureCurve::Kind::line) continue;
    int n = 0;
    for (int i : curve.point_indices) n += z8[i];
    if (n < 4) continue;
    out.lines.push_back(static_cast<int>(k));
    ++out.lines_per_ruling[curve.ruling == 1 ? 1 : 0];
  }
  std::vector<std::uint8_t> local;
  for (const auto& pc : plane_conics(q)) {
    if (!std::all_of(pc.points8.begin(), pc.points8.end(), [&](int i) { return z8[i]; })) continue;
    if (!v64) {
      local = evaluator(q).values(c);
      v64 = &local;
    }
    if (std::all_of(pc.points64.begin(), pc.points64.end(), [&](int i) { return (*v64)[i] == 0; }))
      out.conics.push_back(pc.plane);
  }
  return out;
}

}  // namespace

ContainedCurves contained_curves(const QuadricModel& q, const CubicForm& c) {
  return contained_from(q, c, zeros8(q, c), nullptr);
}

bool good_curve_test(std::size_t n8, std::size_t n64) {
  if (n8 != 27) throw std::invalid_argument("the good-curve test applies to 27-point intersections only");
  return n64 == 45 || n64 == 43;
}

// ---------------------------------------------------------------------------

const std::vector<BadCaseRow>& bad_case_table() {
  using Q = QuadricId;
  static const std::vector<BadCaseRow> rows = {
      {"(5,1)", "5,1", {Q::split}, {119}, std::array{0, 1}, 0, {}, {}},
      {"(4,1,1) rational quartic, lines in one ruling", "4,1,1", {Q::split}, {195}, std::array{0, 2}, 0, {}, {}},
      {"(4,1,1) singular genus-1 10 points", "4,1,1", {Q::split}, {189}, std::array{1, 1}, 0, 10, 64},
      {"(4,1,1) genus-1 10 points", "4,1,1", {Q::split}, {205}, std::array{1, 1}, 0, 10, 80},
      {"(4,1,1) genus-1 12 points, tangential contact", "4,1,1", {Q::split}, {199}, std::array{1, 1}, 0, 12, 72},
      {"(4,1,1) genus-1 12 points, transversal contact", "4,1,1", {Q::split}, {197}, std::array{1, 1}, 0, 12, 72},
      {"(4,1,1) genus-1 13 points", "4,1,1", {Q::split}, {191}, std::array{1, 1}, 0, 13, 65},
      {"(4,1,1) genus-1 14 points", "4,1,1", {Q::split}, {181}, std::array{1, 1}, 0, 14, 56},
      {"(2,2,2)", "2,2,2", {Q::split, Q::cone, Q::nonsplit}, {189, 191}, std::array{0, 0}, 3, {}, {}},
      {"(1,1,1,1,1,1)", "1,1,1,1,1,1", {Q::split}, {195}, std::array{0, 3}, 0, {}, {}},
  };
  return rows;
}

std::vector<std::size_t> bad_n64_values() {
  std::set<std::size_t> s;
  for (const auto& r : bad_case_table()) s.insert(r.n64.begin(), r.n64.end());
  return {s.begin(), s.end()};
}

int component_point_cap(int degree) {
  switch (degree) {
    case 3: return 9;
    case 4: return 14;
    case 5: return 18;
  }
  throw std::invalid_argument("component cap defined for degrees 3, 4, 5");
}

int non_definable_point_cap(int degree) { return degree * degree; }

std::vector<std::string> classify_bad(const IntersectionReport& r) {
  std::vector<std::string> out;
  auto lines = r.contained.lines_per_ruling;
  std::sort(lines.begin(), lines.end());
  for (const auto& row : bad_case_table()) {
    if (!row.quadrics.count(r.quadric) || !row.n64.count(r.n64)) continue;
    if (row.lines && *row.lines != lines) continue;
    if (static_cast<int>(r.contained.conics.size()) != row.conics) continue;
    out.push_back(row.label);
  }
  return out;
}

IntersectionReport analyze(const QuadricModel& q, const CubicForm& c) {
  IntersectionReport r;
  r.quadric = q.id();
  r.cubic = c;
  const auto z8 = zeros8(q, c);
  r.n8 = static_cast<std::size_t>(std::count(z8.begin(), z8.end(), true));
  const auto v64 = evaluator(q).values(c);
  r.n64 = static_cast<std::size_t>(std::count(v64.begin(), v64.end(), 0));
  r.contained = contained_from(q, c, z8, &v64);
  r.profile = incidence_profile(q, c);
  if (r.n8 == 27) {
    r.good_curve = good_curve_test(r.n8, r.n64);
    if (!r.good_curve) {
      r.bad_labels = classify_bad(r);
      r.anomalous = r.bad_labels.empty();
    }
  }
  return r;
}

}  // namespace g4f8
