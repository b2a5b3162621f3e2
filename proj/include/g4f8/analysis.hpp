#pragma once

// Analysis of a (quadric, cubic) intersection: point counts over GF(8) and
// GF(64), contained structure curves and plane conics, incidence profiles,
// the good-curve test, and matching against the table of bad 27-point cases.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "g4f8/proj.hpp"
#include "g4f8/quadric.hpp"

namespace g4f8 {

enum class FieldId { gf8, gf64 };

/// Points of the given field on both the quadric and the cubic.
std::size_t count_intersection(const QuadricModel& q, const CubicForm& c, FieldId field);

/// Same count by plain evaluation at every point, for cross-checking.
std::size_t count_intersection_direct(const QuadricModel& q, const CubicForm& c, FieldId field);

/// Intersection count of the cubic with each structure curve of q, over GF(8).
std::vector<std::size_t> incidence_profile(const QuadricModel& q, const CubicForm& c);

/// A plane whose section of the quadric is a smooth conic.
struct PlaneConic {
  std::array<Gf8, 4> plane{};        // a.x = 0, first nonzero entry 1
  std::vector<int> points8;          // indices into q.points8()
  std::vector<int> points64;         // indices into q.points64()
};
const std::vector<PlaneConic>& plane_conics(const QuadricModel& q);

struct ContainedCurves {
  std::vector<int> lines;             // indices into q.curves()
  std::array<int, 2> lines_per_ruling{};  // split only
  std::vector<std::array<Gf8, 4>> conics;  // planes of contained conics
};

/// Structure lines with at least 4 GF(8) points on the cubic, and plane
/// conics whose 65 GF(64) points all lie on the cubic.
ContainedCurves contained_curves(const QuadricModel& q, const CubicForm& c);

/// True iff n64 is one of the two values a smooth genus-4 curve with 27
/// points can have. Throws std::invalid_argument unless n8 == 27.
bool good_curve_test(std::size_t n8, std::size_t n64);

// ---------------------------------------------------------------------------
// Bad 27-point intersections

struct BadCaseRow {
  std::string label;
  std::string degrees;                 // degree pattern of the geometric components
  std::set<QuadricId> quadrics;
  std::set<std::size_t> n64;
  std::optional<std::array<int, 2>> lines;  // lines per ruling, unordered
  int conics = 0;                      // contained plane conics
  std::optional<int> genus1_points;    // GF(8) points of the genus-1 component, when there is one
  std::optional<int> genus1_points64;  // its GF(64) count
};

const std::vector<BadCaseRow>& bad_case_table();

/// The eight values that occur, in increasing order.
std::vector<std::size_t> bad_n64_values();

/// Component point caps: degrees 3, 4, 5 defined over GF(8) carry at most 9, 14, 18 points.
int component_point_cap(int degree);
/// A degree-d component not definable over GF(8) carries at most d^2 GF(8) points.
int non_definable_point_cap(int degree);

struct IntersectionReport {
  QuadricId quadric = QuadricId::split;
  CubicForm cubic;
  std::size_t n8 = 0;
  std::size_t n64 = 0;
  ContainedCurves contained;
  std::vector<std::size_t> profile;
  bool good_curve = false;
  std::vector<std::string> bad_labels;
  bool anomalous = false;  // 27 points, not good, and no taxonomy row matches
};

IntersectionReport analyze(const QuadricModel& q, const CubicForm& c);

/// Labels of every taxonomy row consistent with the report.
std::vector<std::string> classify_bad(const IntersectionReport& r);

/// True iff every structure curve meets the cubic in at most `bound` GF(8) points.
bool incidences_at_most(const QuadricModel& q, const CubicForm& c, std::size_t bound);

}  // namespace g4f8
