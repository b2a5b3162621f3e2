#pragma once

// Reduced cubic families and the exhaustive 27-point search.
//
// A family is an affine map from free digits to cubic coefficients:
//   coeffs = base + sum_i digit_i * columns[i],   digit_i in GF(8).
// The linear index of a free vector is the base-8 number whose most
// significant digit is free_indices[0].

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g4f8/proj.hpp"
#include "g4f8/quadric.hpp"

namespace g4f8 {

enum class CaseId { red1a, red1b, red2, red3_p1, red3_p2 };

std::string_view to_string(CaseId id);
CaseId parse_case_id(std::string_view s);
constexpr std::array<CaseId, 5> kAllCases = {CaseId::red1a, CaseId::red1b, CaseId::red2, CaseId::red3_p1,
                                             CaseId::red3_p2};

struct SearchCase {
  CaseId id;
  QuadricId quadric;

  std::vector<std::size_t> zero_indices;
  std::vector<std::pair<std::size_t, Gf8>> fixed_values;
  std::vector<std::size_t> determined;
  std::vector<std::size_t> free_indices;

  CubicForm base;
  std::vector<CubicForm> columns;  // one per free index

  std::vector<Point8> prescribed;
  std::vector<Point8> forbidden;
  bool conic_filter = false;  // block ordering on the nonsplit conic pencil

  std::size_t free_count() const { return free_indices.size(); }
  std::uint64_t size() const { return std::uint64_t{1} << (3 * free_indices.size()); }
  bool homogeneous() const { return base.is_zero(); }
};

/// The five families, verified for internal consistency on construction.
const std::vector<SearchCase>& case_families();
const SearchCase& search_case(CaseId id);

std::vector<std::uint8_t> index_to_digits(const SearchCase& c, std::uint64_t index);
std::uint64_t digits_to_index(const SearchCase& c, const std::vector<std::uint8_t>& digits);

CubicForm materialize_cubic(const SearchCase& c, const std::vector<std::uint8_t>& digits);
CubicForm materialize_cubic(const SearchCase& c, std::uint64_t index);

/// Folds the condition "p lies on the cubic" into the family: the last free
/// slot with a nonzero coefficient becomes determined. Throws if the
/// condition is constant (always or never satisfied).
void add_point_condition(SearchCase& c, const Point8& p);

// ---------------------------------------------------------------------------
// Counting

struct MonomialTable {
  QuadricId quadric;
  std::vector<std::array<Gf8, 20>> rows;  // one per quadric point
};
MonomialTable precompute_monomial_table(const QuadricModel& q);

/// Zeros of c on the quadric, via the monomial table.
std::size_t table_count(const MonomialTable& t, const CubicForm& c);

/// Zeros of c on the quadric by direct evaluation. With early_abort set, stops
/// as soon as the count is known to differ from target and returns a value
/// that differs from target (not necessarily the true count).
std::size_t direct_count(const QuadricModel& q, const CubicForm& c, std::size_t target, bool early_abort);

/// Points of each of the three conics C_inf, C_0, C_1 on the cubic, base points excluded.
std::array<std::size_t, 3> first_block_counts(const CubicForm& c);
bool passes_conic_filter(const CubicForm& c);

// ---------------------------------------------------------------------------
// Search

struct SearchHit {
  CaseId case_id;
  std::uint64_t index = 0;
  std::vector<std::uint8_t> digits;
  CubicForm coeffs;
  std::size_t n8 = 0;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

struct SearchOptions {
  std::uint64_t start = 0;
  std::optional<std::uint64_t> end;  // defaults to the family size
  std::size_t target = 27;
  int workers = 0;                    // 0: OpenMP default
  bool normalize_scaling = false;
  std::uint64_t chunk = 1 << 18;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // sorted by index
  std::uint64_t evaluated = 0;  // vectors actually scanned
};

/// Bitsliced, OpenMP-parallel scan of [start, end).
SearchResult run_search(const SearchCase& c, const SearchOptions& opt = {});

/// Serial scan materializing every cubic and evaluating it directly.
SearchResult run_search_reference(const SearchCase& c, const SearchOptions& opt = {}, bool early_abort = true);

/// Sub-ranges of [start, end) holding the vectors whose first nonzero digit is 1, plus index 0.
std::vector<std::pair<std::uint64_t, std::uint64_t>> canonical_ranges(const SearchCase& c, std::uint64_t start,
                                                                      std::uint64_t end);

/// The hits alpha * h for alpha != 1, under a homogeneous family.
std::vector<SearchHit> scaled_hits(const SearchCase& c, const SearchHit& h);

}  // namespace g4f8
