#pragma once

// Defect-k zeta types of genus-g curves over F_q: enumeration of the
// possible factors of P(t), the root-size threshold, indecomposability
// certificates over Z[m], genus bounds, point counts of a zeta type, trace
// admissibility of elliptic factors, and the elimination pipeline.
//
// Conventions. m = floor(2 sqrt q). A type is (x_1, ..., x_g) with
// N_q = q + 1 + sum x_i; P(t) = prod (t - (m + 1 - x_i)). A factor of P has
// defect tr - deg; F_k collects monic integer polynomials of defect k whose
// roots are all positive reals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g4f8/poly.hpp"

namespace g4f8 {

/// tr - deg for a monic polynomial.
int factor_defect(const IntPoly& p);

/// Every monic degree-d polynomial in F_k (reducible ones included).
const std::vector<IntPoly>& positive_real_polys(int k, int d);

/// Irreducible members of F_k of degree at most d_max, by decreasing degree.
std::vector<IntPoly> enumerate_defect_factors(int k, int d_max = 4);

struct DefectEntry {
  int number = 0;       // 1-25 for defect 3, sequential otherwise
  int type_class = 0;   // 1-4 for defect 3, 0 otherwise
  int defect = 0;
  std::vector<IntPoly> factors;  // positive-defect factors, largest defect first
  int g_min = 0;

  IntPoly mandatory() const;
  /// mandatory * (t - 1)^(g - g_min); requires g >= g_min.
  IntPoly full_P(int g) const;
  /// Distinct irreducible factors of full_P(g) with multiplicities.
  std::vector<std::pair<IntPoly, int>> factorization(int g) const;
};

/// All entries of defect k, built from irreducible factors of degree <= d_max.
/// Defect-3 entries carry the standard numbering 1-25.
std::vector<DefectEntry> defect_entries(int k, int d_max = 4);
const DefectEntry& defect3_entry(int number);

/// One row of the printed defect-3 tables.
struct PrintedEntry {
  int number;
  int type_class;
  std::vector<IntPoly> factors;
  int g_min;
  std::string threshold;  // as printed; empty cell means no restriction
};
const std::vector<PrintedEntry>& printed_defect3_tables();

// ---------------------------------------------------------------------------
// Root-size threshold

/// 1 - (smallest root of full P), certified to lie in [lo, hi).
struct Threshold {
  bool restricts = false;  // false iff the value is <= 0
  mpq_class lo, hi;
  int digits = 0;  // decimals that truncation certifies

  /// Truncated to `digits` decimals, "0" when there is no restriction.
  /// Throws std::invalid_argument past the certified precision.
  std::string render(int digits) const;
  double approx() const { return restricts ? (lo.get_d() + hi.get_d()) / 2 : 0.0; }
};

/// Isolating intervals are refined until `digits` decimals are certified.
Threshold threshold_21(const DefectEntry& e, int digits = 4);

/// True iff the printed cell agrees with the certified value.
bool threshold_matches(const Threshold& t, const std::string& printed);

std::int64_t floor_two_sqrt(std::int64_t q);

/// Every root of every factor lies in [m+1-2 sqrt q, m+1+2 sqrt q].
bool passes_reason_21(const DefectEntry& e, std::int64_t q);

// ---------------------------------------------------------------------------
// Indecomposability

struct UnitCertificate {
  std::vector<IntPoly> left, right;  // factors of P(t), with repetition
  ZmPoly f, g;                       // products after t = T + m + 1
  MPoly resultant;                   // +1 or -1
};

/// A split of F(T) into coprime-over-Z[m] halves, if one exists at genus g.
std::optional<UnitCertificate> find_unit_split(const DefectEntry& e, int g);

/// Smallest genus from which each entry is listed as decomposable.
const std::vector<std::pair<int, int>>& printed_decomposable_from();

/// The listed eliminations at genus g (entry numbers, ascending).
std::vector<int> decomposability_eliminations(int g);

// ---------------------------------------------------------------------------
// Genus bounds

/// Entry 11: g > (q^2-q+8m^2-10m-16)/(5m^2-7m-2q).
mpq_class genus_bound_entry11(std::int64_t q);
/// (m,...,m,m-k): g > (q^2-q+2km+k-k^2)/(m^2+m-2q).
mpq_class genus_bound_single_root(std::int64_t q, int k);

// ---------------------------------------------------------------------------
// Zeta types

struct ZetaType {
  std::int64_t q = 0;
  std::vector<IntPoly> x_factors;  // monic minimal polynomials in x, with repetition

  int genus() const;
  /// prod of x_factors.
  IntPoly x_poly() const;

  static ZetaType from_integers(const std::vector<long>& xs, std::int64_t q);
  static ZetaType from_entry(const DefectEntry& e, int g, std::int64_t q);
  /// p(t) -> its x-polynomial (-1)^deg p(m + 1 - x).
  static IntPoly x_factor(const IntPoly& p, std::int64_t q);
};

/// Sum of x_i^j for j = 0..n.
std::vector<mpz_class> power_sums(const ZetaType& t, int n);

/// N_{q^r}, r in 1..3.
mpz_class points_from_type(const ZetaType& t, int r);

struct PlaceCounts {
  mpq_class a1, a2, a3;
  bool nonnegative_integers() const;
};
PlaceCounts place_counts(const ZetaType& t);

/// Elliptic curves over F_q (q = p^e, e odd) with trace t exist.
/// Throws std::invalid_argument on even e or non prime power q,
/// std::out_of_range when t^2 > 4q.
bool elliptic_trace_admissible(std::int64_t q, long t);

// ---------------------------------------------------------------------------
// Pipeline

struct AuditRecord {
  int entry = 0;
  std::string factors;  // product of the positive-defect factors
  std::string stage;    // "2.1", "g_min", "A.1", "A.2", "A.3", "HT", "2.2" or "survives"
  std::string payload;  // JSON object text
};

struct PipelineResult {
  std::int64_t q = 0;
  int g = 0, k = 0, m = 0;
  std::vector<AuditRecord> records;
  std::vector<DefectEntry> survivors;
  std::vector<ZetaType> survivor_types;
  std::vector<std::string> log;  // human-readable trail

  /// Entry numbers still alive after the named stage.
  std::vector<int> alive_after(const std::string& stage) const;
  std::string audit_json() const;
};

PipelineResult defect_pipeline(std::int64_t q, int g, int k);

/// The defect-3 tables as CSV: one block per type class.
std::string defect_tables_csv();

}  // namespace g4f8
