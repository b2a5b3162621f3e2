#pragma once

// The three geometrically irreducible quadric surfaces over GF(8), their
// points and structure curves, classification of quadratic forms by
// invariants, and the stabilizer bookkeeping used to justify the search
// reductions.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g4f8/proj.hpp"

namespace g4f8 {

enum class QuadricId { split, cone, nonsplit };

std::string_view to_string(QuadricId id);
QuadricId parse_quadric_id(std::string_view s);

struct StructureCurve {
  enum class Kind { line, conic };
  Kind kind = Kind::line;
  std::string label;
  int ruling = -1;                    // 0 or 1 on the split quadric, -1 elsewhere
  std::vector<Point8> points8;
  std::vector<Point64> points64;
  std::vector<int> point_indices;     // positions in the owning model's points8
};

class QuadricModel {
 public:
  explicit QuadricModel(QuadricId id);

  QuadricId id() const { return id_; }
  const QuadraticForm& form() const { return form_; }
  const std::vector<Point8>& points8() const { return points8_; }
  const std::vector<Point64>& points64() const { return points64_; }
  const std::vector<StructureCurve>& curves() const { return curves_; }

  /// Position of p in points8(), or -1 if p is not on the quadric.
  int index_of(const Point8& p) const;

  /// Cone vertex [0:0:0:1]; empty for the smooth quadrics.
  const std::optional<Point8>& vertex() const { return vertex_; }
  /// Common points of the conic pencil on the nonsplit quadric.
  const std::vector<Point8>& base_points() const { return base_points_; }

 private:
  void build_structure();
  void verify() const;

  QuadricId id_;
  QuadraticForm form_;
  std::vector<Point8> points8_;
  std::vector<Point64> points64_;
  std::vector<int> index_map_;  // 4096 entries keyed by the packed codec
  std::vector<StructureCurve> curves_;
  std::optional<Point8> vertex_;
  std::vector<Point8> base_points_;
};

/// Shared immutable models, built and verified on first use.
const QuadricModel& quadric(QuadricId id);
std::vector<const QuadricModel*> canonical_quadrics();

QuadraticForm canonical_form(QuadricId id);

/// All of P^3(GF(8)) and P^3(GF(64)), cached.
const std::vector<Point8>& all_points8();
const std::vector<Point64>& all_points64();

// ---------------------------------------------------------------------------
// Classification of quadratic forms

enum class QuadricClass {
  split,
  nonsplit,
  cone,
  double_plane,
  plane_pair,
  anisotropic_binary,
  other_reducible
};

std::string_view to_string(QuadricClass c);

struct FormSignature {
  std::size_t count = 0;           // zeros over the base field
  int span_rank = 0;               // rank of the zero locus as a set of vectors
  std::size_t singular_count = 0;  // zeros where every partial derivative vanishes

  friend bool operator==(const FormSignature&, const FormSignature&) = default;
  friend auto operator<=>(const FormSignature&, const FormSignature&) = default;
};

template <SmallField F>
bool is_singular_point(const Form<F, 2>& f, const ProjPoint<F>& p) {
  if (!eval(f, p).is_zero()) return false;
  constexpr auto vars = monomial_vars<2>();
  std::array<F, 4> grad{};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto a = vars[i][0], b = vars[i][1];
    if (a == b) continue;  // d(X^2) = 2X = 0
    grad[a] = grad[a] + f.c[i] * p.x[b];
    grad[b] = grad[b] + f.c[i] * p.x[a];
  }
  return std::all_of(grad.begin(), grad.end(), [](F v) { return v.is_zero(); });
}

template <SmallField F>
FormSignature form_signature(const Form<F, 2>& f, const std::vector<ProjPoint<F>>& space) {
  FormSignature s;
  std::vector<ProjPoint<F>> zeros;
  for (const auto& p : space) {
    if (!eval(f, p).is_zero()) continue;
    zeros.push_back(p);
    if (is_singular_point(f, p)) ++s.singular_count;
  }
  s.count = zeros.size();
  s.span_rank = span_rank(zeros);
  return s;
}

/// Maps an invariant signature over GF(q), q = 2^odd, to the class label.
QuadricClass classify_signature(const FormSignature& s, std::size_t q);

/// Throws std::invalid_argument on the zero form.
QuadricClass classify_form(const QuadraticForm& f);

// ---------------------------------------------------------------------------
// Fix groups

/// True iff substitute(q.form(), m) is a nonzero multiple of q.form(). Throws on singular m.
bool fix_group_contains(const QuadricModel& q, const Matrix8& m);

/// Scalar lambda with substitute(f, m) == lambda * f, if one exists.
std::optional<Gf8> preservation_scalar(const QuadraticForm& f, const Matrix8& m);

struct Mat2 {
  Gf8 a, b, c, d;
  Gf8 det() const { return a * d + b * c; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

std::vector<Mat2> gl2_elements();

/// Split quadric: (A, B, swap) acting on P^1 x P^1 through [xz:yw:xw:yz].
Matrix8 split_fix_element(const Mat2& a, const Mat2& b, bool swap_factors);
/// Cone: rows (a,b,0,0), (c,d,0,0), (sqrt(ac), sqrt(bd), sqrt(ad+bc), 0), (gx, gy, gz, e).
Matrix8 cone_fix_element(const Mat2& a, Gf8 e, Gf8 gx, Gf8 gy, Gf8 gz);
/// Nonsplit: X -> X + tZ, W -> W + tY + t^2 Z.
Matrix8 nonsplit_shift_x(Gf8 t);
/// Nonsplit: Y -> Y + tZ, W -> W + tX + t^2 Z.
Matrix8 nonsplit_shift_y(Gf8 t);
/// Nonsplit: diag(A, z, w) with w fixed by A and z. A must preserve X^2+XY+Y^2 up to scalar.
Matrix8 nonsplit_block_element(const Mat2& a, Gf8 z);
/// Nonsplit: Z -> alpha Z, W -> alpha^-1 W, optionally followed by Z <-> W.
Matrix8 nonsplit_scale(Gf8 alpha, bool swap_zw);

/// Invertible 2x2 matrices A with (X^2+XY+Y^2) o A a nonzero multiple of X^2+XY+Y^2.
std::vector<Mat2> binary_stabilizer();

struct BinaryStabilizerReport {
  std::size_t total = 0;        // 126
  std::size_t mod_scalars = 0;  // 18
  bool listed_generators_present = false;
};
BinaryStabilizerReport count_binary_stabilizer();

/// The 18 matrices named as coset representatives of the binary stabilizer.
std::vector<Mat2> listed_binary_representatives();

struct CensusRow {
  std::string form;
  std::uint64_t automorphisms = 0;  // 0 for the two rows given by orbit size directly
  std::uint64_t orbit_bound = 0;
};

struct StabilizerCensus {
  std::uint64_t pgl4_order = 0;
  std::vector<CensusRow> rows;
  std::uint64_t orbit_sum = 0;
  std::uint64_t quadric_count = 0;  // (8^10 - 1) / 7
  bool nonsplit_binary_product_consistent = false;
};
StabilizerCensus stabilizer_census();

struct AffineTransitivityReport {
  std::size_t maps = 0;
  std::size_t subsets = 0;
  bool simply_transitive = false;
  std::size_t stabilizer_of_0_1_eta = 0;
};
AffineTransitivityReport verify_affine_transitivity();

}  // namespace g4f8
