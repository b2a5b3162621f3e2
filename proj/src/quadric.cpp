#include "g4f8/quadric.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace g4f8 {

std::string_view to_string(QuadricId id) {
  switch (id) {
    case QuadricId::split: return "split";
    case QuadricId::cone: return "cone";
    case QuadricId::nonsplit: return "nonsplit";
  }
  return "?";
}

QuadricId parse_quadric_id(std::string_view s) {
  if (s == "split") return QuadricId::split;
  if (s == "cone") return QuadricId::cone;
  if (s == "nonsplit") return QuadricId::nonsplit;
  throw std::invalid_argument("unknown quadric id: " + std::string(s));
}

std::string_view to_string(QuadricClass c) {
  switch (c) {
    case QuadricClass::split: return "split";
    case QuadricClass::nonsplit: return "nonsplit";
    case QuadricClass::cone: return "cone";
    case QuadricClass::double_plane: return "double_plane";
    case QuadricClass::plane_pair: return "plane_pair";
    case QuadricClass::anisotropic_binary: return "anisotropic_binary";
    case QuadricClass::other_reducible: return "other_reducible";
  }
  return "?";
}

QuadraticForm canonical_form(QuadricId id) {
  QuadraticForm f;
  const Gf8 one = Gf8::one();
  switch (id) {
    case QuadricId::split:
      f.c[quad::XY] = one;
      f.c[quad::ZW] = one;
      break;
    case QuadricId::cone:
      f.c[quad::XY] = one;
      f.c[quad::Z2] = one;
      break;
    case QuadricId::nonsplit:
      f.c[quad::X2] = one;
      f.c[quad::XY] = one;
      f.c[quad::Y2] = one;
      f.c[quad::ZW] = one;
      break;
  }
  return f;
}

const std::vector<Point8>& all_points8() {
  static const std::vector<Point8> pts = enumerate_points<Gf8>();
  return pts;
}

const std::vector<Point64>& all_points64() {
  static const std::vector<Point64> pts = enumerate_points<Gf64>();
  return pts;
}

namespace {

unsigned pack(const Point8& p) {
  return (p.x[0].code() << 9) | (p.x[1].code() << 6) | (p.x[2].code() << 3) | p.x[3].code();
}

Point8 pt(unsigned a, unsigned b, unsigned c, unsigned d) {
  return Point8::normalized({Gf8::from_code(a), Gf8::from_code(b), Gf8::from_code(c), Gf8::from_code(d)});
}

std::string p1_label(Gf8 x, Gf8 y) {
  return "[" + std::to_string(x.code()) + ":" + std::to_string(y.code()) + "]";
}

// Canonical representatives of P^1(GF(8)): [0:1] and [1:t].
std::vector<std::pair<Gf8, Gf8>> p1_points() {
  std::vector<std::pair<Gf8, Gf8>> out{{Gf8::zero(), Gf8::one()}};
  for (auto t : field_elements<Gf8>()) out.emplace_back(Gf8::one(), t);
  return out;
}

std::vector<Point64> line_points64(const Point8& p, const Point8& q) {
  const Point64 a = embed_point(p), b = embed_point(q);
  std::vector<Point64> out{b};
  for (auto t : field_elements<Gf64>()) {
    std::array<Gf64, 4> v{};
    for (int i = 0; i < 4; ++i) v[i] = a.x[i] + t * b.x[i];
    out.push_back(Point64::normalized(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

QuadricModel::QuadricModel(QuadricId id) : id_(id), form_(canonical_form(id)) {
  for (const auto& p : all_points8())
    if (eval(form_, p).is_zero()) points8_.push_back(p);
  const auto f64 = embed_form(form_);
  for (const auto& p : all_points64())
    if (eval(f64, p).is_zero()) points64_.push_back(p);
  index_map_.assign(4096, -1);
  for (std::size_t i = 0; i < points8_.size(); ++i) index_map_[pack(points8_[i])] = static_cast<int>(i);
  build_structure();
  verify();
}

int QuadricModel::index_of(const Point8& p) const { return index_map_[pack(p)]; }

void QuadricModel::build_structure() {
  auto finish = [this](StructureCurve c) {
    std::sort(c.points8.begin(), c.points8.end());
    for (const auto& p : c.points8) c.point_indices.push_back(index_of(p));
    curves_.push_back(std::move(c));
  };

  switch (id_) {
    case QuadricId::split: {
      // ([x:y],[z:w]) -> [xz : yw : xw : yz]
      const auto p1 = p1_points();
      for (int ruling = 0; ruling < 2; ++ruling) {
        for (auto [u0, u1] : p1) {
          StructureCurve c;
          c.kind = StructureCurve::Kind::line;
          c.ruling = ruling;
          c.label = (ruling == 0 ? "A" : "B") + p1_label(u0, u1);
          for (auto [v0, v1] : p1) {
            auto [x, y, z, w] = ruling == 0 ? std::array{u0, u1, v0, v1} : std::array{v0, v1, u0, u1};
            c.points8.push_back(Point8::normalized({x * z, y * w, x * w, y * z}));
          }
          c.points64 = line_points64(c.points8[0], c.points8[1]);
          finish(std::move(c));
        }
      }
      break;
    }
    case QuadricId::cone: {
      vertex_ = pt(0, 0, 0, 1);
      auto add_line = [&](std::string label, Gf8 a, Gf8 b, Gf8 c3) {
        StructureCurve c;
        c.kind = StructureCurve::Kind::line;
        c.label = std::move(label);
        c.points8.push_back(*vertex_);
        for (auto w : field_elements<Gf8>()) c.points8.push_back(Point8::normalized({a, b, c3, w}));
        c.points64 = line_points64(*vertex_, Point8::normalized({a, b, c3, Gf8::zero()}));
        finish(std::move(c));
      };
      for (auto z : field_elements<Gf8>())
        add_line("L[" + std::to_string(z.code()) + "]", Gf8::one(), z * z, z);
      add_line("L[inf]", Gf8::zero(), Gf8::one(), Gf8::zero());
      break;
    }
    case QuadricId::nonsplit: {
      base_points_ = {pt(0, 0, 1, 0), pt(0, 0, 0, 1)};
      // C_y = [1 : y : Z : (1+y+y^2)/Z] in the plane Y = yX; C_inf = [0 : 1 : Z : 1/Z] in X = 0.
      auto add_conic = [&](std::string label, std::array<Gf8, 4> plane, Gf8 x, Gf8 y) {
        StructureCurve c;
        c.kind = StructureCurve::Kind::conic;
        c.label = std::move(label);
        c.points8 = base_points_;
        const Gf8 n = x * x + x * y + y * y;
        for (auto z : field_elements<Gf8>()) {
          if (z.is_zero()) continue;
          c.points8.push_back(Point8::normalized({x, y, z, n / z}));
        }
        std::array<Gf64, 4> plane64{};
        for (int i = 0; i < 4; ++i) plane64[i] = embed(plane[i]);
        for (const auto& p : points64_)
          if (dot(plane64, p.x).is_zero()) c.points64.push_back(p);
        finish(std::move(c));
      };
      for (auto y : field_elements<Gf8>())
        add_conic("C[" + std::to_string(y.code()) + "]", {y, Gf8::one(), Gf8::zero(), Gf8::zero()},
                  Gf8::one(), y);
      add_conic("C[inf]", {Gf8::one(), Gf8::zero(), Gf8::zero(), Gf8::zero()}, Gf8::zero(), Gf8::one());
      break;
    }
  }
}

void QuadricModel::verify() const {
  auto fail = [this](const std::string& what) {
    throw std::logic_error("quadric " + std::string(to_string(id_)) + ": " + what);
  };
  const std::size_t expected[] = {81, 73, 65};
  if (points8_.size() != expected[static_cast<int>(id_)]) fail("unexpected GF(8) point count");
  if (curves_.size() != (id_ == QuadricId::split ? 18u : 9u)) fail("unexpected number of structure curves");

  for (const auto& c : curves_) {
    if (c.points8.size() != 9) fail("curve " + c.label + " does not have 9 GF(8) points");
    if (c.points64.size() != 65) fail("curve " + c.label + " does not have 65 GF(64) points");
    for (int idx : c.point_indices)
      if (idx < 0) fail("curve " + c.label + " leaves the quadric");
  }

  // Coverage: how many structure curves of each family pass through each point.
  auto coverage = [&](int ruling) {
    std::vector<int> cover(points8_.size(), 0);
    for (const auto& c : curves_)
      if (c.ruling == ruling)
        for (int idx : c.point_indices) ++cover[idx];
    return cover;
  };

  switch (id_) {
    case QuadricId::split:
      for (int r = 0; r < 2; ++r)
        for (int n : coverage(r))
          if (n != 1) fail("ruling does not partition the points");
      break;
    case QuadricId::cone: {
      if (!is_singular_point(form_, *vertex_)) fail("vertex is not singular");
      const auto cover = coverage(-1);
      for (std::size_t i = 0; i < points8_.size(); ++i) {
        const bool is_vertex = points8_[i] == *vertex_;
        if (cover[i] != (is_vertex ? 9 : 1)) fail("line pencil does not cover the cone correctly");
      }
      break;
    }
    case QuadricId::nonsplit: {
      const auto cover = coverage(-1);
      for (std::size_t i = 0; i < points8_.size(); ++i) {
        const bool is_base = std::find(base_points_.begin(), base_points_.end(), points8_[i]) != base_points_.end();
        if (cover[i] != (is_base ? 9 : 1)) fail("conic pencil does not cover the quadric correctly");
      }
      for (std::size_t i = 0; i < points8_.size(); ++i)
        for (std::size_t j = i + 1; j < points8_.size(); ++j) {
          bool contained = true;
          for (auto t : field_elements<Gf8>()) {
            std::array<Gf8, 4> v{};
            for (int k = 0; k < 4; ++k) v[k] = points8_[i].x[k] + t * points8_[j].x[k];
            if (!eval(form_, Point8::normalized(v)).is_zero()) {
              contained = false;
              break;
            }
          }
          if (contained) fail("nonsplit quadric contains a GF(8) line");
        }
      break;
    }
  }
}

const QuadricModel& quadric(QuadricId id) {
  static std::once_flag flags[3];
  static std::optional<QuadricModel> models[3];
  const int i = static_cast<int>(id);
  std::call_once(flags[i], [&] { models[i].emplace(id); });
  return *models[i];
}

std::vector<const QuadricModel*> canonical_quadrics() {
  return {&quadric(QuadricId::split), &quadric(QuadricId::cone), &quadric(QuadricId::nonsplit)};
}

// ---------------------------------------------------------------------------

QuadricClass classify_signature(const FormSignature& s, std::size_t q) {
  if (s.count == (q + 1) * (q + 1) && s.span_rank == 4 && s.singular_count == 0) return QuadricClass::split;
  if (s.count == q * q + 1 && s.span_rank == 4 && s.singular_count == 0) return QuadricClass::nonsplit;
  if (s.count == q * q + q + 1 && s.span_rank == 4 && s.singular_count == 1) return QuadricClass::cone;
  if (s.count == q * q + q + 1 && s.span_rank == 3 && s.singular_count == s.count)
    return QuadricClass::double_plane;
  if (s.count == 2 * q * q + q + 1 && s.span_rank == 4) return QuadricClass::plane_pair;
  if (s.count == q + 1 && s.span_rank == 2) return QuadricClass::anisotropic_binary;
  return QuadricClass::other_reducible;
}

QuadricClass classify_form(const QuadraticForm& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot classify the zero form");
  return classify_signature(form_signature(f, all_points8()), Gf8::order);
}

// ---------------------------------------------------------------------------

std::optional<Gf8> preservation_scalar(const QuadraticForm& f, const Matrix8& m) {
  const QuadraticForm g = substitute(f, m);
  std::size_t i = 0;
  while (i < f.c.size() && f.c[i].is_zero()) ++i;
  if (i == f.c.size()) return std::nullopt;
  const Gf8 lambda = g.c[i] / f.c[i];
  if (lambda.is_zero() || !(g == lambda * f)) return std::nullopt;
  return lambda;
}

bool fix_group_contains(const QuadricModel& q, const Matrix8& m) {
  if (!m.invertible()) throw std::invalid_argument("fix_group_contains: singular matrix");
  return preservation_scalar(q.form(), m).has_value();
}

std::vector<Mat2> gl2_elements() {
  std::vector<Mat2> out;
  const auto f = field_elements<Gf8>();
  for (auto a : f)
    for (auto b : f)
      for (auto c : f)
        for (auto d : f) {
          Mat2 m{a, b, c, d};
          if (!m.det().is_zero()) out.push_back(m);
        }
  return out;
}

Matrix8 split_fix_element(const Mat2& a, const Mat2& b, bool swap_factors) {
  // A point is the rank-one matrix M = [[X, Z], [W, Y]] = u v^T; act by M -> A M' B^T.
  Matrix8 out;
  for (int k = 0; k < 4; ++k) {
    std::array<Gf8, 4> e{};
    e[k] = Gf8::one();
    Gf8 m00 = e[0], m01 = e[2], m10 = e[3], m11 = e[1];
    if (swap_factors) std::swap(m01, m10);
    // A * M
    const Gf8 t00 = a.a * m00 + a.b * m10, t01 = a.a * m01 + a.b * m11;
    const Gf8 t10 = a.c * m00 + a.d * m10, t11 = a.c * m01 + a.d * m11;
    // (A M) * B^T
    const Gf8 r00 = t00 * b.a + t01 * b.b, r01 = t00 * b.c + t01 * b.d;
    const Gf8 r10 = t10 * b.a + t11 * b.b, r11 = t10 * b.c + t11 * b.d;
    out(0, k) = r00;
    out(1, k) = r11;
    out(2, k) = r01;
    out(3, k) = r10;
  }
  return out;
}

Matrix8 cone_fix_element(const Mat2& m, Gf8 e, Gf8 gx, Gf8 gy, Gf8 gz) {
  const Gf8 z = Gf8::zero();
  return Matrix8::from_rows({{m.a, m.b, z, z},
                             {m.c, m.d, z, z},
                             {gf8_sqrt(m.a * m.c), gf8_sqrt(m.b * m.d), gf8_sqrt(m.a * m.d + m.b * m.c), z},
                             {gx, gy, gz, e}});
}

Matrix8 nonsplit_shift_x(Gf8 t) {
  const Gf8 o = Gf8::one(), z = Gf8::zero();
  return Matrix8::from_rows({{o, z, t, z}, {z, o, z, z}, {z, z, o, z}, {z, t, t * t, o}});
}

Matrix8 nonsplit_shift_y(Gf8 t) {
  const Gf8 o = Gf8::one(), z = Gf8::zero();
  return Matrix8::from_rows({{o, z, z, z}, {z, o, t, z}, {z, z, o, z}, {t, z, t * t, o}});
}

namespace {
// (X^2+XY+Y^2) o A = (a^2+ac+c^2) X^2 + (ad+bc) XY + (b^2+bd+d^2) Y^2
std::optional<Gf8> binary_scalar(const Mat2& m) {
  const Gf8 x2 = m.a * m.a + m.a * m.c + m.c * m.c;
  const Gf8 xy = m.a * m.d + m.b * m.c;
  const Gf8 y2 = m.b * m.b + m.b * m.d + m.d * m.d;
  if (xy.is_zero() || x2 != xy || y2 != xy) return std::nullopt;
  return xy;
}
}  // namespace

Matrix8 nonsplit_block_element(const Mat2& m, Gf8 zs) {
  const auto lambda = binary_scalar(m);
  if (!lambda) throw std::invalid_argument("matrix does not preserve X^2+XY+Y^2");
  const Gf8 z = Gf8::zero();
  return Matrix8::from_rows({{m.a, m.b, z, z}, {m.c, m.d, z, z}, {z, z, zs, z}, {z, z, z, *lambda / zs}});
}

Matrix8 nonsplit_scale(Gf8 alpha, bool swap_zw) {
  const Gf8 o = Gf8::one(), z = Gf8::zero(), ai = alpha.inv();
  if (swap_zw) return Matrix8::from_rows({{o, z, z, z}, {z, o, z, z}, {z, z, z, alpha}, {z, z, ai, z}});
  return Matrix8::from_rows({{o, z, z, z}, {z, o, z, z}, {z, z, alpha, z}, {z, z, z, ai}});
}

std::vector<Mat2> binary_stabilizer() {
  std::vector<Mat2> out;
  for (const auto& m : gl2_elements())
    if (binary_scalar(m)) out.push_back(m);
  return out;
}

std::vector<Mat2> listed_binary_representatives() {
  const Gf8 o = Gf8::one(), z = Gf8::zero();
  std::vector<Mat2> out{{o, z, z, o}, {z, o, o, z}, {z, o, o, o}, {o, z, o, o}, {o, o, z, o}, {o, o, o, z}};
  // The three roots of t^3 + t + 1 are eta, eta^2, eta^4.
  for (int k : {1, 2, 4}) {
    const Gf8 r = Gf8::eta_pow(k);
    Mat2 m{r, r * r, r.inv() * r.inv() * r.inv(), r};
    for (int rot = 0; rot < 4; ++rot) {
      out.push_back(m);
      m = Mat2{m.c, m.a, m.d, m.b};  // quarter turn
    }
  }
  return out;
}

namespace {
// Canonical representative of the scalar class of m.
Mat2 scalar_class(const Mat2& m) {
  Mat2 best = m;
  auto key = [](const Mat2& x) { return (x.a.code() << 9) | (x.b.code() << 6) | (x.c.code() << 3) | x.d.code(); };
  for (int k = 0; k < 7; ++k) {
    const Gf8 s = Gf8::eta_pow(k);
    Mat2 t{s * m.a, s * m.b, s * m.c, s * m.d};
    if (key(t) < key(best)) best = t;
  }
  return best;
}
}  // namespace

BinaryStabilizerReport count_binary_stabilizer() {
  BinaryStabilizerReport r;
  const auto stab = binary_stabilizer();
  r.total = stab.size();
  auto key = [](const Mat2& x) { return (x.a.code() << 9) | (x.b.code() << 6) | (x.c.code() << 3) | x.d.code(); };
  std::set<unsigned> classes;
  for (const auto& m : stab) classes.insert(key(scalar_class(m)));
  r.mod_scalars = classes.size();

  std::set<unsigned> listed;
  bool ok = true;
  for (const auto& m : listed_binary_representatives()) {
    ok = ok && binary_scalar(m).has_value();
    listed.insert(key(scalar_class(m)));
  }
  r.listed_generators_present = ok && listed.size() == 18 && listed == classes;
  return r;
}

StabilizerCensus stabilizer_census() {
  constexpr std::uint64_t q = 8;
  const std::uint64_t q4 = q * q * q * q;
  StabilizerCensus c;
  c.pgl4_order = (q4 - 1) * (q4 - q) * (q4 - q * q) * (q4 - q * q * q) / (q - 1);

  const std::uint64_t gl2 = gl2_elements().size();
  const std::uint64_t pgl2 = gl2 / (q - 1);
  const std::uint64_t binary = binary_stabilizer().size();
  const std::uint64_t nonsplit_points = quadric(QuadricId::nonsplit).points8().size();

  auto row = [&](std::string name, std::uint64_t aut) {
    if (c.pgl4_order % aut != 0) throw std::logic_error("stabilizer order does not divide |PGL4|: " + name);
    c.rows.push_back({std::move(name), aut, c.pgl4_order / aut});
  };
  row("XY+ZW", 2 * pgl2 * pgl2);
  row("XY+Z^2", gl2 * q * q * q * (q - 1) / (q - 1));
  row("X^2+XY+Y^2+ZW", nonsplit_points * (nonsplit_points - 1) * binary * (q - 1) / (q - 1));
  const std::uint64_t binary_aut = binary * (q4 - q * q) * (q4 - q * q * q) / (q - 1);
  row("X^2+XY+Y^2", binary_aut);
  c.nonsplit_binary_product_consistent = binary_aut == 260112384ULL;

  const std::uint64_t planes = (q4 - 1) / (q - 1);
  c.rows.push_back({"X^2", 0, planes});
  c.rows.push_back({"XY", 0, planes * (planes - 1) / 2});

  for (const auto& r : c.rows) c.orbit_sum += r.orbit_bound;
  std::uint64_t q10 = 1;
  for (int i = 0; i < 10; ++i) q10 *= q;
  c.quadric_count = (q10 - 1) / (q - 1);
  return c;
}

AffineTransitivityReport verify_affine_transitivity() {
  AffineTransitivityReport r;
  const auto f = field_elements<Gf8>();
  std::vector<std::pair<Gf8, Gf8>> maps;
  for (auto e : f)
    for (auto t : f)
      if (!e.is_zero()) maps.emplace_back(e, t);
  r.maps = maps.size();

  std::vector<unsigned> subsets;
  for (unsigned s = 0; s < 256; ++s)
    if (std::popcount(s) == 3) subsets.push_back(s);
  r.subsets = subsets.size();

  auto image = [](std::pair<Gf8, Gf8> g, unsigned set) {
    unsigned out = 0;
    for (unsigned v = 0; v < 8; ++v)
      if (set & (1u << v)) out |= 1u << (g.first * Gf8::from_code(v) + g.second).code();
    return out;
  };
  const unsigned base = (1u << 0) | (1u << 1) | (1u << Gf8::eta().code());
  std::map<unsigned, int> hits;
  for (const auto& g : maps) ++hits[image(g, base)];
  r.stabilizer_of_0_1_eta = static_cast<std::size_t>(hits[base]);
  r.simply_transitive = hits.size() == subsets.size() &&
                        std::all_of(hits.begin(), hits.end(), [](const auto& kv) { return kv.second == 1; });
  return r;
}

}  // namespace g4f8
