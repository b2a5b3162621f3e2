#include "g4f8/defect.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace g4f8 {

using json = nlohmann::ordered_json;

namespace {

IntPoly linear(long root) { return IntPoly::from_high({1, -root}); }
IntPoly t_minus_1() { return linear(1); }

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string factor_key(std::vector<IntPoly> fs) {
  std::vector<std::string> keys;
  for (const auto& f : fs) keys.push_back(coeff_string(f));
  std::sort(keys.begin(), keys.end());
  std::string s;
  for (const auto& k : keys) s += k + "|";
  return s;
}

std::string product_string(const std::vector<IntPoly>& fs) {
  std::string s;
  for (const auto& f : fs) s += "(" + to_string(f) + ")";
  return s;
}

bool is_unit(const MPoly& r) { return r.degree() == 0 && abs(r.c[0]) == 1; }

}  // namespace

int factor_defect(const IntPoly& p) {
  if (p.degree() < 1 || p.leading() != 1) throw std::invalid_argument("defect of a non-monic or constant polynomial");
  const mpz_class tr = -p.c[p.degree() - 1];
  return static_cast<int>(tr.get_si()) - p.degree();
}

const std::vector<IntPoly>& positive_real_polys(int k, int d) {
  if (k < 0 || d < 1) throw std::invalid_argument("positive_real_polys: need k >= 0, d >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<IntPoly>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find({k, d}); it != cache.end()) return it->second;

  // Roots in (0, s) with sum s: e_j <= C(d, j) (s/d)^j by Maclaurin.
  const int s = d + k;
  std::vector<mpz_class> hi(d + 1);
  for (int j = 2; j <= d; ++j) {
    mpz_class num = binomial(d, j);
    mpz_class den = 1;
    for (int i = 0; i < j; ++i) {
      num *= s;
      den *= d;
    }
    hi[j] = num / den;
  }
  std::vector<IntPoly> out;
  std::vector<mpz_class> e(d + 1, 1);
  e[1] = s;
  const auto emit = [&] {
    std::vector<mpz_class> c(d + 1);
    c[d] = 1;
    for (int j = 1; j <= d; ++j) c[d - j] = (j % 2 ? -1 : 1) * e[j];
    IntPoly p(std::move(c));
    if (certify_positive_real_roots(p)) out.push_back(std::move(p));
  };
  if (d == 1) {
    emit();
  } else {
    for (int j = 2; j <= d; ++j)
      if (hi[j] < 1) return cache[{k, d}] = {};
    while (true) {
      emit();
      int j = d;
      while (j >= 2 && e[j] == hi[j]) e[j--] = 1;
      if (j < 2) break;
      ++e[j];
    }
  }
  return cache[{k, d}] = std::move(out);
}

std::vector<IntPoly> enumerate_defect_factors(int k, int d_max) {
  std::vector<IntPoly> out;
  for (int d = d_max; d >= 1; --d) {
    std::vector<IntPoly> level;
    for (const auto& p : positive_real_polys(k, d)) {
      bool reducible = false;
      for (int d1 = 1; d1 <= d / 2 && !reducible; ++d1)
        for (int k1 = 0; k1 <= k && !reducible; ++k1)
          for (const auto& f : positive_real_polys(k1, d1))
            if (divides(f, p)) {
              reducible = true;
              break;
            }
      if (!reducible) level.push_back(p);
    }
    std::sort(level.begin(), level.end(), [](const IntPoly& a, const IntPoly& b) {
      return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
    });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

IntPoly DefectEntry::mandatory() const {
  IntPoly p = IntPoly::constant(1);
  for (const auto& f : factors) p = p * f;
  return p;
}

IntPoly DefectEntry::full_P(int g) const {
  if (g < g_min) throw std::invalid_argument("genus below g_min");
  return mandatory() * t_minus_1().pow(g - g_min);
}

std::vector<std::pair<IntPoly, int>> DefectEntry::factorization(int g) const {
  if (g < g_min) throw std::invalid_argument("genus below g_min");
  std::vector<std::pair<IntPoly, int>> out;
  for (const auto& f : factors) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == f; });
    if (it == out.end())
      out.emplace_back(f, 1);
    else
      ++it->second;
  }
  if (g > g_min) out.emplace_back(t_minus_1(), g - g_min);
  return out;
}

const std::vector<PrintedEntry>& printed_defect3_tables() {
  const auto P = [](std::initializer_list<long> hi) { return IntPoly::from_high(hi); };
  const IntPoly t2 = P({1, -2}), gold = P({1, -3, 1});
  static const std::vector<PrintedEntry> rows = {
      {1, 1, {P({1, -7, 14, -8, 1})}, 4, "0.827"},
      {2, 1, {P({1, -7, 13, -7, 1})}, 4, "0.772"},
      {3, 1, {P({1, -6, 5, -1})}, 3, "0.692"},
      {4, 1, {P({1, -6, 7, -1})}, 3, "0.834"},
      {5, 1, {P({1, -6, 8, -1})}, 3, "0.860"},
      {6, 1, {P({1, -6, 8, -2})}, 3, "0.675"},
      {7, 1, {P({1, -6, 9, -1})}, 3, "0.879"},
      {8, 1, {P({1, -6, 9, -3})}, 3, "0.532"},
      {9, 1, {P({1, -5, 5})}, 2, ""},
      {10, 1, {P({1, -5, 3})}, 2, "0.302"},
      {11, 1, {P({1, -5, 2})}, 2, "0.561"},
      {12, 1, {P({1, -5, 1})}, 2, "0.791"},
      {13, 1, {P({1, -4})}, 1, "0"},
      {14, 2, {P({1, -5, 6, -1}), t2}, 4, "0.8019"},
      {15, 2, {P({1, -4, 2}), t2}, 3, "0.414"},
      {16, 2, {P({1, -4, 1}), t2}, 3, "0.732"},
      {17, 2, {P({1, -3}), t2}, 2, "0"},
      {18, 3, {P({1, -5, 6, -1}), gold}, 5, "0.8019"},
      {19, 3, {P({1, -4, 2}), gold}, 4, "0.618"},
      {20, 3, {P({1, -4, 1}), gold}, 4, "0.732"},
      {21, 3, {P({1, -3}), gold}, 3, "0.618"},
      {22, 4, {t2, t2, t2}, 3, "0"},
      {23, 4, {gold, t2, t2}, 4, "0.618"},
      {24, 4, {gold, gold, t2}, 5, "0.618"},
      {25, 4, {gold, gold, gold}, 6, "0.618"},
  };
  return rows;
}

std::vector<DefectEntry> defect_entries(int k, int d_max) {
  if (k < 1) throw std::invalid_argument("defect_entries: k >= 1");
  std::vector<std::vector<IntPoly>> irr(k + 1);
  for (int j = 1; j <= k; ++j) irr[j] = enumerate_defect_factors(j, d_max);

  // Partitions of k, parts descending, partitions in reverse lexicographic order.
  std::vector<std::vector<int>> partitions;
  std::vector<int> cur;
  std::function<void(int, int)> part = [&](int rest, int maxp) {
    if (rest == 0) {
      partitions.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      cur.push_back(p);
      part(rest - p, p);
      cur.pop_back();
    }
  };
  part(k, k);

  std::vector<DefectEntry> out;
  for (const auto& parts : partitions) {
    std::vector<std::size_t> idx(parts.size(), 0);
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
      if (i == parts.size()) {
        DefectEntry e;
        e.defect = k;
        for (std::size_t j = 0; j < parts.size(); ++j) {
          e.factors.push_back(irr[parts[j]][idx[j]]);
          e.g_min += e.factors.back().degree();
        }
        out.push_back(std::move(e));
        return;
      }
      const std::size_t from = i > 0 && parts[i] == parts[i - 1] ? idx[i - 1] : 0;
      for (std::size_t j = from; j < irr[parts[i]].size(); ++j) {
        idx[i] = j;
        choose(i + 1);
      }
    };
    choose(0);
  }

  if (k == 3) {
    std::map<std::string, const PrintedEntry*> by_key;
    for (const auto& row : printed_defect3_tables()) by_key[factor_key(row.factors)] = &row;
    int extra = 100;
    for (auto& e : out) {
      auto it = by_key.find(factor_key(e.factors));
      if (it != by_key.end()) {
        e.number = it->second->number;
        e.type_class = it->second->type_class;
      } else {
        e.number = ++extra;
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i].number = static_cast<int>(i + 1);
  }
  return out;
}

const DefectEntry& defect3_entry(int number) {
  static const std::vector<DefectEntry> entries = defect_entries(3);
  for (const auto& e : entries)
    if (e.number == number) return e;
  throw std::out_of_range("no defect-3 entry " + std::to_string(number));
}

// ---------------------------------------------------------------------------

namespace {
mpz_class scaled_floor(const mpq_class& x, int digits) {
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, digits);
  const mpq_class y = x * p10;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return f;
}
mpz_class scaled_ceil(const mpq_class& x, int digits) {
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, digits);
  const mpq_class y = x * p10;
  mpz_class f;
  mpz_cdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return f;
}
}  // namespace

std::string Threshold::render(int d) const {
  if (!restricts) return "0";
  if (d > digits) throw std::invalid_argument("threshold not certified to that many decimals");
  const std::string s = scaled_floor(lo, d).get_str();
  const mpz_class whole = scaled_floor(lo, 0);
  std::string frac = s.size() > static_cast<std::size_t>(d) ? s.substr(s.size() - d) : std::string(d - s.size(), '0') + s;
  return whole.get_str() + "." + frac;
}

Threshold threshold_21(const DefectEntry& e, int digits) {
  Threshold t;
  t.digits = digits;
  const IntPoly p = squarefree_part(e.mandatory());
  const SturmSequence sturm(p);
  // Roots in (0, 1): the (t - 1) companions pin the smallest root at 1 otherwise.
  const int below_one = sturm.count(mpq_class(0), mpq_class(1)) - (sign_at(sturm.base(), mpq_class(1)) == 0 ? 1 : 0);
  if (below_one == 0) return t;
  t.restricts = true;
  mpq_class width(1, 1000);
  for (int iter = 0; iter < 64; ++iter) {
    const auto roots = isolate_real_roots(p, width);
    const auto& [rlo, rhi] = roots.front();
    t.lo = 1 - rhi;  // closed end
    t.hi = 1 - rlo;  // open end
    if (scaled_floor(t.lo, digits) == scaled_ceil(t.hi, digits) - 1) return t;
    width /= 16;
  }
  throw std::runtime_error("threshold refinement did not converge");
}

bool threshold_matches(const Threshold& t, const std::string& printed) {
  if (printed.empty() || printed == "0") return !t.restricts;
  const auto dot = printed.find('.');
  const int d = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return t.restricts && t.render(d) == printed;
}

std::int64_t floor_two_sqrt(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(4 * q).get_mpz_t());
  return r.get_si();
}

bool passes_reason_21(const DefectEntry& e, std::int64_t q) {
  const long m = floor_two_sqrt(q);
  const Surd lo{m + 1, -1, 4 * q}, hi{m + 1, 1, 4 * q};
  for (const auto& [f, mult] : e.factorization(e.g_min)) {
    (void)mult;
    if (count_roots_closed(f, lo, hi) != f.degree()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::optional<UnitCertificate> find_unit_split(const DefectEntry& e, int g) {
  if (g < e.g_min) return std::nullopt;
  const auto types = e.factorization(g);
  const std::size_t n = types.size();
  if (n < 2) return std::nullopt;
  std::vector<ZmPoly> shifted;
  for (const auto& [f, mult] : types) shifted.push_back(shift_by_m_plus_1(f));
  std::vector<std::vector<bool>> unit(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) unit[i][j] = unit[j][i] = is_unit(resultant(shifted[i], shifted[j]));

  for (unsigned mask = 1; mask + 1 < (1u << n); mask += 2) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if ((mask >> i & 1) && !(mask >> j & 1) && !unit[i][j]) ok = false;
    if (!ok) continue;
    UnitCertificate c;
    c.f = zm_from({MPoly::constant(1)});
    c.g = c.f;
    for (std::size_t i = 0; i < n; ++i)
      for (int r = 0; r < types[i].second; ++r) {
        if (mask >> i & 1) {
          c.left.push_back(types[i].first);
          c.f = c.f * shifted[i];
        } else {
          c.right.push_back(types[i].first);
          c.g = c.g * shifted[i];
        }
      }
    c.resultant = resultant(c.f, c.g);
    if (!is_unit(c.resultant)) throw std::logic_error("pairwise unit resultants did not multiply to a unit");
    return c;
  }
  return std::nullopt;
}

const std::vector<std::pair<int, int>>& printed_decomposable_from() {
  static const std::vector<std::pair<int, int>> rows = {
      {17, 2}, {9, 3},  {10, 3}, {21, 3}, {3, 4},  {4, 4},  {6, 4},  {8, 4},  {14, 4}, {15, 4},
      {19, 4}, {20, 4}, {22, 4}, {23, 4}, {1, 5},  {2, 5},  {18, 5}, {24, 5}, {25, 7},
  };
  return rows;
}

std::vector<int> decomposability_eliminations(int g) {
  if (g < 1) throw std::invalid_argument("genus must be positive");
  std::vector<int> out;
  for (const auto& [entry, from] : printed_decomposable_from())
    if (g >= from) out.push_back(entry);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

mpq_class genus_bound_entry11(std::int64_t q) {
  const mpz_class m = floor_two_sqrt(q), Q = q;
  const mpz_class den = 5 * m * m - 7 * m - 2 * Q;
  if (den <= 0) throw std::domain_error("bound inapplicable");
  mpq_class b(Q * Q - Q + 8 * m * m - 10 * m - 16, den);
  b.canonicalize();
  return b;
}

mpq_class genus_bound_single_root(std::int64_t q, int k) {
  const mpz_class m = floor_two_sqrt(q), Q = q, K = k;
  const mpz_class den = m * m + m - 2 * Q;
  if (den <= 0) throw std::domain_error("bound inapplicable");
  mpq_class b(Q * Q - Q + 2 * K * m + K - K * K, den);
  b.canonicalize();
  return b;
}

// ---------------------------------------------------------------------------

int ZetaType::genus() const {
  int g = 0;
  for (const auto& f : x_factors) g += f.degree();
  return g;
}

IntPoly ZetaType::x_poly() const {
  IntPoly p = IntPoly::constant(1);
  for (const auto& f : x_factors) p = p * f;
  return p;
}

IntPoly ZetaType::x_factor(const IntPoly& p, std::int64_t q) {
  const long m = floor_two_sqrt(q);
  const IntPoly lin(std::vector<mpz_class>{m + 1, -1});
  IntPoly r;
  for (std::size_t i = p.c.size(); i-- > 0;) r = r * lin + IntPoly::constant(p.c[i]);
  if (p.degree() % 2) r = -r;
  return r;
}

ZetaType ZetaType::from_integers(const std::vector<long>& xs, std::int64_t q) {
  ZetaType t;
  t.q = q;
  for (long x : xs) t.x_factors.push_back(linear(x));
  return t;
}

ZetaType ZetaType::from_entry(const DefectEntry& e, int g, std::int64_t q) {
  ZetaType t;
  t.q = q;
  for (const auto& [f, mult] : e.factorization(g))
    for (int i = 0; i < mult; ++i) t.x_factors.push_back(x_factor(f, q));
  return t;
}

std::vector<mpz_class> power_sums(const ZetaType& t, int n) {
  const IntPoly p = t.x_poly();
  const int g = p.degree();
  std::vector<mpz_class> e(std::max(n, g) + 1, 0);
  e[0] = 1;
  for (int i = 1; i <= g; ++i) e[i] = (i % 2 ? -1 : 1) * p.c[g - i];
  std::vector<mpz_class> s(n + 1);
  s[0] = g;
  for (int j = 1; j <= n; ++j) {
    mpz_class v = (j % 2 ? 1 : -1) * j * e[j];
    for (int i = 1; i < j; ++i) v += (i % 2 ? 1 : -1) * e[i] * s[j - i];
    s[j] = v;
  }
  return s;
}

mpz_class points_from_type(const ZetaType& t, int r) {
  const auto s = power_sums(t, 3);
  const mpz_class q = t.q, g = t.genus();
  switch (r) {
    case 1: return q + 1 + s[1];
    case 2: return q * q + 1 + 2 * g * q - s[2];
    case 3: return q * q * q + 1 + s[3] - 3 * q * s[1];
  }
  throw std::invalid_argument("extension degree must be 1, 2 or 3");
}

bool PlaceCounts::nonnegative_integers() const {
  for (const auto* a : {&a1, &a2, &a3})
    if (a->get_den() != 1 || *a < 0) return false;
  return true;
}

PlaceCounts place_counts(const ZetaType& t) {
  const mpz_class n1 = points_from_type(t, 1), n2 = points_from_type(t, 2), n3 = points_from_type(t, 3);
  PlaceCounts pc;
  pc.a1 = n1;
  pc.a2 = mpq_class(n2 - n1, 2);
  pc.a3 = mpq_class(n3 - n1, 3);
  pc.a2.canonicalize();
  pc.a3.canonicalize();
  return pc;
}

bool elliptic_trace_admissible(std::int64_t q, long t) {
  if (q < 2) throw std::invalid_argument("q must be a prime power");
  std::int64_t p = 2;
  while (q % p) ++p;
  int e = 0;
  std::int64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw std::invalid_argument("q must be a prime power");
  if (e % 2 == 0) throw std::invalid_argument("admissibility rule needs an odd exponent");
  if (static_cast<std::int64_t>(t) * t > 4 * q) throw std::out_of_range("trace exceeds the Hasse bound");
  const long a = std::labs(t);
  if (a == 0 || std::gcd<std::int64_t>(a, p) == 1) return true;
  if (p != 2 && p != 3) return false;
  std::int64_t pw = 1;
  for (int i = 0; i < (e + 1) / 2; ++i) pw *= p;
  return a == pw;
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kStages = {"2.1", "g_min", "A.1", "A.2", "A.3", "HT", "2.2"};

bool odd_prime_power(std::int64_t q) {
  try {
    elliptic_trace_admissible(q, 0);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

json place_json(const ZetaType& t) {
  const auto s = power_sums(t, 2);
  const auto pc = place_counts(t);
  return json{{"sum_x", s[1].get_str()},
              {"sum_x2", s[2].get_str()},
              {"N_q", points_from_type(t, 1).get_str()},
              {"N_q2", points_from_type(t, 2).get_str()},
              {"N_q3", points_from_type(t, 3).get_str()},
              {"a2", pc.a2.get_str()},
              {"a3", pc.a3.get_str()}};
}

json factors_json(const std::vector<IntPoly>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(to_string(f));
  return a;
}

// {2 sqrt q} truncated to four decimals.
std::string frac_part_text(std::int64_t q) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(4 * q * 100000000).get_mpz_t());
  const std::string s = mpz_class(r % 10000).get_str();
  return "0." + std::string(4 - s.size(), '0') + s;
}

}  // namespace

std::vector<int> PipelineResult::alive_after(const std::string& stage) const {
  const auto at = std::find(kStages.begin(), kStages.end(), stage);
  if (at == kStages.end()) throw std::invalid_argument("unknown stage " + stage);
  std::vector<int> out;
  for (const auto& r : records) {
    const auto it = std::find(kStages.begin(), kStages.end(), r.stage);
    if (it == kStages.end() || it > at) out.push_back(r.entry);
  }
  return out;
}

std::string PipelineResult::audit_json() const {
  json entries = json::array();
  for (const auto& r : records)
    entries.push_back(json{{"entry_no", r.entry},
                           {"factors", r.factors},
                           {"stage_eliminated", r.stage},
                           {"certificate", json::parse(r.payload)}});
  json surv = json::array();
  for (const auto& e : survivors) surv.push_back(e.number);
  json doc{{"q", q}, {"g", g}, {"k", k}, {"m", m}, {"entries", entries}, {"survivors", surv}};
  return doc.dump(2);
}

PipelineResult defect_pipeline(std::int64_t q, int g, int k) {
  if (g < 1 || k < 1 || k > 3) throw std::invalid_argument("defect_pipeline: g >= 1, 1 <= k <= 3");
  PipelineResult res;
  res.q = q;
  res.g = g;
  res.k = k;
  res.m = static_cast<int>(floor_two_sqrt(q));
  const bool ht = odd_prime_power(q);
  const auto listed = k == 3 ? decomposability_eliminations(g) : std::vector<int>{};
  const std::string frac = frac_part_text(q);

  const auto log = [&](const DefectEntry& e, const std::string& msg) {
    res.log.push_back("#" + std::to_string(e.number) + " " + product_string(e.factors) + ": " + msg);
  };

  for (const auto& e : defect_entries(k)) {
    AuditRecord rec;
    rec.entry = e.number;
    rec.factors = product_string(e.factors);
    json payload = json::object();
    const auto finish = [&](const std::string& stage, const std::string& msg) {
      rec.stage = stage;
      rec.payload = payload.dump();
      res.records.push_back(rec);
      log(e, msg);
    };

    const Threshold th = threshold_21(e, 4);
    payload["threshold"] = th.render(4);
    payload["fractional_2sqrtq"] = frac;
    if (!passes_reason_21(e, q)) {
      finish("2.1", "eliminated by 2.1 (threshold " + th.render(4) + " > " + frac + ")");
      continue;
    }
    payload.erase("threshold");
    payload.erase("fractional_2sqrtq");

    payload["g_min"] = e.g_min;
    if (g < e.g_min) {
      finish("g_min", "needs g >= " + std::to_string(e.g_min));
      continue;
    }
    payload.erase("g_min");

    const auto cert = find_unit_split(e, g);
    const bool is_listed = std::find(listed.begin(), listed.end(), e.number) != listed.end();
    if (k == 3 && is_listed != cert.has_value())
      log(e, std::string("indecomposability list and certificate search disagree (listed=") +
                 (is_listed ? "yes" : "no") + ")");
    if (cert) {
      payload = json{{"left", factors_json(cert->left)},
                     {"right", factors_json(cert->right)},
                     {"f", to_string(cert->f)},
                     {"g", to_string(cert->g)},
                     {"resultant", to_string(cert->resultant, 'm')}};
      if (k == 3) payload["listed"] = is_listed;
      finish("A.1", "eliminated by A.1, resultant " + to_string(cert->resultant, 'm'));
      continue;
    }

    const ZetaType type = ZetaType::from_entry(e, g, q);
    const json oracle = place_json(type);

    if (k == 3 && e.number == 11) {
      try {
        const mpq_class bound = genus_bound_entry11(q);
        if (g > bound) {
          const bool oracle_ok = place_counts(type).nonnegative_integers();
          payload = json{{"bound", bound.get_str()}, {"oracle", oracle}, {"oracle_disagrees", oracle_ok}};
          finish("A.2", "eliminated by A.2, g > " + bound.get_str() + "; place-count oracle a2=" +
                            oracle["a2"].get<std::string>() + " a3=" + oracle["a3"].get<std::string>() +
                            (oracle_ok ? ", which the bound contradicts" : ""));
          continue;
        }
      } catch (const std::domain_error&) {
        log(e, "A.2 bound inapplicable");
      }
    }

    if (e.factors.size() == 1 && e.factors[0] == linear(k + 1)) {
      try {
        const mpq_class bound = genus_bound_single_root(q, k);
        if (g > bound) {
          payload = json{{"bound", bound.get_str()}, {"oracle", oracle}};
          finish("A.3", "eliminated by A.3, g > " + bound.get_str());
          continue;
        }
        log(e, "A.3 bound " + bound.get_str() + " does not apply at g=" + std::to_string(g));
      } catch (const std::domain_error&) {
        log(e, "A.3 bound inapplicable");
      }
    }

    if (ht) {
      std::optional<long> bad;
      for (const auto& [f, mult] : e.factorization(g)) {
        if (f.degree() != 1) continue;
        const long x = res.m + 1 + f.c[0].get_si();  // f = t - r, x = m + 1 - r
        if (!elliptic_trace_admissible(q, x) || !elliptic_trace_admissible(q, -x)) bad = x;
      }
      if (bad) {
        payload = json{{"x", *bad}, {"traces", json::array({*bad, -*bad})}, {"admissible", false}};
        finish("HT", "eliminated by Honda-Tate, no elliptic curve with trace " + std::to_string(*bad));
        continue;
      }
    }

    if (!place_counts(type).nonnegative_integers()) {
      payload = json{{"oracle", oracle}};
      finish("2.2", "eliminated by 2.2, a2=" + oracle["a2"].get<std::string>() + " a3=" +
                        oracle["a3"].get<std::string>());
      continue;
    }

    payload = json{{"type", to_string(type.x_poly(), 'x')}, {"oracle", oracle}};
    finish("survives", "survives, N_q2=" + oracle["N_q2"].get<std::string>());
    res.survivors.push_back(e);
    res.survivor_types.push_back(type);
  }

  std::string tail = "survivors:";
  if (res.survivors.empty()) tail += " none";
  for (const auto& e : res.survivors) tail += " #" + std::to_string(e.number) + " " + product_string(e.factors);
  res.log.push_back(tail);
  return res;
}

// ---------------------------------------------------------------------------

namespace {

// "m-(1±√2)" style component for a factor of degree <= 2, empty otherwise.
std::string x_component(const IntPoly& f) {
  if (f.degree() == 1) {
    const long r = -f.c[0].get_si();
    return r == 1 ? "m" : "m-" + std::to_string(r - 1);
  }
  if (f.degree() != 2) return "";
  const long b = -f.c[1].get_si(), c = f.c[0].get_si();
  const long disc = b * b - 4 * c, center = b - 2;
  if (center % 2 == 0 && disc % 4 == 0) {
    const std::string mid = center == 0 ? "" : std::to_string(center / 2);
    return "m-(" + mid + "±√" + std::to_string(disc / 4) + ")";
  }
  return "m-(" + std::to_string(center) + "±√" + std::to_string(disc) + ")/2";
}

std::string x_column(const DefectEntry& e) {
  std::string s;
  for (const auto& f : e.factors) {
    const std::string part = x_component(f);
    if (part.empty()) return "";
    s += part + ",";
  }
  return "\"(" + s + "m,...)\"";
}

}  // namespace

std::string defect_tables_csv() {
  std::ostringstream os;
  os << "type,#,deg,coefficients,x,g_min,threshold\n";
  for (const auto& row : printed_defect3_tables()) {
    const auto& e = defect3_entry(row.number);
    const int digits = row.threshold.size() > 2 ? static_cast<int>(row.threshold.size()) - 2 : 3;
    const Threshold th = threshold_21(e, 4);
    std::string deg, coeffs;
    if (e.type_class != 4) {
      deg = std::to_string(e.factors.front().degree());
      coeffs = coeff_string(e.factors.front());
    }
    os << e.type_class << ',' << e.number << ',' << deg << ',' << coeffs << ',' << x_column(e) << ',' << e.g_min
       << ',' << th.render(digits) << '\n';
  }
  return os.str();
}

}  // namespace g4f8
