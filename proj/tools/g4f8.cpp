// Command-line driver: verifications, searches, analysis, and the defect tables.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "g4f8/analysis.hpp"
#include "g4f8/certificates.hpp"
#include "g4f8/defect.hpp"
#include "g4f8/quadric.hpp"
#include "g4f8/search.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace g4f8;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "  ok    " : "  FAIL  ") << what << "\n";
  if (!ok) throw Failure(what);
}

int verify_quadrics() {
  const std::map<QuadricId, std::pair<std::size_t, std::size_t>> expect = {
      {QuadricId::split, {81, 4225}}, {QuadricId::cone, {73, 4161}}, {QuadricId::nonsplit, {65, 4225}}};
  for (const auto* q : canonical_quadrics()) {
    const auto [n8, n64] = expect.at(q->id());
    std::cout << to_string(q->id()) << ": " << q->points8().size() << " points over GF(8), " << q->points64().size()
              << " over GF(64)\n";
    check(q->points8().size() == n8, "GF(8) count " + std::to_string(n8));
    check(q->points64().size() == n64, "GF(64) count " + std::to_string(n64));
    std::size_t lines = 0, conics = 0;
    for (const auto& c : q->curves()) (c.kind == StructureCurve::Kind::line ? lines : conics)++;
    std::cout << "  structure: " << lines << " lines, " << conics << " conics\n";
    switch (q->id()) {
      case QuadricId::split: check(lines == 18 && conics == 0, "two rulings of 9 lines"); break;
      case QuadricId::cone: check(lines == 9 && q->vertex().has_value(), "9 lines through the vertex"); break;
      case QuadricId::nonsplit:
        check(lines == 0 && conics == 9 && q->base_points().size() == 2, "9 conics through two base points");
        break;
    }
  }
  return 0;
}

int verify_groups() {
  const auto census = stabilizer_census();
  std::cout << "|PGL4(8)| = " << census.pgl4_order << "\n";
  for (const auto& r : census.rows)
    std::cout << "  " << r.form << ": " << (r.automorphisms ? std::to_string(r.automorphisms) : "-") << " -> "
              << r.orbit_bound << "\n";
  check(census.rows[0].automorphisms == 508032, "split fix group 508032");
  check(census.rows[1].automorphisms == 1806336, "cone fix group 1806336");
  check(census.rows[2].automorphisms == 524160, "nonsplit fix group 524160");
  check(census.nonsplit_binary_product_consistent, "binary-form stabilizer product 260112384");
  check(census.orbit_sum == census.quadric_count && census.quadric_count == 153391689,
        "orbit sum " + std::to_string(census.orbit_sum) + " = (8^10-1)/7");
  const auto b = count_binary_stabilizer();
  std::cout << "binary stabilizer: " << b.total << " matrices, " << b.mod_scalars << " up to scalars\n";
  check(b.total == 126 && b.mod_scalars == 18, "126 / 18");
  check(b.listed_generators_present, "listed representatives are stabilizer elements");
  const auto a = verify_affine_transitivity();
  std::cout << "affine maps: " << a.maps << " on " << a.subsets << " three-element subsets\n";
  check(a.maps == 56 && a.subsets == 56 && a.simply_transitive && a.stabilizer_of_0_1_eta == 1,
        "simply transitive");
  return 0;
}

struct SearchArgs {
  std::string case_name = "all";
  std::uint64_t start = 0;
  std::optional<std::uint64_t> end;
  int workers = 0;
  std::string checkpoint;
  bool normalize = false;
  std::size_t target = 27;
  std::string out_dir = ".";
  std::uint64_t block = std::uint64_t{1} << 22;
};

int search(const SearchArgs& a) {
  std::vector<CaseId> cases;
  if (a.case_name == "all")
    cases.assign(kAllCases.begin(), kAllCases.end());
  else
    cases.push_back(parse_case_id(a.case_name));
  fs::create_directories(a.out_dir);
  int status = 0;
  for (CaseId id : cases) {
    const auto& c = search_case(id);
    CheckpointedRun run;
    run.search.start = a.start;
    run.search.end = a.end;
    run.search.workers = a.workers;
    run.search.target = a.target;
    run.search.normalize_scaling = a.normalize && c.homogeneous();
    run.block = a.block;
    const std::string name(to_string(id));
    run.output = fs::path(a.out_dir) / (name + ".jsonl");
    if (!a.checkpoint.empty()) run.checkpoint = cases.size() > 1 ? a.checkpoint + "." + name : a.checkpoint;
    const auto s = run_checkpointed_search(c, run);
    const double rate = s.seconds > 0 ? static_cast<double>(s.evaluated) / s.seconds : 0;
    std::cout << name << ": " << s.hits << " hits with " << a.target << " points, " << s.evaluated
              << " vectors in " << s.seconds << " s" << (s.resumed ? " (resumed)" : "") << "\n";
    if (s.completed) std::cout << "  digest " << s.digest << "\n";
    std::cout << "  good curves " << s.good_curves << ", unclassified " << s.anomalies;
    if (a.target == 28) std::cout << ", all incidences <= 3: " << s.bad_28;
    std::cout << "\n";

    json manifest{{"engine_version", std::string(kEngineVersion)},
                  {"subcommand", "search"},
                  {"parameters",
                   {{"case", name},
                    {"range_start", a.start},
                    {"range_end", run.search.end.value_or(c.size())},
                    {"workers", a.workers},
                    {"target", a.target},
                    {"normalize_scaling", run.search.normalize_scaling},
                    {"block", a.block}}},
                  {"output", run.output.string()},
                  {"checkpoint", run.checkpoint ? run.checkpoint->string() : ""},
                  {"wall_seconds", s.seconds},
                  {"vectors_evaluated", s.evaluated},
                  {"vectors_per_second", rate},
                  {"hits", s.hits},
                  {"good_curves", s.good_curves},
                  {"unclassified", s.anomalies},
                  {"completed", s.completed},
                  {"digest", s.digest}};
    write_manifest(fs::path(a.out_dir) / (name + ".manifest.json"), manifest);
    if (s.good_curves || s.anomalies || s.bad_28) status = 1;
  }
  return status;
}

CubicForm parse_cubic(const std::string& text) {
  std::vector<unsigned> codes;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ','))
    if (!tok.empty()) codes.push_back(static_cast<unsigned>(std::stoul(tok)));
  return CubicForm::from_codes(codes);
}

int analyze_cmd(const std::string& quad, const std::string& cubic, const std::string& case_name,
                std::optional<std::uint64_t> index) {
  QuadricId qid;
  CubicForm c;
  if (!case_name.empty()) {
    if (!index) throw CLI::ValidationError("--index", "required with --case");
    const auto& sc = search_case(parse_case_id(case_name));
    qid = sc.quadric;
    c = materialize_cubic(sc, *index);
  } else {
    if (cubic.empty()) throw CLI::ValidationError("--cubic", "give --cubic or --case/--index");
    qid = parse_quadric_id(quad);
    c = parse_cubic(cubic);
  }
  const auto r = analyze(quadric(qid), c);
  json out{{"coeffs", c.codes()}, {"n8", r.n8}, {"n64", r.n64}, {"analysis", report_json(r)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int classify_cmd(const std::vector<std::string>& inputs) {
  std::map<std::string, std::size_t> labels;
  std::map<std::size_t, std::size_t> n64s;
  std::size_t total = 0, good = 0, anomalous = 0, mismatched = 0;
  for (const auto& path : inputs) {
    for (const auto& line : read_lines(path)) {
      const auto j = json::parse(line);
      const auto& sc = search_case(parse_case_id(j.at("case").get<std::string>()));
      const auto c = CubicForm::from_codes(j.at("coeffs").get<std::vector<unsigned>>());
      const auto r = analyze(quadric(sc.quadric), c);
      ++total;
      if (r.n8 != j.at("n8").get<std::size_t>() || r.n64 != j.at("n64").get<std::size_t>()) ++mismatched;
      ++n64s[r.n64];
      if (r.n8 != 27) continue;
      good += r.good_curve;
      anomalous += r.anomalous;
      for (const auto& l : r.bad_labels) ++labels[l];
    }
  }
  std::cout << total << " certificates\n";
  for (const auto& [n, k] : n64s) std::cout << "  n64 = " << n << ": " << k << "\n";
  for (const auto& [l, k] : labels) std::cout << "  " << l << ": " << k << "\n";
  std::cout << "good curves: " << good << ", unclassified: " << anomalous << ", stored counts disagreeing: "
            << mismatched << "\n";
  return good || anomalous || mismatched ? 1 : 0;
}

int defect_cmd(std::int64_t q, int g, int k, const std::string& audit) {
  const auto r = defect_pipeline(q, g, k);
  std::cout << "q=" << q << " g=" << g << " k=" << k << " m=" << r.m << "\n";
  for (const auto& l : r.log) std::cout << l << "\n";
  for (const auto& t : r.survivor_types)
    std::cout << "  type x-polynomial " << to_string(t.x_poly(), 'x') << ": N_q=" << points_from_type(t, 1)
              << " N_q2=" << points_from_type(t, 2) << "\n";
  if (!audit.empty()) {
    std::ofstream f(audit);
    if (!f) throw std::runtime_error("cannot write " + audit);
    f << r.audit_json() << "\n";
  }
  return 0;
}

int tables_cmd(const std::string& out, bool factors) {
  if (factors) {
    for (int k = 0; k <= 3; ++k) {
      std::cout << "defect " << k << ":";
      for (const auto& p : enumerate_defect_factors(k)) std::cout << "  [" << coeff_string(p) << "]";
      std::cout << "\n";
    }
  }
  const std::string csv = defect_tables_csv();
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << csv;
  }
  int mismatches = 0;
  for (const auto& row : printed_defect3_tables())
    if (!threshold_matches(threshold_21(defect3_entry(row.number)), row.threshold)) ++mismatches;
  if (mismatches) std::cerr << mismatches << " thresholds disagree with the reference table\n";
  return mismatches ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-4 curves over GF(8) on quadric surfaces: search and verification"};
  app.require_subcommand(1);

  app.add_subcommand("verify-quadrics", "point counts and structure curves of the three quadrics");
  app.add_subcommand("verify-groups", "fix-group orders, binary stabilizer, orbit census, affine transitivity");

  SearchArgs sa;
  std::optional<std::uint64_t> range_end;
  auto* s = app.add_subcommand("search", "exhaustive scan of a reduced cubic family");
  s->add_option("--case", sa.case_name, "red1a | red1b | red2 | red3_p1 | red3_p2 | all")->capture_default_str();
  s->add_option("--range-start", sa.start, "first base-8 index");
  s->add_option("--range-end", range_end, "one past the last index (default: family size)");
  s->add_option("--workers", sa.workers, "OpenMP threads (0: default)");
  s->add_option("--checkpoint", sa.checkpoint, "checkpoint file for resumable runs");
  s->add_flag("--normalize-scaling", sa.normalize, "scan one representative per scalar multiple (homogeneous families)");
  s->add_option("--target", sa.target, "GF(8) point count to report")->capture_default_str();
  s->add_option("--out", sa.out_dir, "directory for certificates and manifests")->capture_default_str();
  s->add_option("--block", sa.block, "checkpoint block size")->check(CLI::PositiveNumber);

  std::string quad = "split", cubic, case_name;
  std::optional<std::uint64_t> index;
  auto* an = app.add_subcommand("analyze", "report on one quadric/cubic intersection");
  an->add_option("--quadric", quad, "split | cone | nonsplit")->capture_default_str();
  an->add_option("--cubic", cubic, "20 comma-separated GF(8) codes in monomial order");
  an->add_option("--case", case_name, "take the cubic from a family ...");
  an->add_option("--index", index, "... at this index");

  std::vector<std::string> inputs;
  auto* cl = app.add_subcommand("classify", "re-analyze certificate files and tally the taxonomy");
  cl->add_option("inputs", inputs, "certificate files")->required()->check(CLI::ExistingFile);

  std::int64_t q = 8;
  int g = 4, k = 3;
  std::string audit;
  auto* df = app.add_subcommand("defect", "elimination pipeline for defect-k zeta types");
  df->add_option("--q", q)->capture_default_str();
  df->add_option("--g", g)->capture_default_str();
  df->add_option("--k", k)->capture_default_str()->check(CLI::Range(1, 3));
  df->add_option("--audit", audit, "write the JSON audit here");

  std::string table_out;
  bool factors = false;
  auto* tb = app.add_subcommand("tables", "defect-3 tables as CSV");
  tb->add_option("--out", table_out, "CSV path (default: stdout)");
  tb->add_flag("--factors", factors, "also list the enumerated irreducible factors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("verify-quadrics")) return verify_quadrics();
    if (app.got_subcommand("verify-groups")) return verify_groups();
    if (app.got_subcommand(s)) {
      sa.end = range_end;
      return search(sa);
    }
    if (app.got_subcommand(an)) return analyze_cmd(quad, cubic, case_name, index);
    if (app.got_subcommand(cl)) return classify_cmd(inputs);
    if (app.got_subcommand(df)) return defect_cmd(q, g, k, audit);
    if (app.got_subcommand(tb)) return tables_cmd(table_out, factors);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Failure& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
