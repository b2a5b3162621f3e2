#include "g4f8/certificates.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

namespace g4f8 {

using json = nlohmann::ordered_json;

json report_json(const IntersectionReport& r) {
  const auto& q = quadric(r.quadric);
  json lines = json::array();
  for (int i : r.contained.lines) lines.push_back(q.curves()[i].label);
  json conics = json::array();
  for (const auto& p : r.contained.conics) {
    json a = json::array();
    for (const auto& x : p) a.push_back(x.code());
    conics.push_back(a);
  }
  std::size_t max_inc = 0;
  for (auto n : r.profile) max_inc = std::max(max_inc, n);
  json out{{"quadric", std::string(to_string(r.quadric))},
           {"lines", lines},
           {"lines_per_ruling", r.contained.lines_per_ruling},
           {"conics", conics},
           {"max_incidence", max_inc},
           {"good_curve", r.good_curve},
           {"labels", r.bad_labels},
           {"anomalous", r.anomalous}};
  return out;
}

std::string certificate_line(const SearchHit& h, const IntersectionReport& r) {
  std::string digits;
  for (auto d : h.digits) digits += static_cast<char>('0' + d);
  json j{{"case", std::string(to_string(h.case_id))},
         {"index", h.index},
         {"digits", digits},
         {"coeffs", h.coeffs.codes()},
         {"n8", r.n8},
         {"n64", r.n64},
         {"analysis", report_json(r)}};
  return j.dump();
}

std::string certificate_line(const SearchHit& h) {
  return certificate_line(h, analyze(quadric(search_case(h.case_id).quadric), h.coeffs));
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

namespace {

// (case, index) from the fixed key order of certificate_line.
std::pair<int, std::uint64_t> line_key(const std::string& line) {
  const auto c0 = line.find("\"case\":\"");
  const auto i0 = line.find("\"index\":");
  if (c0 == std::string::npos || i0 == std::string::npos) throw std::runtime_error("malformed certificate: " + line);
  const auto c1 = line.find('"', c0 + 8);
  const CaseId id = parse_case_id(std::string_view(line).substr(c0 + 8, c1 - c0 - 8));
  return {static_cast<int>(id), std::stoull(line.substr(i0 + 8))};
}

void sort_lines(std::vector<std::string>& lines) {
  std::vector<std::pair<std::pair<int, std::uint64_t>, std::string>> keyed;
  keyed.reserve(lines.size());
  for (auto& l : lines) keyed.emplace_back(line_key(l), std::move(l));
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  lines.clear();
  for (auto& [k, l] : keyed) lines.push_back(std::move(l));
}

std::string joined(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << data;
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string certificates_digest(const std::vector<std::string>& lines) {
  auto sorted = lines;
  sort_lines(sorted);
  return sha256_hex(joined(sorted));
}

void emit_certificates(std::vector<std::string> lines, const std::filesystem::path& path) {
  sort_lines(lines);
  write_file(path, joined(lines));
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> out;
  for (std::string l; std::getline(f, l);)
    if (!l.empty()) out.push_back(std::move(l));
  return out;
}

// ---------------------------------------------------------------------------

json Checkpoint::to_json() const {
  return json{{"engine_version", engine_version},
              {"case", std::string(to_string(case_id))},
              {"range_start", range_start},
              {"range_end", range_end},
              {"next_index", next_index},
              {"target", target},
              {"normalize", normalize},
              {"hits_written", hits_written}};
}

Checkpoint Checkpoint::from_json(const json& j) {
  Checkpoint c;
  c.engine_version = j.at("engine_version").get<std::string>();
  c.case_id = parse_case_id(j.at("case").get<std::string>());
  c.range_start = j.at("range_start").get<std::uint64_t>();
  c.range_end = j.at("range_end").get<std::uint64_t>();
  c.next_index = j.at("next_index").get<std::uint64_t>();
  c.target = j.at("target").get<std::size_t>();
  c.normalize = j.at("normalize").get<bool>();
  c.hits_written = j.at("hits_written").get<std::uint64_t>();
  return c;
}

bool Checkpoint::same_run(const Checkpoint& o) const {
  return engine_version == o.engine_version && case_id == o.case_id && range_start == o.range_start &&
         range_end == o.range_end && target == o.target && normalize == o.normalize;
}

void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path) {
  write_file(path, c.to_json().dump(2) + "\n");
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream f(path);
  try {
    return Checkpoint::from_json(json::parse(f));
  } catch (const std::exception& e) {
    throw std::runtime_error("unreadable checkpoint " + path.string() + ": " + e.what());
  }
}

RunSummary run_checkpointed_search(const SearchCase& c, const CheckpointedRun& run) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t end = run.search.end.value_or(c.size());
  if (run.search.start > end || end > c.size()) throw std::out_of_range("search range outside the family");
  if (run.block == 0) throw std::invalid_argument("block size must be positive");

  Checkpoint cp;
  cp.engine_version = std::string(kEngineVersion);
  cp.case_id = c.id;
  cp.range_start = run.search.start;
  cp.range_end = end;
  cp.next_index = run.search.start;
  cp.target = run.search.target;
  cp.normalize = run.search.normalize_scaling;

  RunSummary sum;
  std::vector<std::string> kept;
  if (run.checkpoint) {
    if (auto prev = load_checkpoint(*run.checkpoint)) {
      if (!prev->same_run(cp))
        throw std::runtime_error("checkpoint " + run.checkpoint->string() + " belongs to a different run");
      kept = read_lines(run.output);
      if (kept.size() < prev->hits_written)
        throw std::runtime_error("certificate file shorter than its checkpoint: " + run.output.string());
      kept.resize(prev->hits_written);  // drop lines written after the last checkpoint
      cp = *prev;
      sum.resumed = true;
    }
  }
  write_file(run.output, joined(kept));

  const auto tally = [&](const IntersectionReport& r) {
    sum.good_curves += r.good_curve;
    sum.anomalies += r.anomalous;
    if (r.n8 == 28 && std::all_of(r.profile.begin(), r.profile.end(), [](std::size_t n) { return n <= 3; }))
      ++sum.bad_28;
  };
  for (const auto& l : kept) {
    const auto j = json::parse(l);
    sum.good_curves += j["analysis"]["good_curve"].get<bool>();
    sum.anomalies += j["analysis"]["anomalous"].get<bool>();
    if (j["n8"].get<int>() == 28 && j["analysis"]["max_incidence"].get<int>() <= 3) ++sum.bad_28;
  }

  const auto& q = quadric(c.quadric);
  std::size_t blocks = 0;
  while (cp.next_index < end) {
    if (run.stop_after_blocks && blocks == *run.stop_after_blocks) break;
    const std::uint64_t a = cp.next_index;
    const std::uint64_t b = std::min(end, (a / run.block + 1) * run.block);
    SearchOptions o = run.search;
    o.start = a;
    o.end = b;
    const auto res = run_search(c, o);
    sum.evaluated += res.evaluated;
    std::string chunk;
    for (const auto& h : res.hits) {
      const auto r = analyze(q, h.coeffs);
      tally(r);
      chunk += certificate_line(h, r) + "\n";
    }
    {
      std::ofstream f(run.output, std::ios::app | std::ios::binary);
      if (!f) throw std::runtime_error("cannot append to " + run.output.string());
      f << chunk;
      if (!f) throw std::runtime_error("append failed: " + run.output.string());
    }
    cp.hits_written += res.hits.size();
    cp.next_index = b;
    if (run.checkpoint) save_checkpoint(cp, *run.checkpoint);
    ++blocks;
  }

  sum.completed = cp.next_index >= end;
  if (sum.completed) {
    auto lines = read_lines(run.output);
    sort_lines(lines);
    sum.hits = lines.size();
    const std::string data = joined(lines);
    write_file(run.output, data);
    sum.digest = sha256_hex(data);
    if (run.checkpoint) {
      cp.hits_written = lines.size();
      save_checkpoint(cp, *run.checkpoint);
    }
  } else {
    sum.hits = cp.hits_written;
  }
  sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sum;
}

void write_manifest(const std::filesystem::path& path, const json& manifest) { write_file(path, manifest.dump(2) + "\n"); }

}  // namespace g4f8
