#pragma once

// Search certificates: one JSON line per hit with its analysis, block-wise
// checkpointed runs that resume bit-identically, and run manifests carrying
// a SHA-256 digest of the sorted certificate file.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "g4f8/analysis.hpp"
#include "g4f8/search.hpp"

namespace g4f8 {

inline constexpr std::string_view kEngineVersion = "g4f8-1.0.0";

nlohmann::ordered_json report_json(const IntersectionReport& r);

/// Compact JSON line {case, index, digits, coeffs, n8, n64, analysis}.
std::string certificate_line(const SearchHit& h, const IntersectionReport& r);
std::string certificate_line(const SearchHit& h);

std::string sha256_hex(std::string_view data);

/// Digest of the lines sorted by (case, index), each newline-terminated.
std::string certificates_digest(const std::vector<std::string>& lines);

/// Sorts by (case, index), drops duplicates, writes newline-terminated lines.
void emit_certificates(std::vector<std::string> lines, const std::filesystem::path& path);

std::vector<std::string> read_lines(const std::filesystem::path& path);

struct Checkpoint {
  std::string engine_version;
  CaseId case_id = CaseId::red1a;
  std::uint64_t range_start = 0, range_end = 0;
  std::uint64_t next_index = 0;
  std::size_t target = 27;
  bool normalize = false;
  std::uint64_t hits_written = 0;

  nlohmann::ordered_json to_json() const;
  static Checkpoint from_json(const nlohmann::ordered_json& j);
  bool same_run(const Checkpoint& o) const;
};

void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path);
std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path);

struct CheckpointedRun {
  SearchOptions search;
  std::filesystem::path output;
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t block = std::uint64_t{1} << 22;  // boundaries at multiples of block
  std::optional<std::size_t> stop_after_blocks;  // simulate an interruption
};

struct RunSummary {
  std::uint64_t evaluated = 0;  // in this invocation
  std::size_t hits = 0;
  bool completed = false;
  bool resumed = false;
  std::string digest;  // set once completed
  double seconds = 0;
  std::size_t good_curves = 0, anomalies = 0;
  std::size_t bad_28 = 0;  // 28-point hits with every incidence <= 3
};

/// Runs [start, end) block by block, appending certificates to output and
/// recording progress in the checkpoint. A matching checkpoint resumes; a
/// mismatching one is an error. On completion the file is sorted and hashed.
RunSummary run_checkpointed_search(const SearchCase& c, const CheckpointedRun& run);

/// Manifest with engine version, parameters, stats and digest.
void write_manifest(const std::filesystem::path& path, const nlohmann::ordered_json& manifest);

}  // namespace g4f8
