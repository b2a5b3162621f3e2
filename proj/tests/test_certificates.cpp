#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "g4f8/certificates.hpp"

using namespace g4f8;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("g4f8_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST(Digest, KnownSha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, IndependentOfLineOrder) {
  const std::vector<std::string> a = {R"({"case":"red2","index":5})", R"({"case":"red1a","index":9})",
                                      R"({"case":"red1a","index":10})"};
  std::vector<std::string> b(a.rbegin(), a.rend());
  EXPECT_EQ(certificates_digest(a), certificates_digest(b));
}

TEST(Certificates, LineCarriesTheHitAndItsAnalysis) {
  const auto& c = search_case(CaseId::red1a);
  SearchOptions o;
  o.end = 200'000;
  const auto res = run_search(c, o);
  ASSERT_FALSE(res.hits.empty());
  const auto j = nlohmann::json::parse(certificate_line(res.hits.front()));
  EXPECT_EQ(j["case"], "red1a");
  EXPECT_EQ(j["index"], res.hits.front().index);
  EXPECT_EQ(j["n8"], 27);
  EXPECT_EQ(j["coeffs"].size(), 20u);
  EXPECT_TRUE(j["analysis"].contains("good_curve"));
}

TEST(Checkpoint, RoundTripAndMismatch) {
  Checkpoint cp;
  cp.engine_version = std::string(kEngineVersion);
  cp.case_id = CaseId::red2;
  cp.range_end = 1000;
  cp.next_index = 400;
  cp.hits_written = 3;
  const auto p = scratch("cp.json");
  save_checkpoint(cp, p);
  const auto back = load_checkpoint(p);
  ASSERT_TRUE(back.has_value());
  EXPECT_TRUE(back->same_run(cp));
  EXPECT_EQ(back->next_index, 400u);
  Checkpoint other = cp;
  other.range_end = 2000;
  EXPECT_FALSE(other.same_run(cp));
  EXPECT_FALSE(load_checkpoint(scratch("missing.json")).has_value());
}

TEST(CheckpointedRun, ResumeIsBitIdentical) {
  const auto& c = search_case(CaseId::red2);
  CheckpointedRun straight;
  straight.search.end = 1'000'000;
  straight.block = 1 << 17;
  straight.output = scratch("straight.jsonl");
  const auto s1 = run_checkpointed_search(c, straight);
  ASSERT_TRUE(s1.completed);

  CheckpointedRun interrupted = straight;
  interrupted.output = scratch("resumed.jsonl");
  interrupted.checkpoint = scratch("resumed.ckpt");
  interrupted.stop_after_blocks = 3;
  const auto part = run_checkpointed_search(c, interrupted);
  EXPECT_FALSE(part.completed);
  // A partial tail line left by a crash is discarded on resume.
  {
    std::ofstream f(interrupted.output, std::ios::app);
    f << "{\"case\":\"red2\",\"ind";
  }
  interrupted.stop_after_blocks.reset();
  const auto rest = run_checkpointed_search(c, interrupted);
  EXPECT_TRUE(rest.completed);
  EXPECT_TRUE(rest.resumed);
  EXPECT_EQ(part.evaluated + rest.evaluated, s1.evaluated);
  EXPECT_EQ(rest.digest, s1.digest);
  EXPECT_EQ(read_lines(interrupted.output), read_lines(straight.output));

  CheckpointedRun threads = straight;
  threads.output = scratch("threads.jsonl");
  threads.search.workers = 3;
  EXPECT_EQ(run_checkpointed_search(c, threads).digest, s1.digest);
}

TEST(CheckpointedRun, MismatchedCheckpointIsRejected) {
  const auto& c = search_case(CaseId::red2);
  CheckpointedRun run;
  run.search.end = 300'000;
  run.block = 1 << 16;
  run.output = scratch("mm.jsonl");
  run.checkpoint = scratch("mm.ckpt");
  run.stop_after_blocks = 1;
  run_checkpointed_search(c, run);
  run.search.end = 400'000;
  EXPECT_THROW(run_checkpointed_search(c, run), std::runtime_error);
}

TEST(CheckpointedRun, EmptyRange) {
  const auto& c = search_case(CaseId::red2);
  CheckpointedRun run;
  run.search.start = 77;
  run.search.end = 77;
  run.output = scratch("empty.jsonl");
  const auto s = run_checkpointed_search(c, run);
  EXPECT_TRUE(s.completed);
  EXPECT_EQ(s.hits, 0u);
  EXPECT_EQ(s.digest, sha256_hex(""));
}
