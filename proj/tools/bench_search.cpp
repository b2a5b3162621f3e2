// Throughput of the serial reference scan, the bitsliced kernel on one
// thread, and the kernel on all OpenMP threads, over the same slice.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "g4f8/search.hpp"

using namespace g4f8;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search kernel benchmark"};
  std::string case_name = "red1a";
  std::uint64_t count = 1 << 22, ref_count = 1 << 17, start = 0;
  app.add_option("--case", case_name)->capture_default_str();
  app.add_option("--start", start)->capture_default_str();
  app.add_option("--count", count, "vectors for the kernel runs")->capture_default_str();
  app.add_option("--reference-count", ref_count, "vectors for the serial reference")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto& c = search_case(parse_case_id(case_name));
  count = std::min(count, c.size() - start);
  ref_count = std::min(ref_count, count);

  SearchOptions ref;
  ref.start = start;
  ref.end = start + ref_count;
  SearchResult r0;
  const double t_ref = seconds([&] { r0 = run_search_reference(c, ref); });

  SearchOptions one = ref;
  one.end = start + count;
  one.workers = 1;
  SearchResult r1;
  const double t_one = seconds([&] { r1 = run_search(c, one); });

  SearchOptions all = one;
  all.workers = omp_get_max_threads();
  SearchResult r2;
  const double t_all = seconds([&] { r2 = run_search(c, all); });

  // The reference slice is a prefix of the kernel slice.
  std::size_t prefix = 0;
  while (prefix < r1.hits.size() && r1.hits[prefix].index < start + ref_count) ++prefix;
  const bool agree = prefix == r0.hits.size() && std::equal(r0.hits.begin(), r0.hits.end(), r1.hits.begin()) &&
                     r1.hits == r2.hits;

  const auto rate = [](std::uint64_t n, double t) { return t > 0 ? n / t / 1e6 : 0.0; };
  std::printf("case %s, start %llu\n", case_name.c_str(), static_cast<unsigned long long>(start));
  std::printf("%-22s %12s %10s %12s %8s\n", "engine", "vectors", "seconds", "Mvec/s", "hits");
  std::printf("%-22s %12llu %10.3f %12.2f %8zu\n", "serial reference", static_cast<unsigned long long>(ref_count),
              t_ref, rate(ref_count, t_ref), r0.hits.size());
  std::printf("%-22s %12llu %10.3f %12.2f %8zu\n", "bitsliced, 1 thread", static_cast<unsigned long long>(count),
              t_one, rate(count, t_one), r1.hits.size());
  const std::string label = "bitsliced, " + std::to_string(all.workers) + " threads";
  std::printf("%-22s %12llu %10.3f %12.2f %8zu\n", label.c_str(), static_cast<unsigned long long>(count), t_all,
              rate(count, t_all), r2.hits.size());
  std::printf("hit lists agree: %s\n", agree ? "yes" : "NO");
  return agree ? 0 : 1;
}
