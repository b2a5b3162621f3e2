// Serial reference path: materialize each cubic and evaluate it point by point.

#include "g4f8/search.hpp"
#include "search_internal.hpp"

namespace g4f8 {

using namespace detail;

std::size_t direct_count(const QuadricModel& q, const CubicForm& c, std::size_t target, bool early_abort) {
  const auto& pts = q.points8();
  std::size_t n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (eval(c, pts[i]).is_zero()) ++n;
    if (early_abort && (n > target || n + (pts.size() - i - 1) < target)) return n;
  }
  return n;
}

SearchResult run_search_reference(const SearchCase& c, const SearchOptions& opt, bool early_abort) {
  const std::uint64_t end = resolve_end(c, opt);
  const auto& q = quadric(c.quadric);
  SearchResult res;
  for (auto [lo, hi] : work_ranges(c, opt, end)) {
    res.evaluated += hi - lo;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const CubicForm f = materialize_cubic(c, i);
      const std::size_t n = direct_count(q, f, opt.target, early_abort);
      if (n != opt.target) continue;
      if (auto h = make_hit(c, i, n)) res.hits.push_back(std::move(*h));
    }
  }
  finish_hits(c, opt, res.hits);
  return res;
}

}  // namespace g4f8
