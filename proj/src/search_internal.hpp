#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "g4f8/search.hpp"

namespace g4f8::detail {

std::uint64_t resolve_end(const SearchCase& c, const SearchOptions& opt);
std::vector<std::pair<std::uint64_t, std::uint64_t>> work_ranges(const SearchCase& c, const SearchOptions& opt,
                                                                 std::uint64_t end);
/// Expands scaled hits when normalizing, then sorts by index.
void finish_hits(const SearchCase& c, const SearchOptions& opt, std::vector<SearchHit>& hits);
/// Materializes the hit and applies the family's post-count filters.
std::optional<SearchHit> make_hit(const SearchCase& c, std::uint64_t idx, std::size_t n8);

}  // namespace g4f8::detail
