#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "flipdist/graph.hpp"

namespace flipdist {

struct CoverResult {
    std::size_t size = 0;
    std::vector<std::size_t> witness;  // sorted
};

/// Minimum vertex cover by branch and bound on a maximum-degree vertex
/// (take it, or take all its neighbors), with degree-1 reductions.
/// Throws Error(CapExceeded) when g.n > cap.
CoverResult exact_vc(const Graph& g, std::size_t cap = 40);

/// First edge with no endpoint in s, if any.
std::optional<std::pair<std::size_t, std::size_t>> uncovered_edge(const Graph& g, const std::vector<std::size_t>& s);
inline bool is_cover(const Graph& g, const std::vector<std::size_t>& s) { return !uncovered_edge(g, s).has_value(); }

}  // namespace flipdist
