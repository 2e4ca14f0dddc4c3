#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

struct FlipScript {
    std::string start_key;
    std::vector<FlipMove> moves;

    std::size_t size() const { return moves.size(); }
    /// Script from the end state back to the start.
    FlipScript reversed(const std::string& end_key) const;
};

enum class SearchStatus { Found, ExceedsBudget };

struct SearchResult {
    SearchStatus status = SearchStatus::ExceedsBudget;
    std::size_t distance = 0;  // meaningful when status == Found
    FlipScript witness;
    std::size_t nodes_expanded = 0;
    std::size_t frontier_peak = 0;
};

struct SearchOptions {
    std::size_t budget = 64;
    /// Stop with ExceedsBudget once this many nodes are stored (0 = unlimited).
    std::size_t node_limit = 0;
};

/// |edges(t1) \ edges(t2)|. Throws Error(DomainMismatch).
std::size_t lower_bound(const Triangulation& t1, const Triangulation& t2);

/// Bidirectional A* with lower_bound as heuristic in both directions.
SearchResult exact_distance(const Triangulation& t1, const Triangulation& t2, const SearchOptions& opts = {});

/// Greedy script: flips that create a target edge first, otherwise
/// flip-based insertion of the smallest missing target edge. Throws
/// Error(CapExceeded) once move_cap moves are used.
FlipScript greedy_upper_bound(const Triangulation& t1, const Triangulation& t2, std::size_t move_cap = 100000);

/// Applies every move in order. Throws Error(IllegalScript) naming the
/// first illegal move index.
Triangulation replay(const Triangulation& start, const std::vector<FlipMove>& moves);

/// Index of the first illegal move, or nullopt; on success `end` holds the result.
std::optional<std::size_t> try_replay(const Triangulation& start, const std::vector<FlipMove>& moves,
                                      std::optional<Triangulation>* end = nullptr);

/// Some triangulation of the domain: a maximal non-crossing set of admissible
/// edges, boundary edges first, then lexicographic. Meant for small domains.
Triangulation any_triangulation(const DomainPtr& domain);

/// Complete flip graph reachable from a seed triangulation.
class FlipGraph {
public:
    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adjacency_; }
    const std::vector<Edge>& edges_of(std::size_t i) const { return nodes_[i]; }
    Triangulation triangulation(std::size_t i) const { return Triangulation(domain_, nodes_[i]); }
    std::string key(std::size_t i) const { return canonical_key(nodes_[i]); }
    std::optional<std::size_t> index_of(const Triangulation& t) const;
    std::size_t edge_count() const;
    /// Breadth-first distances from node i; -1 marks unreachable nodes.
    std::vector<long> distances_from(std::size_t i) const;

private:
    friend FlipGraph enumerate_flip_graph(const Triangulation&, std::size_t);
    DomainPtr domain_;
    std::vector<std::vector<Edge>> nodes_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
};

/// Throws Error(CapExceeded) when more than `cap` triangulations are reachable.
FlipGraph enumerate_flip_graph(const Triangulation& seed, std::size_t cap = 1000000);
FlipGraph enumerate_flip_graph(const DomainPtr& domain, std::size_t cap = 1000000);

}  // namespace flipdist
