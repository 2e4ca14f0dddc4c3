#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flipdist/flip_search.hpp"
#include "flipdist/reduction.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

/// The shared JSON instance: `points` ([x, y] as "p/q" strings), optional
/// `outer` and `holes` (a region when `outer` is present, otherwise a point
/// set), `edges`, and optionally `target_edges`. Reduction instances add
/// `graph`, `gadget_metadata` and `accounting`; point-set conversions add
/// `pointset`. An optional `locks` edge list marks edges to highlight.
struct InstanceFile {
    DomainPtr domain;
    std::vector<Edge> edges;
    std::optional<std::vector<Edge>> target;
    std::vector<Edge> locks;
    std::optional<ReductionInstance> reduction;  // over `domain`
    std::optional<PointSetInstance> pointset;    // fill_edges are not stored

    Triangulation start() const { return Triangulation(domain, edges); }
    Triangulation goal() const;  // throws Error(InvalidInstance) without target_edges
};

/// Throws Error(ParseError) on malformed input.
InstanceFile read_instance(std::string_view text);

std::string write_instance(const Domain& domain, const std::vector<Edge>& edges,
                           const std::optional<std::vector<Edge>>& target = std::nullopt,
                           const std::vector<Edge>& locks = {});
std::string write_reduction(const ReductionInstance& inst);
std::string write_pointset(const ReductionInstance& inst, const PointSetInstance& ps);

/// {"start_key": hex, "moves": [[[u, v], [x, y]], ...]}, removed edge first.
std::string write_script(const FlipScript& s);
FlipScript read_script(std::string_view text);

/// Standalone instance with target_edges: "channel", "capped" and
/// "double-capped" (left- to right-inclined figure channel, caps at (-80, 0)
/// and (80, 0)) or "gadget3" (locked to unlocked degree-3 pocket).
std::string figure_instance(const std::string& name);

std::string to_hex(const std::string& bytes);

}  // namespace flipdist
