#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flipdist/channel.hpp"
#include "flipdist/flip_search.hpp"
#include "flipdist/gadget.hpp"
#include "flipdist/graph.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

/// One channel per graph edge; the left end sits at `from`.
struct ChannelRecord {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t from_slot = 0;
    std::size_t to_slot = 0;
    ChannelLayout layout;  // global ids
};

/// One gadget per graph vertex. `ids` maps local gadget ids to global ones.
struct GadgetRecord {
    std::size_t vertex = 0;
    int degree = 0;
    std::vector<VertexId> ids;
    std::vector<std::size_t> channels;  // per slot

    VertexId a(std::size_t slot) const { return ids[2 * slot]; }
    VertexId b(std::size_t slot) const { return ids[2 * slot + 1]; }
    VertexId C() const { return ids[2 * static_cast<std::size_t>(degree)]; }
    VertexId D() const { return ids[2 * static_cast<std::size_t>(degree) + 1]; }
    VertexId E() const { return ids[2 * static_cast<std::size_t>(degree) + 2]; }
    VertexId F() const { return ids[2 * static_cast<std::size_t>(degree) + 3]; }
    Edge lock() const { return Edge(C(), E()); }
    /// D for slots 0 and 1 of a degree-3 gadget and slot 0 of a degree-2 one, F otherwise.
    VertexId cap(std::size_t slot) const { return slot == 2 || (degree == 2 && slot == 1) ? F() : D(); }
};

struct Accounting {
    long k_input = 0;
    long t_outer = 0;
    long k_prime = 0;
    long edges = 0;
    long threshold = 0;  // 2 k' + 28 |E'|
};

struct ReductionInstance {
    PlanarGraphDrawing drawing;
    DomainPtr region;
    std::vector<Edge> t1;  // all channels left-inclined
    std::vector<Edge> t2;  // all channels right-inclined
    std::vector<ChannelRecord> channels;
    std::vector<GadgetRecord> gadgets;
    Accounting accounting;

    Triangulation T1() const { return Triangulation(region, t1); }
    Triangulation T2() const { return Triangulation(region, t2); }
    /// Gadget rebuilt from the stored points.
    VertexGadget local_gadget(std::size_t v) const;
    /// The channel of slot `slot` of gadget `v`, seen from that gadget.
    ChannelLayout view(std::size_t v, std::size_t slot) const;
    Channel channel_points(const ChannelLayout& l) const;
};

/// Channels and gadgets for a drawing with degrees 2 and 3 and no sharp
/// vertex. Errors from gadget placement are rethrown with the vertex or
/// edge label.
ReductionInstance build_instance(const PlanarGraphDrawing& d, long k_input, long t_outer);

/// Drawing from the file (given coordinates, otherwise convex), sharp
/// vertices eliminated, then build_instance.
ReductionInstance reduce_graph(const GraphFile& file, long k_input);

/// Placement and blocking-set audit of every gadget against its channels.
std::vector<std::string> audit_instance(const ReductionInstance& inst);

/// Unlock the cover, transform each channel capped at a covering endpoint,
/// relock. Length 2|cover| + 28|E|. Throws Error(NotACover).
FlipScript cover_to_script(const ReductionInstance& inst, const std::vector<std::size_t>& cover);

struct AccountingReport {
    std::vector<std::size_t> unlocked;       // L: graph vertices whose lock was removed
    std::vector<std::size_t> never_capped;   // C: channel indices
    std::vector<std::size_t> implied_cover;  // L plus the `from` end of each channel in C
    std::size_t flips = 0;
    std::size_t lower_bound = 0;  // 2|L| + 36|C| + 28|E - C|
    std::size_t implied_cover_size = 0;
    long threshold = 0;
    bool within_threshold = false;
};

/// Replays s from T1. Throws Error(IllegalScript) with the first illegal
/// move index, or when the end state is not T2.
AccountingReport audit_script(const ReductionInstance& inst, const FlipScript& s);

/// Point-set version: region ids kept, sliver points appended.
struct PointSetInstance {
    DomainPtr domain;
    std::vector<Edge> t1;
    std::vector<Edge> t2;
    std::size_t multiplicity = 0;
    std::size_t region_points = 0;               // ids below this are the region's
    std::vector<Edge> protected_edges;           // region boundary edges
    std::vector<std::vector<VertexId>> slivers;  // per protected edge, nearest first
    std::vector<Edge> fill_edges;                // shared by t1 and t2 outside the region

    Triangulation T1() const { return Triangulation(domain, t1); }
    Triangulation T2() const { return Triangulation(domain, t2); }
};

/// Each boundary edge gets m points stacked toward the outside; holes and
/// hull pockets are ear-clipped the same way in both triangulations.
PointSetInstance region_to_pointset(const ReductionInstance& inst, std::size_t m);

/// Largest coordinate bit size in the instance.
std::size_t max_coordinate_bits(const Domain& d);

}  // namespace flipdist
