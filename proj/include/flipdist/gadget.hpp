#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "flipdist/channel.hpp"
#include "flipdist/geometry.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

/// Placement frame of a degree-2 or degree-3 vertex. Slots are the incident
/// channels in counterclockwise order; for degree 2 the counterclockwise
/// sector from slot 0 to slot 1 is the one below pi. A template point (x, y)
/// maps to center + scale * (x * k0 * d0 + y * k1 * d1).
struct GadgetFrame {
    int degree = 3;
    Point2 center;
    std::vector<Point2> directions;  // per slot
    std::vector<std::size_t> order;  // slot -> index into the caller's directions
    Point2 axis_x;                   // k0 * d0
    Point2 axis_y;                   // k1 * d1
    Rational scale;

    Point2 map(const Point2& template_point) const;
    std::size_t slot_of(std::size_t input_index) const;
};

/// Throws Error(SharpVertex) when a gap between consecutive directions is
/// at least pi (degree 3), or when the two directions are opposite or
/// parallel (degree 2).
GadgetFrame gadget_frame(const Point2& center, const std::vector<Point2>& directions, const Rational& scale);

/// End point of a slot: A (lower) or B (upper).
Point2 gadget_end(const GadgetFrame& frame, std::size_t slot, bool upper);

/// Largest squared distance from the center to a template point at scale 1.
Rational gadget_extent2(const GadgetFrame& frame);

/// A vertex gadget in local ids: slot i owns the end edge A_i = 2i (right of
/// the outgoing direction), B_i = 2i + 1; C, D, E, F follow.
struct VertexGadget {
    GadgetFrame frame;
    std::vector<Point2> points;
    std::vector<VertexId> pocket;     // counterclockwise boundary
    std::vector<Triangle> triangles;  // locked state
    std::vector<VertexId> caps;       // per slot, D or F
    FlipMove unlock;
    std::vector<std::vector<FlipMove>> cap_moves;  // per slot, from the unlocked state

    int degree() const { return frame.degree; }
    VertexId a(std::size_t slot) const { return static_cast<VertexId>(2 * slot); }
    VertexId b(std::size_t slot) const { return static_cast<VertexId>(2 * slot + 1); }
    VertexId C() const { return static_cast<VertexId>(2 * frame.degree); }
    VertexId D() const { return C() + 1; }
    VertexId E() const { return C() + 2; }
    VertexId F() const { return C() + 3; }
    Edge lock() const { return Edge(C(), E()); }
    std::string name(VertexId local) const;

    /// The pocket as a standalone region, triangulated in the locked state.
    Triangulation locked_pocket() const;
    std::vector<Edge> locked_edges() const { return triangle_edges(triangles); }
};

/// Channel seen from the gadget: upper chain starts at B_slot, lower at
/// A_slot, and the far end is (upper, lower).
using FarEnd = std::pair<Point2, Point2>;

/// Straight 7-vertex chains from the gadget end of `slot` to `far`.
Channel straight_channel(const VertexGadget& g, std::size_t slot, const FarEnd& far, std::size_t n = 7);

/// Places C, D, E, F and triangulates the pocket. Each point is the
/// interior point of a box around its template position intersected with
/// the mouth constraints of the straight channels toward `far_ends`
/// (per slot; empty means parallel strips 64 template units long).
/// Throws Error(EmptyFeasibleRegion) naming the point and its constraints.
VertexGadget build_vertex_gadget(const GadgetFrame& frame, const std::vector<FarEnd>& far_ends = {});

/// Pocket, locked triangulation, caps and cap moves for points already in
/// local order (A1, B1, A2, B2, [A3, B3], C, D, E, F). Throws
/// Error(EmptyFeasibleRegion) when the pocket or a scripted flip is invalid.
VertexGadget gadget_from_points(int degree, std::vector<Point2> points);

/// Mouth constraints the channel in `slot` must keep while its inner points
/// move, expressed at the left end of the channel seen from the gadget.
std::vector<MouthRequirement> gadget_requirements(const VertexGadget& g, std::size_t slot);

/// The same requirement on the channel traversed the other way.
MouthRequirement opposite_end(const MouthRequirement& r);

/// Edges of the locked pocket that cross the open triangle of the slot's end
/// edge and its cap.
std::vector<Edge> blocking_set(const VertexGadget& g, std::size_t slot);
/// The lock plus the edges removed by the slot's cap moves.
std::vector<Edge> script_blocking_set(const VertexGadget& g, std::size_t slot);

/// Every placement predicate, strictly, against the given channels (per
/// slot, seen from the gadget); plus convexity of CDEF and the blocking-set
/// structure. Returns human-readable failures.
std::vector<std::string> audit_gadget(const VertexGadget& g, const std::vector<Channel>& channels);

/// Moves for one channel in global ids. `ids` maps local gadget ids and
/// `view` is the channel layout seen from the gadget (upper[0] = B_slot).
struct GadgetScripts {
    std::vector<FlipMove> unlock;          // 1
    std::vector<FlipMove> cap;             // 2
    std::vector<FlipMove> transform;       // 24 for n = 7
    std::vector<FlipMove> canonical_half;  // 12 for n = 7
    std::vector<FlipMove> uncap;           // 2
    std::vector<FlipMove> relock;          // 1
};
GadgetScripts gadget_scripts(const VertexGadget& g, std::size_t slot, const std::vector<VertexId>& ids,
                             const ChannelLayout& view);

}  // namespace flipdist
