#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipdist/geometry.hpp"

namespace flipdist {

using VertexId = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
    bool operator==(const Edge&) const = default;
};

struct FlipMove {
    Edge removed;
    Edge inserted;

    FlipMove reversed() const { return {inserted, removed}; }
    bool operator==(const FlipMove&) const = default;
};

enum class DomainKind { PointSet, Region };

/// A fixed vertex set together with the loops every triangulation must
/// keep. For a point set the outer loop is the convex hull, collinear hull
/// points included. For a region the outer loop is counterclockwise and
/// polygonal holes are clockwise; interior points are vertices that lie on
/// no loop (a one-vertex hole is stored that way).
class Domain {
public:
    static std::shared_ptr<const Domain> point_set(std::vector<Point2> points);
    static std::shared_ptr<const Domain> region(std::vector<Point2> points,
                                                std::vector<VertexId> outer,
                                                std::vector<std::vector<VertexId>> holes);

    DomainKind kind() const { return kind_; }
    const std::vector<Point2>& points() const { return points_; }
    const Point2& point(VertexId v) const { return points_[v]; }
    std::size_t size() const { return points_.size(); }

    const std::vector<VertexId>& outer() const { return outer_; }
    /// Polygonal holes (clockwise) followed by one-vertex holes.
    const std::vector<std::vector<VertexId>>& holes() const { return holes_; }

    /// Edges of the outer loop and the polygonal holes, sorted.
    const std::vector<Edge>& boundary_edges() const { return boundary_; }
    bool is_boundary(Edge e) const;

    /// Triangle and edge counts shared by every triangulation of the domain.
    std::size_t triangle_count() const;
    std::size_t edge_count() const;

    /// Open segment uv stays in the interior of the domain, or uv is a
    /// boundary edge; no other vertex lies on it.
    bool edge_inside(VertexId u, VertexId v) const;

    /// Strictly inside the domain (not on any loop).
    bool strictly_inside(const Point2& p) const;

    Rational area2() const;

    bool operator==(const Domain& other) const;

private:
    Domain() = default;
    void finish();

    DomainKind kind_ = DomainKind::Region;
    std::vector<Point2> points_;
    std::vector<VertexId> outer_;
    std::vector<std::vector<VertexId>> holes_;
    std::vector<Edge> boundary_;
    std::size_t polygonal_holes_ = 0;
};

using DomainPtr = std::shared_ptr<const Domain>;
using Triangle = std::array<VertexId, 3>;

/// An edge set over a shared domain. Triangles are derived on demand.
class Triangulation {
public:
    Triangulation(DomainPtr domain, std::vector<Edge> edges);

    const Domain& domain() const { return *domain_; }
    const DomainPtr& domain_ptr() const { return domain_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool contains(Edge e) const;
    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }

    /// Counterclockwise faces inside the domain. Meaningful for valid input.
    std::vector<Triangle> triangles() const;

    /// Apex of the triangle on the left (side > 0) or right (side < 0) of
    /// the directed edge u -> v, if the edge is present and such a face exists.
    std::optional<VertexId> apex(VertexId u, VertexId v, int side) const;

    friend bool operator==(const Triangulation& a, const Triangulation& b) {
        return a.domain_ == b.domain_ && a.edges_ == b.edges_;
    }

private:
    DomainPtr domain_;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

enum class ViolationKind {
    BadIndex,
    MissingBoundaryEdge,
    EdgeOutsideDomain,
    EdgeThroughVertex,
    CrossingEdges,
    NotMaximal,
    TooManyEdges,
    BadFaceStructure,
};

struct Violation {
    ViolationKind kind;
    std::string message;
    std::vector<Edge> edges;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(ViolationKind k) const;
};

ValidationReport validate(const Triangulation& t);

/// Flip removing e, if e is interior and its quadrilateral is strictly convex.
std::optional<FlipMove> flip_for_edge(const Triangulation& t, Edge e);

std::vector<FlipMove> legal_flips(const Triangulation& t);

/// Throws Error(IllegalFlip) when m is not legal in t.
Triangulation apply_flip(const Triangulation& t, const FlipMove& m);

/// Sorted edge list, each endpoint as a big-endian 32-bit word.
std::string canonical_key(const Triangulation& t);
std::string canonical_key(const std::vector<Edge>& sorted_edges);

/// (edges only in t1, edges only in t2). Throws Error(DomainMismatch).
std::pair<std::vector<Edge>, std::vector<Edge>> edge_difference(const Triangulation& t1,
                                                                const Triangulation& t2);

/// Deterministic ear clipping of a simple counterclockwise polygon given by
/// vertex ids: the first ear in current order is cut each round. Throws
/// Error(InvalidDomain) if no ear exists.
std::vector<Triangle> ear_clip(const std::vector<Point2>& points, std::vector<VertexId> polygon);

/// Sorted, deduplicated edges of a triangle list.
std::vector<Edge> triangle_edges(const std::vector<Triangle>& triangles);

/// Same vertex coordinates and loops.
bool same_domain(const Triangulation& a, const Triangulation& b);

}  // namespace flipdist
