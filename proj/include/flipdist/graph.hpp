#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flipdist/geometry.hpp"

namespace flipdist {

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::vector<std::size_t>> adjacency() const;
    std::size_t degree(std::size_t v) const;
};

/// Parsed graph text: `v <id> [<x> <y>]`, `e <id> <id>`, `outer <id> ...`,
/// `#` comments. Vertices are numbered by first appearance.
struct GraphFile {
    Graph graph;
    std::vector<long> labels;
    std::vector<std::optional<Point2>> coords;
    std::vector<std::size_t> outer;

    bool has_all_coords() const;
};

/// Throws Error(ParseError) on malformed lines, loops, or repeated edges.
GraphFile parse_graph(std::string_view text);

/// Straight-line drawing with the outer face listed counterclockwise.
struct PlanarGraphDrawing {
    Graph graph;
    std::vector<long> labels;
    std::vector<Point2> points;
    std::vector<std::size_t> outer;

    /// Faces with the interior on the left: bounded faces counterclockwise,
    /// the outer face clockwise.
    std::vector<std::vector<std::size_t>> faces() const;
};

std::string format_graph(const PlanarGraphDrawing& d);

bool is_connected(const Graph& g, const std::vector<bool>& removed = {});
bool is_3_connected(const Graph& g);

/// Tutte embedding with the outer face pinned to rational points of the
/// unit circle, solved exactly. Without `outer`, the shortest induced
/// non-separating cycle is used. Errors: Not3Connected, InvalidOuterFace,
/// NotPlanar.
PlanarGraphDrawing convex_drawing(const Graph& g, std::vector<std::size_t> outer = {});

/// Accepts given coordinates after checking that the drawing is plane and
/// connected; the outer face is recovered from the geometry.
PlanarGraphDrawing drawing_from_coordinates(const Graph& g, std::vector<Point2> points,
                                            std::vector<long> labels = {});

/// The file's coordinates when every vertex has them, otherwise
/// convex_drawing with the file's outer face; labels carried over.
PlanarGraphDrawing graph_drawing(const GraphFile& file);

/// Problems with the drawing: crossings, vertices on edges, non-convex
/// bounded faces (when `convex_faces`).
std::vector<std::string> audit_drawing(const PlanarGraphDrawing& d, bool convex_faces);

/// Degree-3 vertex with an incident angle of at least pi.
bool is_sharp(const PlanarGraphDrawing& d, std::size_t v);

struct SharpElimination {
    PlanarGraphDrawing drawing;
    std::size_t t = 0;
};

/// Replaces every sharp vertex v (neighbors x, y bounding the reflex angle,
/// z the third) by the path v1 v2 v3 with v1 = v + (x - v)/q joined to x,
/// v3 = v + (y - v)/q joined to y and z, and v2 = v - (z - v)/q; q doubles
/// from 8 until the result is plane and free of sharp vertices. Throws
/// Error(InternalSharpVertex) for a sharp vertex off the outer face.
SharpElimination eliminate_sharp(const PlanarGraphDrawing& d);

}  // namespace flipdist
