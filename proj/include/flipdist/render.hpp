#pragma once

#include <string>
#include <vector>

#include "flipdist/channel.hpp"
#include "flipdist/geometry.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

struct SvgOptions {
    double width = 800;
    int precision = 3;                           // decimals in the output
    std::vector<Edge> locks;                     // drawn with class "lock"
    std::vector<std::vector<Point2>> overlays;   // convex polygons, class "mouth"
    bool labels = false;                         // vertex ids
};

/// Triangles (class "triangle"), then edges ("edge", boundary edges
/// "boundary", locks "lock"), then vertices, each group in sorted order.
/// Coordinates are rounded for display only.
std::string render_svg(const Triangulation& t, const SvgOptions& options = {});

/// Narrow mouths at both ends of every channel, clipped to the bounding box
/// of the domain padded by a quarter of its size, for SvgOptions::overlays.
std::vector<std::vector<Point2>> mouth_overlays(const Domain& d, const std::vector<Channel>& channels);

}  // namespace flipdist
