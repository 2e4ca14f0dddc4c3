#pragma once

#include <cstdint>
#include <map>
#include <algorithm>
#include <queue>
#include <random>
#include <vector>

#include "flipdist/flip_search.hpp"
#include "flipdist/geometry.hpp"
#include "flipdist/triangulation.hpp"

namespace testing_support {

using namespace flipdist;

inline Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }

/// Regular-ish convex n-gon with integer vertices on a parabola.
inline std::vector<Point2> convex_polygon(int n) {
    std::vector<Point2> lower, upper;
    for (int i = 0; i < n; ++i) {
        long x = i;
        if (i % 2 == 0) lower.push_back(pt(x, x * x - (n - 1) * x));
        else upper.push_back(pt(x, -(x * x - (n - 1) * x)));
    }
    std::vector<Point2> out(lower.begin(), lower.end());
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) out.push_back(*it);
    return out;
}

inline DomainPtr polygon_domain(const std::vector<Point2>& pts) {
    std::vector<VertexId> loop;
    for (VertexId i = 0; i < pts.size(); ++i) loop.push_back(i);
    return Domain::region(pts, loop, {});
}

inline Triangulation fan(const DomainPtr& d, VertexId apex) {
    std::vector<Edge> edges(d->boundary_edges());
    for (VertexId v = 0; v < d->size(); ++v) {
        if (v != apex && !d->is_boundary(Edge(apex, v))) edges.emplace_back(apex, v);
    }
    return Triangulation(d, edges);
}

/// Plain BFS over an enumerated flip graph.
inline std::vector<int> bfs(const FlipGraph& g, std::size_t src) {
    std::vector<int> dist(g.size(), -1);
    std::queue<std::size_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (auto v : g.adjacency()[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

/// Triangulation count of a simple polygon by interval dynamic programming
/// over visible diagonals.
inline std::uint64_t count_polygon_triangulations(const std::vector<Point2>& poly) {
    const std::size_t n = poly.size();
    auto d = polygon_domain(poly);
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = 0; j < n; ++j)
            if (i != j) ok[i][j] = d->edge_inside(i, j);
    std::vector<std::vector<std::uint64_t>> c(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i + 1 < n; ++i) c[i][i + 1] = 1;
    for (std::size_t len = 2; len < n; ++len) {
        for (std::size_t i = 0; i + len < n; ++i) {
            std::size_t j = i + len;
            if (!ok[i][j]) continue;
            std::uint64_t total = 0;
            for (std::size_t k = i + 1; k < j; ++k) {
                if (ok[i][k] && ok[k][j] && orientation(poly[i], poly[k], poly[j]) == Orientation::CCW) {
                    total += c[i][k] * c[k][j];
                }
            }
            c[i][j] = total;
        }
    }
    return c[0][n - 1];
}

/// Star-shaped simple polygon from random lattice points sorted by angle
/// around the origin; retries until the polygon is valid.
inline std::vector<Point2> random_star_polygon(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> coord(-20, 20);
    for (;;) {
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i) {
            Point2 p = pt(coord(rng), coord(rng));
            if (p.x == 0 && p.y == 0) {
                --i;
                continue;
            }
            pts.push_back(p);
        }
        auto half = [](const Point2& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
        std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
            if (half(a) != half(b)) return half(a) < half(b);
            return sgn(cross(a, b)) > 0;
        });
        bool distinct_angles = true;
        for (int i = 0; i < n; ++i) {
            const auto& a = pts[i];
            const auto& b = pts[(i + 1) % n];
            if (half(a) == half(b) && cross(a, b) == 0) distinct_angles = false;
            if (orientation(Point2{0, 0}, a, b) != Orientation::CCW) distinct_angles = false;
        }
        if (!distinct_angles) continue;
        try {
            polygon_domain(pts);
        } catch (...) {
            continue;
        }
        return pts;
    }
}

}  // namespace testing_support
