#include "flipdist/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

int osign(const Point2& p, const Point2& q, const Point2& r) {
    return static_cast<int>(orientation(p, q, r));
}

std::vector<Point2> loop_points(const std::vector<Point2>& pts, const std::vector<VertexId>& loop) {
    std::vector<Point2> out;
    out.reserve(loop.size());
    for (auto v : loop) out.push_back(pts[v]);
    return out;
}

// Counterclockwise angular order of directions, starting at the +x axis.
bool angle_less(const Point2& a, const Point2& b) {
    auto half = [](const Point2& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

// Rotate a cycle so its smallest vertex comes first.
std::vector<VertexId> rotate_min(std::vector<VertexId> cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    return cyc;
}

}  // namespace

// ---------------------------------------------------------------- Domain

std::shared_ptr<const Domain> Domain::point_set(std::vector<Point2> points) {
    std::map<Point2, VertexId> index;
    for (VertexId i = 0; i < points.size(); ++i) {
        if (!index.emplace(points[i], i).second) {
            throw Error(ErrorCode::InvalidDomain, "duplicate point " + std::to_string(i));
        }
    }
    if (points.size() < 3) throw Error(ErrorCode::InvalidDomain, "point set needs three points");
    auto hull = convex_hull(points);
    if (hull.size() < 3) throw Error(ErrorCode::InvalidDomain, "point set is collinear");

    std::shared_ptr<Domain> d(new Domain());
    d->kind_ = DomainKind::PointSet;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2& a = hull[i];
        const Point2& b = hull[(i + 1) % hull.size()];
        std::vector<std::pair<Rational, VertexId>> on_edge;
        Point2 dir = b - a;
        for (VertexId v = 0; v < points.size(); ++v) {
            const Point2& p = points[v];
            if (p == b) continue;
            if (on_segment(a, b, p)) on_edge.emplace_back(dot(p - a, dir), v);
        }
        std::sort(on_edge.begin(), on_edge.end());
        for (auto& [t, v] : on_edge) d->outer_.push_back(v);
    }
    d->points_ = std::move(points);
    d->finish();
    return d;
}

std::shared_ptr<const Domain> Domain::region(std::vector<Point2> points, std::vector<VertexId> outer,
                                             std::vector<std::vector<VertexId>> holes) {
    std::shared_ptr<Domain> d(new Domain());
    d->kind_ = DomainKind::Region;
    const std::size_t n = points.size();
    auto check_index = [&](VertexId v) {
        if (v >= n) throw Error(ErrorCode::InvalidDomain, "vertex index out of range");
    };
    {
        std::set<Point2> seen(points.begin(), points.end());
        if (seen.size() != n) throw Error(ErrorCode::InvalidDomain, "duplicate points");
    }
    if (outer.size() < 3) throw Error(ErrorCode::InvalidDomain, "outer boundary needs 3 vertices");
    for (auto v : outer) check_index(v);
    auto outer_pts = loop_points(points, outer);
    auto outer_area = signed_area2(outer_pts);
    if (outer_area == 0) throw Error(ErrorCode::InvalidDomain, "degenerate outer boundary");
    if (outer_area < 0) std::reverse(outer.begin(), outer.end());

    std::vector<std::vector<VertexId>> polygonal, single;
    for (auto& h : holes) {
        for (auto v : h) check_index(v);
        if (h.size() == 1) {
            single.push_back(h);
            continue;
        }
        if (h.size() < 3) throw Error(ErrorCode::InvalidDomain, "hole needs 1 or >= 3 vertices");
        auto a = signed_area2(loop_points(points, h));
        if (a == 0) throw Error(ErrorCode::InvalidDomain, "degenerate hole");
        if (a > 0) std::reverse(h.begin(), h.end());
        polygonal.push_back(h);
    }

    // every vertex on at most one loop
    std::vector<int> use(n, 0);
    auto mark = [&](const std::vector<VertexId>& loop) {
        for (auto v : loop) {
            if (use[v]++) throw Error(ErrorCode::InvalidDomain, "vertex used twice by loops");
        }
    };
    mark(outer);
    for (auto& h : polygonal) mark(h);
    for (auto& h : single) mark(h);

    d->points_ = std::move(points);
    d->outer_ = std::move(outer);
    d->polygonal_holes_ = polygonal.size();
    d->holes_ = std::move(polygonal);
    for (auto& s : single) d->holes_.push_back(std::move(s));
    d->finish();

    // loop segments must not meet except at shared endpoints of consecutive edges
    struct Seg {
        VertexId a, b;
    };
    std::vector<Seg> segs;
    auto add_loop = [&](const std::vector<VertexId>& loop) {
        for (std::size_t i = 0; i < loop.size(); ++i) segs.push_back({loop[i], loop[(i + 1) % loop.size()]});
    };
    add_loop(d->outer_);
    for (std::size_t h = 0; h < d->polygonal_holes_; ++h) add_loop(d->holes_[h]);
    const auto& P = d->points_;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Seg& s = segs[i];
            const Seg& t = segs[j];
            int shared = (s.a == t.a) + (s.a == t.b) + (s.b == t.a) + (s.b == t.b);
            if (shared == 0) {
                if (segments_intersect(P[s.a], P[s.b], P[t.a], P[t.b])) {
                    throw Error(ErrorCode::InvalidDomain, "boundary segments intersect");
                }
            } else if (shared == 1) {
                VertexId common = (s.a == t.a || s.a == t.b) ? s.a : s.b;
                VertexId so = s.a == common ? s.b : s.a;
                VertexId to = t.a == common ? t.b : t.a;
                if (on_segment(P[common], P[so], P[to]) || on_segment(P[common], P[to], P[so])) {
                    throw Error(ErrorCode::InvalidDomain, "boundary segments overlap");
                }
            } else {
                throw Error(ErrorCode::InvalidDomain, "repeated boundary segment");
            }
        }
    }
    // holes and free points strictly inside the outer loop and outside other holes
    std::vector<std::vector<Point2>> hole_polys;
    for (std::size_t h = 0; h < d->polygonal_holes_; ++h) hole_polys.push_back(loop_points(P, d->holes_[h]));
    auto outer_poly = loop_points(P, d->outer_);
    for (VertexId v = 0; v < n; ++v) {
        bool on_outer = std::find(d->outer_.begin(), d->outer_.end(), v) != d->outer_.end();
        if (on_outer) continue;
        if (locate_in_polygon(outer_poly, P[v]) != PolygonSide::Inside) {
            throw Error(ErrorCode::InvalidDomain, "vertex " + std::to_string(v) + " outside outer boundary");
        }
        for (std::size_t h = 0; h < hole_polys.size(); ++h) {
            bool own = std::find(d->holes_[h].begin(), d->holes_[h].end(), v) != d->holes_[h].end();
            if (!own && locate_in_polygon(hole_polys[h], P[v]) != PolygonSide::Outside) {
                throw Error(ErrorCode::InvalidDomain, "vertex " + std::to_string(v) + " inside a hole");
            }
        }
    }
    return d;
}

void Domain::finish() {
    boundary_.clear();
    auto add = [&](const std::vector<VertexId>& loop) {
        if (loop.size() < 2) return;
        for (std::size_t i = 0; i < loop.size(); ++i) boundary_.emplace_back(loop[i], loop[(i + 1) % loop.size()]);
    };
    add(outer_);
    for (std::size_t h = 0; h < polygonal_holes_; ++h) add(holes_[h]);
    std::sort(boundary_.begin(), boundary_.end());
}

bool Domain::is_boundary(Edge e) const { return std::binary_search(boundary_.begin(), boundary_.end(), e); }

std::size_t Domain::triangle_count() const {
    // Euler: T = 2n - B + 2h - 2 with B boundary edges and h polygonal holes.
    return 2 * points_.size() + 2 * polygonal_holes_ - boundary_.size() - 2;
}

std::size_t Domain::edge_count() const { return (3 * triangle_count() + boundary_.size()) / 2; }

bool Domain::strictly_inside(const Point2& p) const {
    auto outer_poly = loop_points(points_, outer_);
    if (locate_in_polygon(outer_poly, p) != PolygonSide::Inside) return false;
    for (std::size_t h = 0; h < polygonal_holes_; ++h) {
        if (locate_in_polygon(loop_points(points_, holes_[h]), p) != PolygonSide::Outside) return false;
    }
    for (std::size_t h = polygonal_holes_; h < holes_.size(); ++h) {
        if (points_[holes_[h][0]] == p) return false;
    }
    return true;
}

bool Domain::edge_inside(VertexId u, VertexId v) const {
    if (u == v || u >= points_.size() || v >= points_.size()) return false;
    const Point2& a = points_[u];
    const Point2& b = points_[v];
    for (VertexId w = 0; w < points_.size(); ++w) {
        if (w != u && w != v && on_segment(a, b, points_[w])) return false;
    }
    if (kind_ == DomainKind::PointSet) return true;
    if (is_boundary(Edge(u, v))) return true;
    for (const auto& e : boundary_) {
        if (segments_properly_cross(a, b, points_[e.u], points_[e.v])) return false;
    }
    return strictly_inside(midpoint(a, b));
}

Rational Domain::area2() const {
    Rational total = signed_area2(loop_points(points_, outer_));
    for (std::size_t h = 0; h < polygonal_holes_; ++h) total += signed_area2(loop_points(points_, holes_[h]));
    return total;
}

bool Domain::operator==(const Domain& o) const {
    return kind_ == o.kind_ && points_ == o.points_ && outer_ == o.outer_ && holes_ == o.holes_;
}

// ---------------------------------------------------------- Triangulation

Triangulation::Triangulation(DomainPtr domain, std::vector<Edge> edges)
    : domain_(std::move(domain)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adjacency_.resize(domain_->size());
    for (const auto& e : edges_) {
        if (e.v >= domain_->size() || e.u == e.v) continue;
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

bool Triangulation::contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::optional<VertexId> Triangulation::apex(VertexId u, VertexId v, int side) const {
    if (u >= adjacency_.size() || v >= adjacency_.size()) return std::nullopt;
    const auto& P = domain_->points();
    std::vector<VertexId> common;
    std::set_intersection(adjacency_[u].begin(), adjacency_[u].end(), adjacency_[v].begin(),
                          adjacency_[v].end(), std::back_inserter(common));
    std::optional<VertexId> best;
    for (auto w : common) {
        if (osign(P[u], P[v], P[w]) != side) continue;
        // nearest to uv in angle around u on the requested side
        if (!best || osign(P[u], P[w], P[*best]) == side) best = w;
    }
    return best;
}

namespace {

struct FaceWalk {
    std::vector<std::vector<VertexId>> faces;
};

// Trace faces of the straight-line graph using the angular rotation system.
// Each face lies to the left of its directed edges.
FaceWalk trace_faces(const Triangulation& t) {
    const auto& P = t.domain().points();
    const std::size_t n = P.size();
    std::vector<std::vector<VertexId>> rot(n);
    for (VertexId v = 0; v < n; ++v) {
        rot[v] = t.neighbors(v);
        std::sort(rot[v].begin(), rot[v].end(),
                  [&](VertexId a, VertexId b) { return angle_less(P[a] - P[v], P[b] - P[v]); });
    }
    auto pos_in = [&](VertexId v, VertexId w) {
        auto it = std::find(rot[v].begin(), rot[v].end(), w);
        return static_cast<std::size_t>(it - rot[v].begin());
    };
    std::map<std::pair<VertexId, VertexId>, bool> used;
    FaceWalk walk;
    for (VertexId u = 0; u < n; ++u) {
        for (auto v : rot[u]) {
            if (used[{u, v}]) continue;
            std::vector<VertexId> face;
            VertexId a = u, b = v;
            while (!used[{a, b}]) {
                used[{a, b}] = true;
                face.push_back(a);
                const auto& r = rot[b];
                std::size_t i = pos_in(b, a);
                VertexId c = r[(i + r.size() - 1) % r.size()];
                a = b;
                b = c;
                if (face.size() > 4 * n + 8) break;
            }
            walk.faces.push_back(std::move(face));
        }
    }
    return walk;
}

std::set<std::vector<VertexId>> loop_faces(const Domain& d) {
    // faces the domain leaves empty, traced with their interior on the left
    std::set<std::vector<VertexId>> out;
    auto add_reversed = [&](const std::vector<VertexId>& loop) {
        if (loop.size() < 3) return;
        std::vector<VertexId> r(loop.rbegin(), loop.rend());
        out.insert(rotate_min(r));
    };
    add_reversed(d.outer());
    for (const auto& h : d.holes()) add_reversed(h);
    return out;
}

bool fast_check(const Triangulation& t) {
    const Domain& d = t.domain();
    const auto& P = d.points();
    for (VertexId v = 0; v < d.size(); ++v) {
        if (t.neighbors(v).empty()) return false;
    }
    auto walk = trace_faces(t);
    auto empty_faces = loop_faces(d);
    std::size_t triangles = 0, loops_seen = 0;
    Rational area = 0;
    for (auto& f : walk.faces) {
        auto key = rotate_min(f);
        if (empty_faces.count(key)) {
            ++loops_seen;
            continue;
        }
        if (f.size() != 3) return false;
        if (osign(P[f[0]], P[f[1]], P[f[2]]) <= 0) return false;
        ++triangles;
        area += (P[f[1]].x - P[f[0]].x) * (P[f[2]].y - P[f[0]].y) -
                (P[f[1]].y - P[f[0]].y) * (P[f[2]].x - P[f[0]].x);
    }
    return loops_seen == empty_faces.size() && triangles == d.triangle_count() && area == d.area2();
}

}  // namespace

std::vector<Triangle> Triangulation::triangles() const {
    auto walk = trace_faces(*this);
    auto empty_faces = loop_faces(*domain_);
    const auto& P = domain_->points();
    std::vector<Triangle> out;
    for (auto& f : walk.faces) {
        if (f.size() != 3) continue;
        if (osign(P[f[0]], P[f[1]], P[f[2]]) <= 0) continue;
        if (empty_faces.count(rotate_min(f))) continue;
        auto r = rotate_min(f);
        out.push_back({r[0], r[1], r[2]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ValidationReport::has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == k; });
}

ValidationReport validate(const Triangulation& t) {
    ValidationReport report;
    const Domain& d = t.domain();
    const auto& P = d.points();
    for (const auto& e : t.edges()) {
        if (e.v >= d.size() || e.u == e.v) {
            report.violations.push_back({ViolationKind::BadIndex, "edge with invalid endpoint", {e}});
        }
    }
    if (!report.ok()) return report;
    for (const auto& b : d.boundary_edges()) {
        if (!t.contains(b)) {
            report.violations.push_back({ViolationKind::MissingBoundaryEdge, "boundary edge missing", {b}});
        }
    }
    if (report.ok() && t.edges().size() == d.edge_count() && fast_check(t)) return report;

    // detailed diagnosis
    std::vector<Edge> inner;
    for (const auto& e : t.edges()) {
        if (d.is_boundary(e)) continue;
        bool through = false;
        for (VertexId w = 0; w < d.size(); ++w) {
            if (w != e.u && w != e.v && on_segment(P[e.u], P[e.v], P[w])) {
                report.violations.push_back({ViolationKind::EdgeThroughVertex,
                                             "edge passes through vertex " + std::to_string(w), {e}});
                through = true;
                break;
            }
        }
        if (!through && !d.edge_inside(e.u, e.v)) {
            report.violations.push_back({ViolationKind::EdgeOutsideDomain, "edge leaves the domain", {e}});
        }
        inner.push_back(e);
    }
    const auto& all = t.edges();
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Edge& a = all[i];
            const Edge& b = all[j];
            if (segments_properly_cross(P[a.u], P[a.v], P[b.u], P[b.v])) {
                report.violations.push_back({ViolationKind::CrossingEdges, "edges cross", {a, b}});
            }
        }
    }
    if (t.edges().size() < d.edge_count()) {
        report.violations.push_back({ViolationKind::NotMaximal,
                                     "expected " + std::to_string(d.edge_count()) + " edges, found " +
                                         std::to_string(t.edges().size()),
                                     {}});
    } else if (t.edges().size() > d.edge_count()) {
        report.violations.push_back({ViolationKind::TooManyEdges,
                                     "expected " + std::to_string(d.edge_count()) + " edges, found " +
                                         std::to_string(t.edges().size()),
                                     {}});
    }
    if (report.ok()) {
        report.violations.push_back({ViolationKind::BadFaceStructure, "faces do not tile the domain", {}});
    }
    return report;
}

std::optional<FlipMove> flip_for_edge(const Triangulation& t, Edge e) {
    if (!t.contains(e) || t.domain().is_boundary(e)) return std::nullopt;
    auto left = t.apex(e.u, e.v, 1);
    auto right = t.apex(e.u, e.v, -1);
    if (!left || !right) return std::nullopt;
    const auto& P = t.domain().points();
    if (!is_strictly_convex_quad(P[e.u], P[*right], P[e.v], P[*left])) return std::nullopt;
    return FlipMove{e, Edge(*left, *right)};
}

std::vector<FlipMove> legal_flips(const Triangulation& t) {
    std::vector<FlipMove> out;
    for (const auto& e : t.edges()) {
        if (auto m = flip_for_edge(t, e)) out.push_back(*m);
    }
    return out;
}

Triangulation apply_flip(const Triangulation& t, const FlipMove& m) {
    auto legal = flip_for_edge(t, m.removed);
    if (!legal || legal->inserted != m.inserted) {
        throw Error(ErrorCode::IllegalFlip, "flip " + std::to_string(m.removed.u) + "-" +
                                                std::to_string(m.removed.v) + " -> " +
                                                std::to_string(m.inserted.u) + "-" + std::to_string(m.inserted.v));
    }
    std::vector<Edge> edges;
    edges.reserve(t.edges().size());
    for (const auto& e : t.edges()) {
        if (e != m.removed) edges.push_back(e);
    }
    edges.push_back(m.inserted);
    return Triangulation(t.domain_ptr(), std::move(edges));
}

std::string canonical_key(const std::vector<Edge>& sorted_edges) {
    std::string key;
    key.reserve(sorted_edges.size() * 8);
    auto put = [&](VertexId x) {
        for (int s = 24; s >= 0; s -= 8) key.push_back(static_cast<char>((x >> s) & 0xff));
    };
    for (const auto& e : sorted_edges) {
        put(e.u);
        put(e.v);
    }
    return key;
}

std::string canonical_key(const Triangulation& t) { return canonical_key(t.edges()); }

std::vector<Triangle> ear_clip(const std::vector<Point2>& P, std::vector<VertexId> poly) {
    std::vector<Triangle> out;
    while (poly.size() > 3) {
        const std::size_t m = poly.size();
        bool cut = false;
        for (std::size_t i = 0; i < m && !cut; ++i) {
            VertexId a = poly[(i + m - 1) % m], b = poly[i], c = poly[(i + 1) % m];
            if (osign(P[a], P[b], P[c]) <= 0) continue;
            bool blocked = false;
            for (auto q : poly) {
                if (q == a || q == b || q == c) continue;
                if (osign(P[a], P[b], P[q]) >= 0 && osign(P[b], P[c], P[q]) >= 0 && osign(P[c], P[a], P[q]) >= 0) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            out.push_back({a, b, c});
            poly.erase(poly.begin() + static_cast<long>(i));
            cut = true;
        }
        if (!cut) throw Error(ErrorCode::InvalidDomain, "ear clipping found no ear");
    }
    if (poly.size() == 3) {
        if (osign(P[poly[0]], P[poly[1]], P[poly[2]]) <= 0) {
            throw Error(ErrorCode::InvalidDomain, "ear clipping left a degenerate triangle");
        }
        out.push_back({poly[0], poly[1], poly[2]});
    }
    return out;
}

std::vector<Edge> triangle_edges(const std::vector<Triangle>& triangles) {
    std::vector<Edge> out;
    for (const auto& t : triangles) {
        out.emplace_back(t[0], t[1]);
        out.emplace_back(t[1], t[2]);
        out.emplace_back(t[0], t[2]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool same_domain(const Triangulation& a, const Triangulation& b) {
    return a.domain_ptr() == b.domain_ptr() || a.domain() == b.domain();
}

std::pair<std::vector<Edge>, std::vector<Edge>> edge_difference(const Triangulation& t1, const Triangulation& t2) {
    if (!same_domain(t1, t2)) throw Error(ErrorCode::DomainMismatch, "triangulations over different domains");
    std::vector<Edge> only1, only2;
    std::set_difference(t1.edges().begin(), t1.edges().end(), t2.edges().begin(), t2.edges().end(),
                        std::back_inserter(only1));
    std::set_difference(t2.edges().begin(), t2.edges().end(), t1.edges().begin(), t1.edges().end(),
                        std::back_inserter(only2));
    return {only1, only2};
}

}  // namespace flipdist
