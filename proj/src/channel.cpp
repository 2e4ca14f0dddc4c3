#include "flipdist/channel.hpp"

#include <algorithm>
#include <string>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }

// Chain vertex reference: upper or lower chain, 0-based index.
struct Slot {
    bool upper;
    std::size_t i;
};

struct MouthLine {
    Slot p1, p2;  // the mouth half-plane is left_of(p1, p2)
};

struct EndLines {
    MouthLine narrow_upper, narrow_lower, wide_upper, wide_lower;
};

EndLines end_lines(std::size_t n, ChannelEnd end) {
    const std::size_t a = n - 1, b = n - 2;
    MouthLine far_upper{{true, a}, {true, b}};
    MouthLine far_lower{{false, b}, {false, a}};
    MouthLine near_upper{{true, 1}, {true, 0}};
    MouthLine near_lower{{false, 0}, {false, 1}};
    if (end == ChannelEnd::Left) return {far_upper, far_lower, near_upper, near_lower};
    return {near_upper, near_lower, far_upper, far_lower};
}

const Point2& at(const Channel& c, Slot s) { return s.upper ? c.upper[s.i] : c.lower[s.i]; }

HalfPlane beyond_end(const Channel& c, ChannelEnd end) {
    const std::size_t m = c.n() - 1;
    if (end == ChannelEnd::Left) return HalfPlane::left_of(c.lower[0], c.upper[0]);
    return HalfPlane::left_of(c.upper[m], c.lower[m]);
}

HalfPlane line_plane(const Channel& c, const MouthLine& l) { return HalfPlane::left_of(at(c, l.p1), at(c, l.p2)); }

std::vector<HalfPlane> box_planes(const Point2& center, const Point2& a, const Point2& b) {
    std::vector<Point2> corners{center - a - b, center + a - b, center + a + b, center - a + b};
    if (cross(a, b) < 0) std::reverse(corners.begin(), corners.end());
    std::vector<HalfPlane> out;
    for (std::size_t i = 0; i < 4; ++i) out.push_back(HalfPlane::left_of(corners[i], corners[(i + 1) % 4]));
    return out;
}

std::string slot_name(bool upper, std::size_t i) { return std::string(upper ? "U" : "L") + std::to_string(i + 1); }

}  // namespace

std::vector<Point2> Channel::polygon() const {
    std::vector<Point2> out(lower.begin(), lower.end());
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) out.push_back(*it);
    return out;
}

ChannelLayout ChannelLayout::rotated() const {
    ChannelLayout r;
    r.upper.assign(lower.rbegin(), lower.rend());
    r.lower.assign(upper.rbegin(), upper.rend());
    return r;
}

Channel build_channel(const Point2& upper_left, const Point2& lower_left, const Point2& upper_right,
                      const Point2& lower_right, const Rational& sag, std::size_t n,
                      const std::vector<MouthRequirement>& requirements) {
    if (n < 3) throw Error(ErrorCode::InvalidDomain, "channel needs at least 3 vertices per chain");
    if (!is_strictly_convex_quad(lower_left, lower_right, upper_right, upper_left) ||
        orientation(lower_left, lower_right, upper_right) != Orientation::CCW) {
        throw Error(ErrorCode::InvalidDomain, "channel ends do not span a convex quadrilateral");
    }
    if (sag <= 0) throw Error(ErrorCode::InfeasibleSag, "sag must be positive for strictly reflex chains");

    Channel c;
    c.upper.assign(n, Point2{});
    c.lower.assign(n, Point2{});
    c.upper[0] = upper_left;
    c.lower[0] = lower_left;
    c.upper[n - 1] = upper_right;
    c.lower[n - 1] = lower_right;

    const Rational steps(static_cast<long>(n - 1));
    const Rational half_sq = steps * steps / 4;
    auto lines_left = end_lines(n, ChannelEnd::Left);
    auto lines_right = end_lines(n, ChannelEnd::Right);

    // requirement -> (line, wanted sign of orientation(p1, p2, p))
    struct LineReq {
        MouthLine line;
        int sign;
        Point2 p;
    };
    std::vector<LineReq> reqs;
    for (const auto& r : requirements) {
        const auto& L = r.end == ChannelEnd::Left ? lines_left : lines_right;
        switch (r.kind) {
            case MouthRequirement::Kind::InsideNarrow:
                reqs.push_back({L.narrow_upper, 1, r.p});
                reqs.push_back({L.narrow_lower, 1, r.p});
                break;
            case MouthRequirement::Kind::OutsideWideUpper:
                reqs.push_back({L.wide_upper, -1, r.p});
                break;
            case MouthRequirement::Kind::OutsideWideLower:
                reqs.push_back({L.wide_lower, -1, r.p});
                break;
        }
    }

    for (int chain = 0; chain < 2; ++chain) {
        const bool upper = chain == 0;
        auto& X = upper ? c.upper : c.lower;
        const auto& Y = upper ? c.lower : c.upper;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            Rational t(static_cast<long>(k));
            t /= steps;
            Point2 straight = X[0] + t * (X[n - 1] - X[0]);
            Point2 opposite = Y[0] + t * (Y[n - 1] - Y[0]);
            Point2 across = opposite - straight;
            Point2 along = Rational(1) / steps * (X[n - 1] - X[0]);
            Rational weight = sag * Rational(static_cast<long>(k * (n - 1 - k))) / half_sq;
            Point2 target = straight + weight * across;

            auto hs = box_planes(target, Rational(1, 4) * along, sag / 8 * across);
            // keep the chain completable and the previous vertex reflex
            if (upper) {
                hs.push_back(HalfPlane::left_of(X[n - 1], X[k - 1]));
                if (k >= 2) hs.push_back(HalfPlane::left_of(X[k - 2], X[k - 1]));
            } else {
                hs.push_back(HalfPlane::left_of(X[k - 1], X[n - 1]));
                if (k >= 2) hs.push_back(HalfPlane::left_of(X[k - 1], X[k - 2]));
            }
            for (const auto& r : reqs) {
                const Slot s1 = r.line.p1, s2 = r.line.p2;
                bool moving1 = s1.upper == upper && s1.i == k;
                bool moving2 = s2.upper == upper && s2.i == k;
                if (!moving1 && !moving2) continue;
                if (moving2) {
                    const Point2& q = at(c, s1);
                    hs.push_back(r.sign > 0 ? HalfPlane::left_of(r.p, q) : HalfPlane::left_of(q, r.p));
                } else {
                    const Point2& q = at(c, s2);
                    hs.push_back(r.sign > 0 ? HalfPlane::left_of(q, r.p) : HalfPlane::left_of(r.p, q));
                }
            }
            auto region = halfplane_intersection(hs);
            if (region.empty()) {
                throw Error(ErrorCode::InfeasibleSag, "no room for " + slot_name(upper, k));
            }
            X[k] = simple_interior_point(region);
        }
    }
    auto report = check_channel(c);
    if (!report.ok()) throw Error(ErrorCode::InfeasibleSag, "built channel fails: " + report.problems.front());
    return c;
}

Channel figure_channel() {
    Channel c;
    const long xs[7] = {-60, -40, -20, 0, 20, 40, 60};
    const long ys[7] = {40, 36, 34, 33, 34, 36, 40};
    for (int i = 0; i < 7; ++i) {
        c.upper.push_back(pt(xs[i], ys[i]));
        c.lower.push_back(pt(xs[i], -ys[i]));
    }
    return c;
}

Channel parabolic_channel(std::size_t n) {
    if (n < 3) throw Error(ErrorCode::InvalidDomain, "channel needs at least 3 vertices per chain");
    Channel c;
    for (std::size_t i = 0; i < n; ++i) {
        Rational x = Rational(-60) + Rational(120 * static_cast<long>(i), static_cast<long>(n - 1));
        Rational y = 33 + 7 * (x / 60) * (x / 60);
        c.upper.push_back({x, y});
        c.lower.push_back({x, -y});
    }
    return c;
}

ChannelReport check_channel(const Channel& c) {
    ChannelReport r;
    const std::size_t n = c.n();
    if (n < 3 || c.lower.size() != n) {
        r.problems.push_back("chains must have equal length >= 3");
        return r;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (orientation(c.upper[i - 1], c.upper[i], c.upper[i + 1]) != Orientation::CCW) {
            r.problems.push_back(slot_name(true, i) + " is not reflex");
        }
        if (orientation(c.lower[i - 1], c.lower[i], c.lower[i + 1]) != Orientation::CW) {
            r.problems.push_back(slot_name(false, i) + " is not reflex");
        }
    }
    ChannelDomain d;
    try {
        d = channel_domain(c);
    } catch (const Error& e) {
        r.problems.push_back(std::string("polygon is not simple: ") + e.what());
        return r;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!d.domain->edge_inside(d.layout.upper[i], d.layout.lower[j])) {
                r.problems.push_back(slot_name(true, i) + " does not see " + slot_name(false, j));
            }
        }
    }
    return r;
}

Mouths mouths(const Channel& c, ChannelEnd end) {
    auto L = end_lines(c.n(), end);
    HalfPlane beyond = beyond_end(c, end);
    Mouths m;
    m.narrow = halfplane_intersection({beyond, line_plane(c, L.narrow_upper), line_plane(c, L.narrow_lower)});
    m.wide = halfplane_intersection({beyond, line_plane(c, L.wide_upper), line_plane(c, L.wide_lower)});
    return m;
}

bool inside_narrow(const Channel& c, ChannelEnd end, const Point2& p) {
    auto L = end_lines(c.n(), end);
    return beyond_end(c, end).contains(p) && line_plane(c, L.narrow_upper).contains(p) &&
           line_plane(c, L.narrow_lower).contains(p);
}

bool inside_wide(const Channel& c, ChannelEnd end, const Point2& p) {
    auto L = end_lines(c.n(), end);
    return beyond_end(c, end).contains(p) && line_plane(c, L.wide_upper).contains(p) &&
           line_plane(c, L.wide_lower).contains(p);
}

ChannelDomain channel_domain(const Channel& c, const std::optional<Point2>& left_cap,
                             const std::optional<Point2>& right_cap, const std::vector<Point2>& extra_left) {
    if (left_cap && !extra_left.empty()) {
        throw Error(ErrorCode::InvalidDomain, "extra points and a left cap cannot share the left end");
    }
    const std::size_t n = c.n();
    ChannelDomain d;
    std::vector<Point2> pts(c.lower.begin(), c.lower.end());
    pts.insert(pts.end(), c.upper.begin(), c.upper.end());
    for (VertexId i = 0; i < n; ++i) {
        d.layout.lower.push_back(i);
        d.layout.upper.push_back(static_cast<VertexId>(n + i));
    }
    std::vector<VertexId> outer(d.layout.lower);
    if (left_cap) {
        d.left_cap = static_cast<VertexId>(pts.size());
        pts.push_back(*left_cap);
    }
    if (right_cap) {
        d.right_cap = static_cast<VertexId>(pts.size());
        pts.push_back(*right_cap);
        outer.push_back(*d.right_cap);
    }
    for (std::size_t i = n; i-- > 0;) outer.push_back(d.layout.upper[i]);
    for (const auto& p : extra_left) {
        outer.push_back(static_cast<VertexId>(pts.size()));
        pts.push_back(p);
    }
    if (left_cap) outer.push_back(*d.left_cap);
    d.domain = Domain::region(std::move(pts), std::move(outer), {});
    return d;
}

std::vector<Edge> chain_edges(const ChannelLayout& l) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < l.n(); ++i) {
        out.emplace_back(l.upper[i], l.upper[i + 1]);
        out.emplace_back(l.lower[i], l.lower[i + 1]);
    }
    return out;
}

std::vector<Edge> left_inclined_diagonals(const ChannelLayout& l) {
    const std::size_t n = l.n();
    std::vector<Edge> out;
    for (std::size_t j = 1; j < n; ++j) out.emplace_back(l.upper[0], l.lower[j]);
    for (std::size_t i = 1; i + 1 < n; ++i) out.emplace_back(l.lower[n - 1], l.upper[i]);
    return out;
}

std::vector<Edge> right_inclined_diagonals(const ChannelLayout& l) {
    const std::size_t n = l.n();
    std::vector<Edge> out;
    for (std::size_t j = 1; j < n; ++j) out.emplace_back(l.lower[0], l.upper[j]);
    for (std::size_t i = 1; i + 1 < n; ++i) out.emplace_back(l.upper[n - 1], l.lower[i]);
    return out;
}

namespace {

// Boundary, both end edges, and a triangulation of the extra-point pocket.
std::vector<Edge> frame_edges(const ChannelDomain& d) {
    const auto& l = d.layout;
    const std::size_t n = l.n();
    std::vector<Edge> edges(d.domain->boundary_edges());
    edges.emplace_back(l.upper[0], l.lower[0]);
    edges.emplace_back(l.upper[n - 1], l.lower[n - 1]);
    const auto& outer = d.domain->outer();
    auto it = std::find(outer.begin(), outer.end(), l.upper[0]);
    std::vector<VertexId> pocket;
    for (; it != outer.end(); ++it) pocket.push_back(*it);
    if (pocket.size() > 2 && !d.left_cap) {
        pocket.push_back(l.lower[0]);
        auto tri = ear_clip(d.domain->points(), pocket);
        auto more = triangle_edges(tri);
        edges.insert(edges.end(), more.begin(), more.end());
    }
    return edges;
}

void check_caps(const ChannelDomain& d) {
    // recover the channel from the domain to test the mouths
    Channel c;
    for (auto v : d.layout.upper) c.upper.push_back(d.domain->point(v));
    for (auto v : d.layout.lower) c.lower.push_back(d.domain->point(v));
    if (d.left_cap && !inside_narrow(c, ChannelEnd::Left, d.domain->point(*d.left_cap))) {
        throw Error(ErrorCode::CapNotVisible, "left cap is outside the narrow mouth");
    }
    if (d.right_cap && !inside_narrow(c, ChannelEnd::Right, d.domain->point(*d.right_cap))) {
        throw Error(ErrorCode::CapNotVisible, "right cap is outside the narrow mouth");
    }
}

}  // namespace

Triangulation left_inclined(const ChannelDomain& d) {
    check_caps(d);
    auto edges = frame_edges(d);
    auto diag = left_inclined_diagonals(d.layout);
    edges.insert(edges.end(), diag.begin(), diag.end());
    return Triangulation(d.domain, std::move(edges));
}

Triangulation right_inclined(const ChannelDomain& d) {
    check_caps(d);
    auto edges = frame_edges(d);
    auto diag = right_inclined_diagonals(d.layout);
    edges.insert(edges.end(), diag.begin(), diag.end());
    return Triangulation(d.domain, std::move(edges));
}

Triangulation canonical_capped(const ChannelDomain& d) {
    if (!d.left_cap) throw Error(ErrorCode::CapNotVisible, "canonical triangulation needs a left cap");
    check_caps(d);
    const auto& l = d.layout;
    std::vector<Edge> edges(d.domain->boundary_edges());
    edges.emplace_back(l.upper[l.n() - 1], l.lower[l.n() - 1]);
    for (std::size_t i = 0; i < l.n(); ++i) {
        edges.emplace_back(*d.left_cap, l.upper[i]);
        edges.emplace_back(*d.left_cap, l.lower[i]);
    }
    return Triangulation(d.domain, std::move(edges));
}

std::vector<FlipMove> uncapped_transform(const ChannelLayout& l) {
    const std::size_t n = l.n();
    std::string path(n - 1, 'j');
    path.append(n - 1, 'i');
    std::vector<FlipMove> moves;
    for (;;) {
        auto p = path.find("ji");
        if (p == std::string::npos) break;
        std::size_t a = static_cast<std::size_t>(std::count(path.begin(), path.begin() + static_cast<long>(p), 'i'));
        std::size_t b = p - a;
        moves.push_back({Edge(l.upper[a], l.lower[b + 1]), Edge(l.upper[a + 1], l.lower[b])});
        std::swap(path[p], path[p + 1]);
    }
    return moves;
}

std::vector<FlipMove> left_to_canonical(const ChannelLayout& l, VertexId cap) {
    const std::size_t n = l.n();
    std::vector<FlipMove> moves;
    for (std::size_t j = 0; j < n; ++j) {
        Edge ins = j + 1 < n ? Edge(cap, l.lower[j + 1]) : Edge(cap, l.upper[1]);
        moves.push_back({Edge(l.upper[0], l.lower[j]), ins});
    }
    for (std::size_t i = 1; i + 1 < n; ++i) moves.push_back({Edge(l.upper[i], l.lower[n - 1]), Edge(cap, l.upper[i + 1])});
    return moves;
}

std::vector<FlipMove> right_to_canonical(const ChannelLayout& l, VertexId cap) {
    const std::size_t n = l.n();
    std::vector<FlipMove> moves;
    for (std::size_t j = 0; j < n; ++j) {
        Edge ins = j + 1 < n ? Edge(cap, l.upper[j + 1]) : Edge(cap, l.lower[1]);
        moves.push_back({Edge(l.lower[0], l.upper[j]), ins});
    }
    for (std::size_t i = 1; i + 1 < n; ++i) moves.push_back({Edge(l.upper[n - 1], l.lower[i]), Edge(cap, l.lower[i + 1])});
    return moves;
}

std::vector<FlipMove> capped_transform(const ChannelLayout& l, VertexId cap) {
    auto moves = left_to_canonical(l, cap);
    auto back = reverse_moves(right_to_canonical(l, cap));
    moves.insert(moves.end(), back.begin(), back.end());
    return moves;
}

std::vector<FlipMove> reverse_moves(const std::vector<FlipMove>& moves) {
    std::vector<FlipMove> out;
    out.reserve(moves.size());
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.push_back(it->reversed());
    return out;
}

}  // namespace flipdist
