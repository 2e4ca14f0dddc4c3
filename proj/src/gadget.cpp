#include "flipdist/gadget.hpp"

#include <algorithm>
#include <numeric>

#include "flipdist/error.hpp"
#include "flipdist/flip_search.hpp"

namespace flipdist {

namespace {

Point2 pt(const Rational& x, const Rational& y) { return {x, y}; }
Point2 rot90(const Point2& v) { return {-v.y, v.x}; }

// Upper half-plane first, then counterclockwise.
bool angle_less(const Point2& a, const Point2& b) {
    auto half = [](const Point2& v) { return v.y > 0 || (v.y == 0 && v.x > 0) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

// Template directions: (1,0), (0,1) and, for degree 3, (-1,-1).
std::vector<Point2> template_directions(int degree) {
    std::vector<Point2> u{pt(1, 0), pt(0, 1)};
    if (degree == 3) u.push_back(pt(-1, -1));
    return u;
}

Point2 template_end(const Point2& u, bool upper) {
    Point2 n = Rational(1) / squared_length(u) * rot90(u);
    return upper ? Rational(9) * u + n : Rational(9) * u - n;
}

// C, D, E, F in template coordinates.
std::vector<Point2> template_lock(int degree) {
    if (degree == 3) {
        return {pt(Rational(-3, 2), 3), pt(Rational(-3, 4), Rational(3, 4)), pt(Rational(3, 2), Rational(-3, 2)),
                pt(Rational(7, 5), Rational(7, 5))};
    }
    return {pt(2, 2), pt(-2, 0), pt(-3, -3), pt(0, -2)};
}

enum class Role { Free, Inside, Outside };

// Role of lock point k (0..3 = C..F) for a slot.
Role role(int degree, int k, std::size_t slot) {
    if (k == 0 || k == 2) return Role::Outside;
    if (degree == 3) {
        if (k == 1) return slot == 2 ? Role::Outside : Role::Inside;
        return slot == 2 ? Role::Inside : Role::Outside;
    }
    if (k == 1) return slot == 0 ? Role::Inside : Role::Outside;
    return slot == 1 ? Role::Inside : Role::Outside;
}

const char* lock_name(int k) {
    static const char* names[] = {"C", "D", "E", "F"};
    return names[k];
}

// Upper (left of the outgoing direction) in template coordinates.
bool template_upper(const Point2& u, const Point2& p) { return cross(u, p) > 0; }

struct EndPlanes {
    HalfPlane beyond, narrow_upper, narrow_lower, wide_upper, wide_lower;
};

EndPlanes left_end_planes(const Channel& c) {
    const std::size_t m = c.n() - 1;
    return {HalfPlane::left_of(c.lower[0], c.upper[0]), HalfPlane::left_of(c.upper[m], c.upper[m - 1]),
            HalfPlane::left_of(c.lower[m - 1], c.lower[m]), HalfPlane::left_of(c.upper[1], c.upper[0]),
            HalfPlane::left_of(c.lower[0], c.lower[1])};
}

HalfPlane strict_complement(const HalfPlane& h) { return {-h.a, -h.b, -h.c, true}; }

std::vector<std::vector<VertexId>> removal_order(const VertexGadget& g) {
    const VertexId C = g.C(), D = g.D(), E = g.E(), F = g.F();
    if (g.degree() == 3) return {{F, E, F, g.a(0)}, {C, F, C, g.a(1)}, {E, D, E, g.a(2)}};
    return {{C, F, C, g.a(0)}, {C, D, C, g.b(1)}};
}

}  // namespace

Point2 GadgetFrame::map(const Point2& p) const { return center + scale * (p.x * axis_x + p.y * axis_y); }

std::size_t GadgetFrame::slot_of(std::size_t input_index) const {
    for (std::size_t s = 0; s < order.size(); ++s) {
        if (order[s] == input_index) return s;
    }
    throw Error(ErrorCode::InvalidDomain, "no slot for channel " + std::to_string(input_index));
}

GadgetFrame gadget_frame(const Point2& center, const std::vector<Point2>& directions, const Rational& scale) {
    const std::size_t deg = directions.size();
    if (deg != 2 && deg != 3) throw Error(ErrorCode::InvalidDomain, "gadgets exist for degree 2 and 3 only");
    if (scale <= 0) throw Error(ErrorCode::InvalidDomain, "gadget scale must be positive");
    for (const auto& d : directions) {
        if (d.x == 0 && d.y == 0) throw Error(ErrorCode::InvalidDomain, "zero channel direction");
    }
    GadgetFrame f;
    f.degree = static_cast<int>(deg);
    f.center = center;
    f.scale = scale;
    f.order.resize(deg);
    std::iota(f.order.begin(), f.order.end(), std::size_t{0});
    if (deg == 3) {
        std::sort(f.order.begin(), f.order.end(),
                  [&](std::size_t i, std::size_t j) { return angle_less(directions[i], directions[j]); });
        std::rotate(f.order.begin(), std::min_element(f.order.begin(), f.order.end()), f.order.end());
        for (auto i : f.order) f.directions.push_back(directions[i]);
        for (std::size_t s = 0; s < 3; ++s) {
            if (cross(f.directions[s], f.directions[(s + 1) % 3]) <= 0) {
                throw Error(ErrorCode::SharpVertex, "an angle between consecutive channels is at least pi");
            }
        }
        Rational k0 = cross(f.directions[1], f.directions[2]);
        Rational k1 = cross(f.directions[2], f.directions[0]);
        f.axis_x = k0 * f.directions[0];
        f.axis_y = k1 * f.directions[1];
    } else {
        Rational c = cross(directions[0], directions[1]);
        if (c == 0) throw Error(ErrorCode::SharpVertex, "degree-2 vertex with both angles equal to pi");
        if (c < 0) std::swap(f.order[0], f.order[1]);
        for (auto i : f.order) f.directions.push_back(directions[i]);
        f.axis_x = f.directions[0];
        f.axis_y = f.directions[1];
    }
    return f;
}

Point2 gadget_end(const GadgetFrame& frame, std::size_t slot, bool upper) {
    return frame.map(template_end(template_directions(frame.degree).at(slot), upper));
}

Rational gadget_extent2(const GadgetFrame& frame) {
    GadgetFrame unit = frame;
    unit.scale = 1;
    Rational best = 0;
    auto take = [&](const Point2& p) {
        Rational d = squared_length(unit.map(p) - unit.center);
        if (d > best) best = d;
    };
    for (const auto& u : template_directions(frame.degree)) {
        take(template_end(u, true));
        take(template_end(u, false));
    }
    for (const auto& p : template_lock(frame.degree)) take(p);
    return best;
}

std::string VertexGadget::name(VertexId local) const {
    if (local < C()) return std::string(local % 2 == 0 ? "A" : "B") + std::to_string(local / 2 + 1);
    return lock_name(static_cast<int>(local - C()));
}

Triangulation VertexGadget::locked_pocket() const {
    auto domain = Domain::region(points, pocket, {});
    return Triangulation(domain, locked_edges());
}

Channel straight_channel(const VertexGadget& g, std::size_t slot, const FarEnd& far, std::size_t n) {
    Channel c;
    const Point2& b = g.points[g.b(slot)];
    const Point2& a = g.points[g.a(slot)];
    for (std::size_t k = 0; k < n; ++k) {
        const Rational t = ratio(static_cast<long>(k), static_cast<long>(n - 1));
        c.upper.push_back(b + t * (far.first - b));
        c.lower.push_back(a + t * (far.second - a));
    }
    return c;
}

VertexGadget build_vertex_gadget(const GadgetFrame& frame, const std::vector<FarEnd>& far_ends) {
    const int deg = frame.degree;
    const std::size_t slots = static_cast<std::size_t>(deg);
    VertexGadget g;
    g.frame = frame;
    auto u = template_directions(deg);
    for (std::size_t s = 0; s < slots; ++s) {
        g.points.push_back(frame.map(template_end(u[s], false)));
        g.points.push_back(frame.map(template_end(u[s], true)));
    }

    std::vector<Channel> channels;
    for (std::size_t s = 0; s < slots; ++s) {
        FarEnd far;
        if (far_ends.empty()) {
            Point2 step = Rational(64) * (frame.map(u[s]) - frame.center);
            far = {g.points[g.b(s)] + step, g.points[g.a(s)] + step};
        } else {
            far = far_ends.at(s);
        }
        channels.push_back(straight_channel(g, s, far));
    }

    auto lock = template_lock(deg);
    const Rational half(1, 8);
    for (int k = 0; k < 4; ++k) {
        const Point2& p = lock[static_cast<std::size_t>(k)];
        std::vector<Point2> corners{p + pt(-half, -half), p + pt(half, -half), p + pt(half, half),
                                    p + pt(-half, half)};
        std::vector<HalfPlane> hs;
        for (std::size_t i = 0; i < 4; ++i) hs.push_back(HalfPlane::left_of(frame.map(corners[i]), frame.map(corners[(i + 1) % 4])));
        std::string constraints = "box";
        for (std::size_t s = 0; s < slots; ++s) {
            auto planes = left_end_planes(channels[s]);
            switch (role(deg, k, s)) {
                case Role::Inside:
                    hs.push_back(planes.beyond);
                    hs.push_back(planes.narrow_upper);
                    hs.push_back(planes.narrow_lower);
                    constraints += ", inside narrow(" + std::to_string(s + 1) + ")";
                    break;
                case Role::Outside:
                    hs.push_back(strict_complement(template_upper(u[s], p) ? planes.wide_upper : planes.wide_lower));
                    constraints += ", outside wide(" + std::to_string(s + 1) + ")";
                    break;
                case Role::Free:
                    break;
            }
        }
        auto region = halfplane_intersection(hs);
        if (region.empty()) {
            throw Error(ErrorCode::EmptyFeasibleRegion, std::string("no room for ") + lock_name(k) + " (" + constraints + ")");
        }
        g.points.push_back(simple_interior_point(region));
    }

    auto placed = gadget_from_points(deg, std::move(g.points));
    placed.frame = frame;
    return placed;
}

VertexGadget gadget_from_points(int degree, std::vector<Point2> points) {
    if (degree != 2 && degree != 3) throw Error(ErrorCode::InvalidDomain, "gadgets exist for degree 2 and 3 only");
    if (points.size() != static_cast<std::size_t>(2 * degree + 4)) throw Error(ErrorCode::InvalidDomain, "wrong number of gadget points");
    VertexGadget g;
    g.frame.degree = degree;
    g.points = std::move(points);
    const int deg = degree;
    const std::size_t slots = static_cast<std::size_t>(deg);
    const VertexId C = g.C(), D = g.D(), E = g.E(), F = g.F();
    if (deg == 3) {
        g.pocket = {g.a(0), g.b(0), F, g.a(1), g.b(1), C, D, g.a(2), g.b(2), E};
        g.triangles = {{g.a(0), g.b(0), F}, {g.a(0), F, E}, {F, g.a(1), C}, {g.a(1), g.b(1), C},
                       {C, D, E},           {C, E, F},      {D, g.a(2), E}, {g.a(2), g.b(2), E}};
        g.caps = {D, D, F};
    } else {
        g.pocket = {g.a(0), g.b(0), C, g.a(1), g.b(1), D, E, F};
        g.triangles = {{g.a(0), g.b(0), C}, {C, F, g.a(0)}, {C, E, F}, {C, D, E}, {C, g.b(1), D}, {C, g.a(1), g.b(1)}};
        g.caps = {D, F};
    }

    Triangulation locked = [&] {
        try {
            return g.locked_pocket();
        } catch (const Error& e) {
            throw Error(ErrorCode::EmptyFeasibleRegion, std::string("pocket is not a simple polygon: ") + e.what());
        }
    }();
    if (!validate(locked).ok()) throw Error(ErrorCode::EmptyFeasibleRegion, "pocket triangulation is invalid");
    auto unlock = flip_for_edge(locked, g.lock());
    if (!unlock) throw Error(ErrorCode::EmptyFeasibleRegion, "lock quadrilateral CDEF is not strictly convex");
    g.unlock = *unlock;
    Triangulation unlocked = apply_flip(locked, g.unlock);
    auto removals = removal_order(g);
    for (std::size_t s = 0; s < slots; ++s) {
        std::vector<FlipMove> moves;
        Triangulation t = unlocked;
        for (std::size_t i = 0; i < 4; i += 2) {
            auto m = flip_for_edge(t, Edge(removals[s][i], removals[s][i + 1]));
            if (!m) {
                throw Error(ErrorCode::EmptyFeasibleRegion,
                            "cap flip " + g.name(removals[s][i]) + g.name(removals[s][i + 1]) + " is not legal");
            }
            moves.push_back(*m);
            t = apply_flip(t, *m);
        }
        g.cap_moves.push_back(std::move(moves));
    }
    return g;
}

std::vector<MouthRequirement> gadget_requirements(const VertexGadget& g, std::size_t slot) {
    const int deg = g.degree();
    auto u = template_directions(deg);
    auto lock = template_lock(deg);
    std::vector<MouthRequirement> out;
    auto outside = [&](const Point2& templ, const Point2& p) {
        auto kind = template_upper(u[slot], templ) ? MouthRequirement::Kind::OutsideWideUpper
                                                   : MouthRequirement::Kind::OutsideWideLower;
        out.push_back({ChannelEnd::Left, kind, p});
    };
    for (int k = 0; k < 4; ++k) {
        const Point2& p = g.points[g.C() + static_cast<VertexId>(k)];
        if (role(deg, k, slot) == Role::Inside) {
            out.push_back({ChannelEnd::Left, MouthRequirement::Kind::InsideNarrow, p});
        } else {
            outside(lock[static_cast<std::size_t>(k)], p);
        }
    }
    for (std::size_t s = 0; s < static_cast<std::size_t>(deg); ++s) {
        if (s == slot) continue;
        outside(template_end(u[s], false), g.points[g.a(s)]);
        outside(template_end(u[s], true), g.points[g.b(s)]);
    }
    return out;
}

MouthRequirement opposite_end(const MouthRequirement& r) {
    MouthRequirement o = r;
    o.end = r.end == ChannelEnd::Left ? ChannelEnd::Right : ChannelEnd::Left;
    if (r.kind == MouthRequirement::Kind::OutsideWideUpper) o.kind = MouthRequirement::Kind::OutsideWideLower;
    if (r.kind == MouthRequirement::Kind::OutsideWideLower) o.kind = MouthRequirement::Kind::OutsideWideUpper;
    return o;
}

std::vector<Edge> blocking_set(const VertexGadget& g, std::size_t slot) {
    const Point2& a = g.points[g.a(slot)];
    const Point2& b = g.points[g.b(slot)];
    const Point2& cap = g.points[g.caps[slot]];
    std::vector<Edge> out;
    for (const auto& e : g.locked_edges()) {
        const Point2& p = g.points[e.u];
        const Point2& q = g.points[e.v];
        if (segments_properly_cross(p, q, a, cap) || segments_properly_cross(p, q, b, cap) ||
            segments_properly_cross(p, q, a, b)) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<Edge> script_blocking_set(const VertexGadget& g, std::size_t slot) {
    std::vector<Edge> out{g.lock()};
    for (const auto& m : g.cap_moves[slot]) out.push_back(m.removed);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> audit_gadget(const VertexGadget& g, const std::vector<Channel>& channels) {
    std::vector<std::string> problems;
    const auto& P = g.points;
    if (!is_strictly_convex_quad(P[g.C()], P[g.D()], P[g.E()], P[g.F()]) ||
        orientation(P[g.C()], P[g.D()], P[g.E()]) != Orientation::CCW) {
        problems.push_back("CDEF is not a strictly convex counterclockwise quadrilateral");
    }
    try {
        if (!validate(g.locked_pocket()).ok()) problems.push_back("locked pocket triangulation is invalid");
    } catch (const Error& e) {
        problems.push_back(std::string("pocket: ") + e.what());
    }
    const std::size_t slots = static_cast<std::size_t>(g.degree());
    if (channels.size() != slots) {
        problems.push_back("audit needs one channel per slot");
        return problems;
    }
    for (std::size_t s = 0; s < slots; ++s) {
        const Channel& c = channels[s];
        const std::string tag = " (channel " + std::to_string(s + 1) + ")";
        if (!inside_narrow(c, ChannelEnd::Left, P[g.caps[s]])) {
            problems.push_back("cap " + g.name(g.caps[s]) + " is not inside the narrow mouth" + tag);
        }
        for (VertexId v = 0; v < P.size(); ++v) {
            if (v == g.a(s) || v == g.b(s) || v == g.caps[s]) continue;
            if (inside_wide(c, ChannelEnd::Left, P[v])) {
                problems.push_back(g.name(v) + " is inside the wide mouth" + tag);
            }
        }
        auto geo = blocking_set(g, s);
        auto scr = script_blocking_set(g, s);
        if (geo != scr) problems.push_back("geometric and scripted blocking sets differ" + tag);
        if (geo.size() != 3) problems.push_back("blocking set has " + std::to_string(geo.size()) + " edges" + tag);
    }
    for (std::size_t s = 0; s < slots; ++s) {
        for (std::size_t t = s + 1; t < slots; ++t) {
            auto x = blocking_set(g, s);
            auto y = blocking_set(g, t);
            std::vector<Edge> common;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
            if (common != std::vector<Edge>{g.lock()}) {
                problems.push_back("blocking sets of channels " + std::to_string(s + 1) + " and " + std::to_string(t + 1) +
                                   " do not meet exactly in CE");
            }
        }
    }
    return problems;
}

GadgetScripts gadget_scripts(const VertexGadget& g, std::size_t slot, const std::vector<VertexId>& ids,
                             const ChannelLayout& view) {
    auto global = [&](const FlipMove& m) {
        return FlipMove{Edge(ids.at(m.removed.u), ids.at(m.removed.v)), Edge(ids.at(m.inserted.u), ids.at(m.inserted.v))};
    };
    if (view.upper.front() != ids.at(g.b(slot)) || view.lower.front() != ids.at(g.a(slot))) {
        throw Error(ErrorCode::InvalidInstance, "channel layout does not start at the gadget end");
    }
    GadgetScripts s;
    s.unlock = {global(g.unlock)};
    for (const auto& m : g.cap_moves.at(slot)) s.cap.push_back(global(m));
    VertexId cap = ids.at(g.caps[slot]);
    s.transform = capped_transform(view, cap);
    s.canonical_half = left_to_canonical(view, cap);
    s.uncap = reverse_moves(s.cap);
    s.relock = reverse_moves(s.unlock);
    return s;
}

}  // namespace flipdist
