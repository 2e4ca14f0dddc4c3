#include "flipdist/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flipdist/error.hpp"
#include "flipdist/vertex_cover.hpp"

namespace flipdist {

namespace {

Point2 rot90(const Point2& v) { return {-v.y, v.x}; }

Rational dist2_to_segment(const Point2& p, const Point2& a, const Point2& b) {
    Point2 d = b - a;
    Rational t = dot(p - a, d) / squared_length(d);
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return squared_length(p - (a + t * d));
}

Point2 linf_direction(const Point2& d) {
    Rational ax = abs(d.x), ay = abs(d.y);
    Rational m = ax > ay ? ax : ay;
    return Rational(1) / m * d;
}

std::string label(const PlanarGraphDrawing& d, std::size_t v) { return std::to_string(d.labels[v]); }

std::string edge_label(const PlanarGraphDrawing& d, std::size_t e) {
    return label(d, d.graph.edges[e].first) + "-" + label(d, d.graph.edges[e].second);
}

// Largest power of two s with s^2 * extent2 <= limit2.
Rational power_of_two_scale(const Rational& extent2, const Rational& limit2) {
    Rational s = 1;
    while (s * s * extent2 > limit2) s /= 2;
    while (4 * s * s * extent2 <= limit2) s *= 2;
    return s;
}

std::vector<std::vector<VertexId>> chain_loops(const std::map<VertexId, VertexId>& next) {
    std::vector<std::vector<VertexId>> loops;
    std::set<VertexId> seen;
    for (const auto& [start, _] : next) {
        if (seen.count(start)) continue;
        std::vector<VertexId> loop;
        for (VertexId v = start; !seen.count(v); v = next.at(v)) {
            seen.insert(v);
            loop.push_back(v);
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

Rational loop_area2(const std::vector<Point2>& pts, const std::vector<VertexId>& loop) {
    std::vector<Point2> poly;
    for (auto v : loop) poly.push_back(pts[v]);
    return signed_area2(poly);
}

bool in_closed_triangle(const Point2& a, const Point2& b, const Point2& c, const Point2& q) {
    auto o1 = orientation(a, b, q), o2 = orientation(b, c, q), o3 = orientation(c, a, q);
    bool has_cw = o1 == Orientation::CW || o2 == Orientation::CW || o3 == Orientation::CW;
    bool has_ccw = o1 == Orientation::CCW || o2 == Orientation::CCW || o3 == Orientation::CCW;
    return !(has_cw && has_ccw);
}

}  // namespace

VertexGadget ReductionInstance::local_gadget(std::size_t v) const {
    const auto& g = gadgets.at(v);
    std::vector<Point2> pts;
    for (auto id : g.ids) pts.push_back(region->point(id));
    return gadget_from_points(g.degree, std::move(pts));
}

ChannelLayout ReductionInstance::view(std::size_t v, std::size_t slot) const {
    const auto& c = channels.at(gadgets.at(v).channels.at(slot));
    if (c.from == v && c.from_slot == slot) return c.layout;
    return c.layout.rotated();
}

Channel ReductionInstance::channel_points(const ChannelLayout& l) const {
    Channel c;
    for (auto id : l.upper) c.upper.push_back(region->point(id));
    for (auto id : l.lower) c.lower.push_back(region->point(id));
    return c;
}

ReductionInstance build_instance(const PlanarGraphDrawing& d, long k_input, long t_outer) {
    const auto& g = d.graph;
    if (g.n == 0 || g.edges.empty()) throw Error(ErrorCode::InvalidInstance, "empty graph");
    if (!audit_drawing(d, false).empty()) throw Error(ErrorCode::NotPlanar, "drawing is not plane");
    std::vector<std::vector<std::size_t>> incident(g.n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        incident[g.edges[e].first].push_back(e);
        incident[g.edges[e].second].push_back(e);
    }
    auto other = [&](std::size_t e, std::size_t v) { return g.edges[e].first == v ? g.edges[e].second : g.edges[e].first; };

    std::vector<GadgetFrame> frames;
    Rational extent2 = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (incident[v].size() != 2 && incident[v].size() != 3) {
            throw Error(ErrorCode::InvalidInstance, "vertex " + label(d, v) + " has degree " +
                                                        std::to_string(incident[v].size()) + "; expected 2 or 3");
        }
        if (is_sharp(d, v)) throw Error(ErrorCode::SharpVertex, "vertex " + label(d, v) + " is sharp");
        std::vector<Point2> dirs;
        for (auto e : incident[v]) dirs.push_back(linf_direction(d.points[other(e, v)] - d.points[v]));
        try {
            frames.push_back(gadget_frame(d.points[v], dirs, 1));
        } catch (const Error& err) {
            throw Error(err.code(), "vertex " + label(d, v) + ": " + err.what());
        }
        Rational x = gadget_extent2(frames.back());
        if (x > extent2) extent2 = x;
    }

    // Gadgets stay within 1/16 of every edge length and 1/8 of every
    // vertex-to-edge clearance.
    Rational limit2 = -1;
    auto take = [&](const Rational& r) {
        if (limit2 < 0 || r < limit2) limit2 = r;
    };
    for (auto [a, b] : g.edges) take(squared_length(d.points[a] - d.points[b]) / 256);
    for (std::size_t v = 0; v < g.n; ++v) {
        for (auto [a, b] : g.edges) {
            if (a == v || b == v) continue;
            take(dist2_to_segment(d.points[v], d.points[a], d.points[b]) / 64);
        }
    }
    const Rational scale = power_of_two_scale(extent2, limit2);
    for (auto& f : frames) f.scale = scale;

    // slot of edge e at vertex v
    auto slot = [&](std::size_t v, std::size_t e) {
        auto pos = std::find(incident[v].begin(), incident[v].end(), e) - incident[v].begin();
        return frames[v].slot_of(static_cast<std::size_t>(pos));
    };

    std::vector<VertexGadget> gadgets;
    for (std::size_t v = 0; v < g.n; ++v) {
        std::vector<FarEnd> far(incident[v].size());
        for (auto e : incident[v]) {
            std::size_t w = other(e, v);
            std::size_t sw = slot(w, e);
            far[slot(v, e)] = {gadget_end(frames[w], sw, false), gadget_end(frames[w], sw, true)};
        }
        try {
            gadgets.push_back(build_vertex_gadget(frames[v], far));
        } catch (const Error& err) {
            throw Error(err.code(), "vertex " + label(d, v) + ": " + err.what());
        }
    }

    ReductionInstance inst;
    inst.drawing = d;
    std::vector<Point2> pts;
    for (std::size_t v = 0; v < g.n; ++v) {
        GadgetRecord r;
        r.vertex = v;
        r.degree = gadgets[v].degree();
        for (const auto& p : gadgets[v].points) {
            r.ids.push_back(static_cast<VertexId>(pts.size()));
            pts.push_back(p);
        }
        r.channels.resize(incident[v].size());
        for (auto e : incident[v]) r.channels[slot(v, e)] = e;
        inst.gadgets.push_back(std::move(r));
    }

    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        ChannelRecord rec;
        rec.from = a;
        rec.to = b;
        rec.from_slot = slot(a, e);
        rec.to_slot = slot(b, e);
        const auto& ga = gadgets[a];
        const auto& gb = gadgets[b];
        std::vector<MouthRequirement> reqs = gadget_requirements(ga, rec.from_slot);
        for (const auto& r : gadget_requirements(gb, rec.to_slot)) reqs.push_back(opposite_end(r));
        Channel c;
        for (Rational sag(1, 16);; sag /= 2) {
            try {
                c = build_channel(ga.points[ga.b(rec.from_slot)], ga.points[ga.a(rec.from_slot)],
                                  gb.points[gb.a(rec.to_slot)], gb.points[gb.b(rec.to_slot)], sag, 7, reqs);
                break;
            } catch (const Error& err) {
                if (err.code() != ErrorCode::InfeasibleSag || sag < Rational(1, 4096)) {
                    throw Error(err.code(), "edge " + edge_label(d, e) + ": " + err.what());
                }
            }
        }
        const auto& ra = inst.gadgets[a];
        const auto& rb = inst.gadgets[b];
        const std::size_t n = c.n();
        rec.layout.upper.push_back(ra.b(rec.from_slot));
        rec.layout.lower.push_back(ra.a(rec.from_slot));
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rec.layout.upper.push_back(static_cast<VertexId>(pts.size()));
            pts.push_back(c.upper[i]);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rec.layout.lower.push_back(static_cast<VertexId>(pts.size()));
            pts.push_back(c.lower[i]);
        }
        rec.layout.upper.push_back(rb.a(rec.to_slot));
        rec.layout.lower.push_back(rb.b(rec.to_slot));
        inst.channels.push_back(std::move(rec));
    }

    // Boundary edges with the region on the left.
    std::map<VertexId, VertexId> next;
    auto link = [&](VertexId u, VertexId v) {
        if (!next.emplace(u, v).second) throw Error(ErrorCode::InvalidInstance, "boundary is not a union of loops");
    };
    for (std::size_t v = 0; v < g.n; ++v) {
        const auto& r = inst.gadgets[v];
        const auto& pocket = gadgets[v].pocket;
        for (std::size_t i = 0; i < pocket.size(); ++i) {
            VertexId p = pocket[i], q = pocket[(i + 1) % pocket.size()];
            if (p % 2 == 0 && q == p + 1 && p < gadgets[v].C()) continue;  // end edge A_s B_s
            link(r.ids[p], r.ids[q]);
        }
    }
    for (const auto& rec : inst.channels) {
        const auto& l = rec.layout;
        for (std::size_t i = 0; i + 1 < l.n(); ++i) {
            link(l.lower[i], l.lower[i + 1]);
            link(l.upper[i + 1], l.upper[i]);
        }
    }
    std::vector<VertexId> outer;
    std::vector<std::vector<VertexId>> holes;
    for (auto& loop : chain_loops(next)) {
        std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
        if (loop_area2(pts, loop) > 0) {
            if (!outer.empty()) throw Error(ErrorCode::InvalidInstance, "more than one outer loop");
            outer = std::move(loop);
        } else {
            holes.push_back(std::move(loop));
        }
    }
    std::sort(holes.begin(), holes.end());
    inst.region = Domain::region(pts, outer, holes);

    std::vector<Edge> shared = inst.region->boundary_edges();
    for (std::size_t v = 0; v < g.n; ++v) {
        for (auto e : gadgets[v].locked_edges()) shared.emplace_back(inst.gadgets[v].ids[e.u], inst.gadgets[v].ids[e.v]);
    }
    inst.t1 = shared;
    inst.t2 = shared;
    for (const auto& rec : inst.channels) {
        for (auto e : left_inclined_diagonals(rec.layout)) inst.t1.push_back(e);
        for (auto e : right_inclined_diagonals(rec.layout)) inst.t2.push_back(e);
    }
    for (auto* t : {&inst.t1, &inst.t2}) {
        std::sort(t->begin(), t->end());
        t->erase(std::unique(t->begin(), t->end()), t->end());
    }
    for (const auto& t : {inst.T1(), inst.T2()}) {
        auto rep = validate(t);
        if (!rep.ok()) throw Error(ErrorCode::InvalidInstance, "assembled triangulation: " + rep.violations[0].message);
    }
    auto problems = audit_instance(inst);
    if (!problems.empty()) throw Error(ErrorCode::EmptyFeasibleRegion, problems.front());

    inst.accounting.k_input = k_input;
    inst.accounting.t_outer = t_outer;
    inst.accounting.k_prime = k_input + t_outer;
    inst.accounting.edges = static_cast<long>(g.edges.size());
    inst.accounting.threshold = 2 * inst.accounting.k_prime + 28 * inst.accounting.edges;
    return inst;
}

ReductionInstance reduce_graph(const GraphFile& file, long k_input) {
    auto s = eliminate_sharp(graph_drawing(file));
    return build_instance(s.drawing, k_input, static_cast<long>(s.t));
}

std::vector<std::string> audit_instance(const ReductionInstance& inst) {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < inst.gadgets.size(); ++v) {
        VertexGadget g;
        try {
            g = inst.local_gadget(v);
        } catch (const Error& e) {
            out.push_back("vertex " + label(inst.drawing, v) + ": " + e.what());
            continue;
        }
        std::vector<Channel> chs;
        for (std::size_t s = 0; s < inst.gadgets[v].channels.size(); ++s) chs.push_back(inst.channel_points(inst.view(v, s)));
        for (auto& p : audit_gadget(g, chs)) out.push_back("vertex " + label(inst.drawing, v) + ": " + p);
    }
    return out;
}

FlipScript cover_to_script(const ReductionInstance& inst, const std::vector<std::size_t>& cover) {
    const auto& graph = inst.drawing.graph;
    for (auto v : cover) {
        if (v >= graph.n) throw Error(ErrorCode::NotACover, "vertex index " + std::to_string(v) + " out of range");
    }
    if (auto miss = uncovered_edge(graph, cover)) {
        throw Error(ErrorCode::NotACover, "edge " + label(inst.drawing, miss->first) + "-" +
                                              label(inst.drawing, miss->second) + " is not covered");
    }
    std::vector<std::size_t> s = cover;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<bool> in(graph.n, false);
    for (auto v : s) in[v] = true;

    std::vector<VertexGadget> local(graph.n);
    for (auto v : s) local[v] = inst.local_gadget(v);

    FlipScript out;
    out.start_key = canonical_key(inst.T1());
    for (auto v : s) out.moves.push_back({inst.gadgets[v].lock(), Edge(inst.gadgets[v].D(), inst.gadgets[v].F())});
    for (const auto& rec : inst.channels) {
        std::size_t v = in[rec.from] && (!in[rec.to] || rec.from < rec.to) ? rec.from : rec.to;
        std::size_t slot = v == rec.from ? rec.from_slot : rec.to_slot;
        auto scripts = gadget_scripts(local[v], slot, inst.gadgets[v].ids, inst.view(v, slot));
        for (const auto* part : {&scripts.cap, &scripts.transform, &scripts.uncap}) {
            out.moves.insert(out.moves.end(), part->begin(), part->end());
        }
    }
    for (auto v : s) out.moves.push_back({Edge(inst.gadgets[v].D(), inst.gadgets[v].F()), inst.gadgets[v].lock()});
    return out;
}

AccountingReport audit_script(const ReductionInstance& inst, const FlipScript& s) {
    const auto& graph = inst.drawing.graph;
    std::map<Edge, std::size_t> locks;
    for (std::size_t v = 0; v < inst.gadgets.size(); ++v) locks[inst.gadgets[v].lock()] = v;

    // cap edges: both sides of each channel end
    struct End {
        std::size_t channel;
        Edge to_a, to_b;
    };
    std::vector<End> ends;
    std::map<Edge, std::vector<std::size_t>> by_edge;
    for (std::size_t c = 0; c < inst.channels.size(); ++c) {
        const auto& rec = inst.channels[c];
        for (auto [v, slot] : {std::pair{rec.from, rec.from_slot}, std::pair{rec.to, rec.to_slot}}) {
            const auto& gr = inst.gadgets[v];
            VertexId cap = gr.cap(slot);
            ends.push_back({c, Edge(cap, gr.a(slot)), Edge(cap, gr.b(slot))});
            by_edge[ends.back().to_a].push_back(ends.size() - 1);
            by_edge[ends.back().to_b].push_back(ends.size() - 1);
        }
    }

    std::vector<bool> unlocked(graph.n, false), capped(inst.channels.size(), false);
    Triangulation t = inst.T1();
    for (std::size_t i = 0; i < s.moves.size(); ++i) {
        const auto& m = s.moves[i];
        try {
            t = apply_flip(t, m);
        } catch (const Error& e) {
            throw Error(ErrorCode::IllegalScript, "move " + std::to_string(i) + ": " + e.what());
        }
        if (auto it = locks.find(m.removed); it != locks.end()) unlocked[it->second] = true;
        if (auto it = by_edge.find(m.inserted); it != by_edge.end()) {
            for (auto k : it->second) {
                if (t.contains(ends[k].to_a) && t.contains(ends[k].to_b)) capped[ends[k].channel] = true;
            }
        }
    }
    if (t.edges() != inst.T2().edges()) {
        throw Error(ErrorCode::IllegalScript, "script of " + std::to_string(s.moves.size()) + " moves does not end at T2");
    }

    AccountingReport r;
    std::vector<bool> cover(graph.n, false);
    for (std::size_t v = 0; v < graph.n; ++v) {
        if (unlocked[v]) {
            r.unlocked.push_back(v);
            cover[v] = true;
        }
    }
    for (std::size_t c = 0; c < capped.size(); ++c) {
        if (!capped[c]) {
            r.never_capped.push_back(c);
            cover[inst.channels[c].from] = true;
        }
    }
    for (std::size_t v = 0; v < graph.n; ++v) {
        if (cover[v]) r.implied_cover.push_back(v);
    }
    r.flips = s.moves.size();
    r.lower_bound = 2 * r.unlocked.size() + 36 * r.never_capped.size() + 28 * (inst.channels.size() - r.never_capped.size());
    r.implied_cover_size = r.unlocked.size() + r.never_capped.size();
    r.threshold = inst.accounting.threshold;
    r.within_threshold = static_cast<long>(r.flips) <= r.threshold;
    return r;
}

PointSetInstance region_to_pointset(const ReductionInstance& inst, std::size_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidInstance, "multiplicity must be at least 1");
    const Domain& region = *inst.region;
    std::vector<Point2> pts = region.points();
    const std::size_t base = pts.size();

    std::vector<std::vector<VertexId>> loops{region.outer()};
    for (const auto& h : region.holes()) {
        if (h.size() >= 3) loops.push_back(h);
    }
    std::vector<std::pair<VertexId, VertexId>> segments;
    for (const auto& loop : loops) {
        for (std::size_t i = 0; i < loop.size(); ++i) segments.emplace_back(loop[i], loop[(i + 1) % loop.size()]);
    }

    struct Sliver {
        VertexId a, b;
        Point2 apex;
    };
    std::vector<Sliver> placed;
    auto free = [&](VertexId a, VertexId b, const Point2& p) {
        const Point2& pa = pts[a];
        const Point2& pb = pts[b];
        for (VertexId v = 0; v < base; ++v) {
            if (v != a && v != b && in_closed_triangle(pa, pb, p, pts[v])) return false;
        }
        for (auto [u, v] : segments) {
            const Point2& q = pts[u];
            const Point2& r = pts[v];
            if (on_segment(q, p, r)) return false;
            if (segments_properly_cross(pa, p, q, r) || segments_properly_cross(pb, p, q, r)) return false;
        }
        for (const auto& s : placed) {
            const Point2& q = pts[s.a];
            const Point2& r = pts[s.b];
            if (in_closed_triangle(q, r, s.apex, p) || in_closed_triangle(pa, pb, p, s.apex)) return false;
            for (const auto& [x, y] : {std::pair{q, s.apex}, std::pair{r, s.apex}}) {
                if (segments_properly_cross(pa, p, x, y) || segments_properly_cross(pb, p, x, y)) return false;
            }
        }
        return true;
    };

    PointSetInstance out;
    out.multiplicity = m;
    out.region_points = base;
    std::map<std::pair<VertexId, VertexId>, VertexId> apex_of;
    std::vector<Edge> fill;
    for (auto [a, b] : segments) {
        const Point2 mid = midpoint(pts[a], pts[b]);
        const Point2 normal = rot90(pts[b] - pts[a]);
        Rational lambda(1, 4);
        for (int tries = 0; !free(a, b, mid - lambda * normal); ++tries) {
            if (tries > 64) throw Error(ErrorCode::InvalidInstance, "no room for the slivers of a boundary edge");
            lambda /= 2;
        }
        placed.push_back({a, b, mid - lambda * normal});
        std::vector<VertexId> stack;
        for (std::size_t k = 1; k <= m; ++k) {
            Rational f = lambda * ratio(static_cast<long>(k), static_cast<long>(m));
            stack.push_back(static_cast<VertexId>(pts.size()));
            pts.push_back(mid - f * normal);
        }
        fill.emplace_back(a, stack[0]);
        fill.emplace_back(b, stack[0]);
        for (std::size_t k = 1; k < m; ++k) {
            fill.emplace_back(a, stack[k]);
            fill.emplace_back(b, stack[k]);
            fill.emplace_back(stack[k - 1], stack[k]);
        }
        apex_of[{a, b}] = stack.back();
        out.protected_edges.emplace_back(a, b);
        out.slivers.push_back(std::move(stack));
    }

    auto extended = [&](const std::vector<VertexId>& loop) {
        std::vector<VertexId> e;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            e.push_back(loop[i]);
            e.push_back(apex_of.at({loop[i], loop[(i + 1) % loop.size()]}));
        }
        return e;
    };
    auto clip = [&](std::vector<VertexId> poly) {
        if (loop_area2(pts, poly) < 0) std::reverse(poly.begin(), poly.end());
        for (auto e : triangle_edges(ear_clip(pts, poly))) fill.push_back(e);
    };
    for (std::size_t h = 1; h < loops.size(); ++h) clip(extended(loops[h]));

    auto domain = Domain::point_set(pts);
    const auto outer = extended(loops[0]);
    std::vector<std::size_t> pos(pts.size(), outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) pos[outer[i]] = i;
    const auto& hull = domain->outer();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        VertexId h0 = hull[i], h1 = hull[(i + 1) % hull.size()];
        if (pos[h0] == outer.size() || pos[h1] == outer.size()) {
            throw Error(ErrorCode::InvalidInstance, "hull vertex off the extended outer loop");
        }
        std::vector<VertexId> pocket;
        for (std::size_t k = pos[h0];; k = (k + 1) % outer.size()) {
            pocket.push_back(outer[k]);
            if (outer[k] == h1) break;
        }
        if (pocket.size() > 2) clip(pocket);
    }

    std::sort(fill.begin(), fill.end());
    fill.erase(std::unique(fill.begin(), fill.end()), fill.end());
    out.domain = domain;
    out.fill_edges = fill;
    auto merge = [&](const std::vector<Edge>& region_edges) {
        std::vector<Edge> all = region_edges;
        all.insert(all.end(), fill.begin(), fill.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return all;
    };
    out.t1 = merge(inst.t1);
    out.t2 = merge(inst.t2);
    for (const auto& t : {out.T1(), out.T2()}) {
        auto rep = validate(t);
        if (!rep.ok()) throw Error(ErrorCode::InvalidInstance, "point-set triangulation: " + rep.violations[0].message);
    }
    return out;
}

std::size_t max_coordinate_bits(const Domain& d) {
    std::size_t best = 0;
    for (const auto& p : d.points()) best = std::max(best, bit_size(p));
    return best;
}

}  // namespace flipdist
