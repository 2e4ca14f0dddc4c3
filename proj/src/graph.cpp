#include "flipdist/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

bool angle_less(const Point2& a, const Point2& b) {
    auto half = [](const Point2& v) { return v.y > 0 || (v.y == 0 && v.x > 0) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

// Neighbors of every vertex in counterclockwise order.
std::vector<std::vector<std::size_t>> rotation(const Graph& g, const std::vector<Point2>& pts) {
    auto adj = g.adjacency();
    for (std::size_t v = 0; v < g.n; ++v) {
        std::sort(adj[v].begin(), adj[v].end(),
                  [&](std::size_t a, std::size_t b) { return angle_less(pts[a] - pts[v], pts[b] - pts[v]); });
    }
    return adj;
}

std::vector<std::vector<std::size_t>> trace_faces(const Graph& g, const std::vector<Point2>& pts) {
    auto rot = rotation(g, pts);
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<std::vector<std::size_t>> faces;
    for (std::size_t s = 0; s < g.n; ++s) {
        for (auto t : rot[s]) {
            if (used.count({s, t})) continue;
            std::vector<std::size_t> face;
            std::size_t u = s, v = t;
            while (!used.count({u, v})) {
                used.insert({u, v});
                face.push_back(u);
                const auto& r = rot[v];
                auto it = std::find(r.begin(), r.end(), u);
                std::size_t w = it == r.begin() ? r.back() : *(it - 1);
                u = v;
                v = w;
            }
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

Rational face_area2(const std::vector<std::size_t>& f, const std::vector<Point2>& pts) {
    std::vector<Point2> poly;
    for (auto v : f) poly.push_back(pts[v]);
    return signed_area2(poly);
}

std::vector<Point2> circle_points(std::size_t k) {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < k; ++i) {
        // rational point of the unit circle from t = tan(theta / 2), t rounded to 1/1024
        double theta = 2 * std::numbers::pi * (static_cast<double>(i) + 0.3) / static_cast<double>(k);
        const Rational t = ratio(std::lround(std::tan(theta / 2) * 1024), 1024);
        Rational d = 1 + t * t;
        out.push_back({Rational((1 - t * t) / d), Rational(2 * t / d)});
    }
    return out;
}

// Solves A x = b exactly; A is square and nonsingular.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw Error(ErrorCode::NotPlanar, "singular barycentric system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

bool adjacent(const std::vector<std::vector<std::size_t>>& adj, std::size_t a, std::size_t b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

// Induced cycle whose removal leaves the rest connected.
bool peripheral(const Graph& g, const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::size_t>& cyc) {
    const std::size_t k = cyc.size();
    if (k < 3) return false;
    std::vector<bool> on(g.n, false);
    for (auto v : cyc) {
        if (v >= g.n || on[v]) return false;
        on[v] = true;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!adjacent(adj, cyc[i], cyc[(i + 1) % k])) return false;
        for (std::size_t j = i + 2; j < k; ++j) {
            if (i == 0 && j == k - 1) continue;
            if (adjacent(adj, cyc[i], cyc[j])) return false;
        }
    }
    return is_connected(g, on);
}

std::vector<std::size_t> find_peripheral_cycle(const Graph& g, const std::vector<std::vector<std::size_t>>& adj) {
    for (std::size_t len = 3; len <= g.n; ++len) {
        for (std::size_t s = 0; s < g.n; ++s) {
            std::vector<std::size_t> path{s};
            std::vector<bool> on(g.n, false);
            on[s] = true;
            std::vector<std::size_t> found;
            std::function<bool()> dfs = [&]() {
                std::size_t v = path.back();
                if (path.size() == len) {
                    if (adjacent(adj, v, s) && path[1] < v && peripheral(g, adj, path)) {
                        found = path;
                        return true;
                    }
                    return false;
                }
                for (auto w : adj[v]) {
                    if (w <= s || on[w]) continue;
                    on[w] = true;
                    path.push_back(w);
                    if (dfs()) return true;
                    path.pop_back();
                    on[w] = false;
                }
                return false;
            };
            if (dfs()) return found;
        }
    }
    throw Error(ErrorCode::InvalidOuterFace, "no induced non-separating cycle");
}

std::vector<std::size_t> outer_of(const Graph& g, const std::vector<Point2>& pts) {
    std::vector<std::size_t> outer;
    std::size_t count = 0;
    for (auto& f : trace_faces(g, pts)) {
        if (face_area2(f, pts) < 0) {
            ++count;
            outer.assign(f.rbegin(), f.rend());
        }
    }
    if (count != 1) throw Error(ErrorCode::NotPlanar, "drawing does not have exactly one outer face");
    return outer;
}

}  // namespace

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
}

std::size_t Graph::degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == v || e.second == v; }));
}

bool GraphFile::has_all_coords() const {
    return !coords.empty() && std::all_of(coords.begin(), coords.end(), [](const auto& c) { return c.has_value(); });
}

GraphFile parse_graph(std::string_view text) {
    GraphFile gf;
    std::map<long, std::size_t> index;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto vertex = [&](long label) {
        auto it = index.find(label);
        if (it != index.end()) return it->second;
        std::size_t id = gf.labels.size();
        index[label] = id;
        gf.labels.push_back(label);
        gf.coords.emplace_back();
        return id;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        auto fail = [&](const std::string& why) {
            throw Error(ErrorCode::ParseError, "graph line " + std::to_string(lineno) + ": " + why);
        };
        std::vector<std::string> args;
        for (std::string a; ls >> a;) args.push_back(a);
        auto label = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                long v = std::stol(s, &pos);
                if (pos != s.size()) fail("bad vertex id '" + s + "'");
                return v;
            } catch (const std::logic_error&) {
                fail("bad vertex id '" + s + "'");
            }
            return 0L;
        };
        if (kind == "v") {
            if (args.size() != 1 && args.size() != 3) fail("expected 'v <id>' or 'v <id> <x> <y>'");
            auto v = vertex(label(args[0]));
            if (args.size() == 3) gf.coords[v] = Point2{parse_rational(args[1]), parse_rational(args[2])};
        } else if (kind == "e") {
            if (args.size() != 2) fail("expected 'e <id> <id>'");
            auto a = vertex(label(args[0]));
            auto b = vertex(label(args[1]));
            if (a == b) fail("loop at vertex " + args[0]);
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second) fail("repeated edge " + args[0] + " " + args[1]);
            gf.graph.edges.emplace_back(a, b);
        } else if (kind == "outer") {
            if (args.empty()) fail("empty outer face");
            for (const auto& a : args) gf.outer.push_back(vertex(label(a)));
        } else {
            fail("unknown record '" + kind + "'");
        }
    }
    gf.graph.n = gf.labels.size();
    return gf;
}

std::vector<std::vector<std::size_t>> PlanarGraphDrawing::faces() const { return trace_faces(graph, points); }

std::string format_graph(const PlanarGraphDrawing& d) {
    std::ostringstream out;
    for (std::size_t v = 0; v < d.graph.n; ++v) {
        out << "v " << d.labels[v] << ' ' << format_rational(d.points[v].x) << ' ' << format_rational(d.points[v].y)
            << '\n';
    }
    for (auto [a, b] : d.graph.edges) out << "e " << d.labels[a] << ' ' << d.labels[b] << '\n';
    out << "outer";
    for (auto v : d.outer) out << ' ' << d.labels[v];
    out << '\n';
    return out.str();
}

bool is_connected(const Graph& g, const std::vector<bool>& removed) {
    auto adj = g.adjacency();
    std::vector<bool> seen(g.n, false);
    std::size_t start = g.n, alive = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (!removed.empty() && removed[v]) continue;
        ++alive;
        if (start == g.n) start = v;
    }
    if (alive == 0) return true;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        ++reached;
        for (auto w : adj[v]) {
            if (seen[w] || (!removed.empty() && removed[w])) continue;
            seen[w] = true;
            stack.push_back(w);
        }
    }
    return reached == alive;
}

bool is_3_connected(const Graph& g) {
    if (g.n < 4 || !is_connected(g)) return false;
    std::vector<bool> removed(g.n, false);
    for (std::size_t a = 0; a < g.n; ++a) {
        for (std::size_t b = a + 1; b < g.n; ++b) {
            removed[a] = removed[b] = true;
            bool ok = is_connected(g, removed);
            removed[a] = removed[b] = false;
            if (!ok) return false;
        }
    }
    return true;
}

PlanarGraphDrawing convex_drawing(const Graph& g, std::vector<std::size_t> outer) {
    if (!is_3_connected(g)) throw Error(ErrorCode::Not3Connected, "graph is not 3-connected");
    if (g.edges.size() > 3 * g.n - 6) throw Error(ErrorCode::NotPlanar, "more than 3n - 6 edges");
    auto adj = g.adjacency();
    if (outer.empty()) {
        outer = find_peripheral_cycle(g, adj);
    } else if (!peripheral(g, adj, outer)) {
        throw Error(ErrorCode::InvalidOuterFace, "outer cycle is not an induced non-separating cycle");
    }

    PlanarGraphDrawing d;
    d.graph = g;
    for (std::size_t v = 0; v < g.n; ++v) d.labels.push_back(static_cast<long>(v));
    d.points.assign(g.n, Point2{});
    auto ring = circle_points(outer.size());
    std::vector<long> slot(g.n, -1);
    for (std::size_t i = 0; i < outer.size(); ++i) d.points[outer[i]] = ring[i];
    std::vector<std::size_t> inner;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (std::find(outer.begin(), outer.end(), v) != outer.end()) continue;
        slot[v] = static_cast<long>(inner.size());
        inner.push_back(v);
    }
    const std::size_t m = inner.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> bx(m, Rational(0)), by(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        auto v = inner[i];
        a[i][i] = static_cast<long>(adj[v].size());
        for (auto w : adj[v]) {
            if (slot[w] >= 0) {
                a[i][static_cast<std::size_t>(slot[w])] -= 1;
            } else {
                bx[i] += d.points[w].x;
                by[i] += d.points[w].y;
            }
        }
    }
    if (m > 0) {
        auto x = solve(a, bx);
        auto y = solve(a, by);
        for (std::size_t i = 0; i < m; ++i) d.points[inner[i]] = {x[i], y[i]};
    }
    d.outer = outer;
    auto problems = audit_drawing(d, true);
    if (!problems.empty()) throw Error(ErrorCode::NotPlanar, "barycentric drawing is not plane: " + problems.front());
    d.outer = outer_of(g, d.points);
    return d;
}

PlanarGraphDrawing drawing_from_coordinates(const Graph& g, std::vector<Point2> points, std::vector<long> labels) {
    if (points.size() != g.n) throw Error(ErrorCode::InvalidDomain, "one point per vertex required");
    if (!is_connected(g)) throw Error(ErrorCode::InvalidDomain, "graph is not connected");
    PlanarGraphDrawing d;
    d.graph = g;
    d.points = std::move(points);
    if (labels.empty()) {
        for (std::size_t v = 0; v < g.n; ++v) labels.push_back(static_cast<long>(v));
    }
    d.labels = std::move(labels);
    auto problems = audit_drawing(d, false);
    if (!problems.empty()) throw Error(ErrorCode::NotPlanar, problems.front());
    d.outer = outer_of(g, d.points);
    return d;
}

PlanarGraphDrawing graph_drawing(const GraphFile& file) {
    if (file.has_all_coords()) {
        std::vector<Point2> pts;
        for (const auto& p : file.coords) pts.push_back(*p);
        return drawing_from_coordinates(file.graph, pts, file.labels);
    }
    auto d = convex_drawing(file.graph, file.outer);
    d.labels = file.labels;
    return d;
}

std::vector<std::string> audit_drawing(const PlanarGraphDrawing& d, bool convex_faces) {
    std::vector<std::string> problems;
    const auto& P = d.points;
    const auto& E = d.graph.edges;
    for (std::size_t a = 0; a < d.graph.n; ++a) {
        for (std::size_t b = a + 1; b < d.graph.n; ++b) {
            if (P[a] == P[b]) problems.push_back("vertices " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
        }
    }
    if (!problems.empty()) return problems;
    for (std::size_t i = 0; i < E.size(); ++i) {
        auto [a, b] = E[i];
        for (std::size_t v = 0; v < d.graph.n; ++v) {
            if (v != a && v != b && on_segment(P[a], P[b], P[v])) {
                problems.push_back("vertex " + std::to_string(v) + " lies on an edge");
            }
        }
        for (std::size_t j = i + 1; j < E.size(); ++j) {
            auto [c, e] = E[j];
            if (a == c || a == e || b == c || b == e) continue;
            if (segments_intersect(P[a], P[b], P[c], P[e])) {
                problems.push_back("edges " + std::to_string(i) + " and " + std::to_string(j) + " cross");
            }
        }
    }
    if (!problems.empty() || !convex_faces) return problems;
    for (const auto& f : trace_faces(d.graph, P)) {
        if (face_area2(f, P) < 0) continue;
        const std::size_t k = f.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (orientation(P[f[i]], P[f[(i + 1) % k]], P[f[(i + 2) % k]]) != Orientation::CCW) {
                problems.push_back("face through vertex " + std::to_string(f[(i + 1) % k]) + " is not strictly convex");
                break;
            }
        }
    }
    return problems;
}

bool is_sharp(const PlanarGraphDrawing& d, std::size_t v) {
    auto adj = d.graph.adjacency();
    if (adj[v].size() != 3) return false;
    auto rot = rotation(d.graph, d.points);
    for (std::size_t i = 0; i < 3; ++i) {
        if (cross(d.points[rot[v][i]] - d.points[v], d.points[rot[v][(i + 1) % 3]] - d.points[v]) <= 0) return true;
    }
    return false;
}

SharpElimination eliminate_sharp(const PlanarGraphDrawing& d) {
    const auto& P = d.points;
    auto rot = rotation(d.graph, P);
    auto faces = trace_faces(d.graph, P);
    // face to the left of each directed edge
    std::map<std::pair<std::size_t, std::size_t>, bool> outer_side;
    for (const auto& f : faces) {
        bool outer = face_area2(f, P) < 0;
        for (std::size_t i = 0; i < f.size(); ++i) outer_side[{f[i], f[(i + 1) % f.size()]}] = outer;
    }
    struct Plan {
        std::size_t v, x, y, z;
    };
    std::vector<Plan> plans;
    for (std::size_t v = 0; v < d.graph.n; ++v) {
        if (!is_sharp(d, v)) continue;
        const auto& r = rot[v];
        std::size_t gap = 3;
        for (std::size_t i = 0; i < 3; ++i) {
            if (cross(P[r[i]] - P[v], P[r[(i + 1) % 3]] - P[v]) <= 0) gap = i;
        }
        std::size_t x = r[gap], y = r[(gap + 1) % 3], z = r[(gap + 2) % 3];
        // the corner from x counterclockwise to y belongs to the face through y -> v -> x
        if (!outer_side.at({v, x})) {
            throw Error(ErrorCode::InternalSharpVertex, "sharp vertex " + std::to_string(d.labels[v]) + " is not on the outer face");
        }
        plans.push_back({v, x, y, z});
    }
    if (plans.empty()) return {d, 0};

    long next_label = *std::max_element(d.labels.begin(), d.labels.end()) + 1;
    for (Rational q = 8; q <= Rational(1 << 20); q *= 2) {
        PlanarGraphDrawing out;
        std::vector<long> new_id(d.graph.n, -1);
        std::vector<bool> replaced(d.graph.n, false);
        for (const auto& p : plans) replaced[p.v] = true;
        for (std::size_t v = 0; v < d.graph.n; ++v) {
            if (replaced[v]) continue;
            new_id[v] = static_cast<long>(out.points.size());
            out.points.push_back(P[v]);
            out.labels.push_back(d.labels[v]);
        }
        long label = next_label;
        // v1, v2, v3 of each replaced vertex
        std::vector<std::array<std::size_t, 3>> chain(d.graph.n);
        for (const auto& p : plans) {
            const Point2& v = P[p.v];
            const Rational f = 1 / q;
            Point2 pos[3] = {v + f * (P[p.x] - v), v - f * (P[p.z] - v), v + f * (P[p.y] - v)};
            for (int k = 0; k < 3; ++k) {
                chain[p.v][k] = out.points.size();
                out.points.push_back(pos[k]);
                out.labels.push_back(label++);
            }
            out.graph.edges.emplace_back(chain[p.v][0], chain[p.v][1]);
            out.graph.edges.emplace_back(chain[p.v][1], chain[p.v][2]);
        }
        // endpoint of the original edge (a, b) at a, after replacement
        auto end_at = [&](std::size_t a, std::size_t b) -> std::size_t {
            if (!replaced[a]) return static_cast<std::size_t>(new_id[a]);
            for (const auto& p : plans) {
                if (p.v != a) continue;
                return b == p.x ? chain[a][0] : chain[a][2];
            }
            return 0;
        };
        for (auto [a, b] : d.graph.edges) out.graph.edges.emplace_back(end_at(a, b), end_at(b, a));
        out.graph.n = out.points.size();
        if (!audit_drawing(out, false).empty()) continue;
        out.outer = outer_of(out.graph, out.points);
        bool sharp = false;
        for (std::size_t v = 0; v < out.graph.n && !sharp; ++v) sharp = is_sharp(out, v);
        if (sharp) continue;
        return {out, plans.size()};
    }
    throw Error(ErrorCode::InternalSharpVertex, "could not place the replacement chains");
}

}  // namespace flipdist
