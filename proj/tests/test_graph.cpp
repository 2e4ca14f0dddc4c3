#include <doctest.h>

#include <bit>
#include <random>

#include "flipdist/error.hpp"
#include "flipdist/graph.hpp"
#include "flipdist/vertex_cover.hpp"
#include "support.hpp"

using namespace flipdist;
using testing_support::pt;

namespace {

Graph make_graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    return g;
}

Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph prism() { return make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}); }
Graph cube() {
    return make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

std::size_t brute_vc(const Graph& g) {
    std::size_t best = g.n;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
        bool ok = true;
        for (auto [a, b] : g.edges) {
            if (!(m >> a & 1) && !(m >> b & 1)) {
                ok = false;
                break;
            }
        }
        if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(m)));
    }
    return best;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("graph text format") {
    auto gf = parse_graph("# a triangle\nv 10 0 0\nv 20 4 0\nv 30 0 3/2\ne 10 20\ne 20 30\ne 30 10\nouter 10 20 30\n");
    CHECK(gf.graph.n == 3);
    CHECK(gf.graph.edges.size() == 3);
    CHECK(gf.labels == std::vector<long>{10, 20, 30});
    CHECK(gf.has_all_coords());
    CHECK(gf.coords[2]->y == Rational(3, 2));
    CHECK(gf.outer == std::vector<std::size_t>{0, 1, 2});

    auto bare = parse_graph("e 1 2\ne 2 3\n");
    CHECK(bare.graph.n == 3);
    CHECK_FALSE(bare.has_all_coords());

    CHECK(code_of([] { parse_graph("e 1 1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_graph("e 1 2\ne 2 1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_graph("v 1 2\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_graph("w 1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_graph("v x\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_graph("v 1 1/0 2\n"); }) == ErrorCode::ParseError);

    auto d = drawing_from_coordinates(gf.graph, {*gf.coords[0], *gf.coords[1], *gf.coords[2]}, gf.labels);
    auto again = parse_graph(format_graph(d));
    CHECK(again.labels == gf.labels);
    CHECK(again.graph.edges == gf.graph.edges);
    CHECK(format_graph(drawing_from_coordinates(again.graph, {*again.coords[0], *again.coords[1], *again.coords[2]},
                                                again.labels)) == format_graph(d));
}

TEST_CASE("connectivity") {
    CHECK(is_3_connected(k4()));
    CHECK(is_3_connected(prism()));
    CHECK(is_3_connected(cube()));
    CHECK_FALSE(is_3_connected(make_graph(3, {{0, 1}, {1, 2}, {2, 0}})));
    // two K4s glued along an edge: {0, 1} is a cut pair
    auto glued = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {4, 5}});
    CHECK_FALSE(is_3_connected(glued));
    CHECK(code_of([&] { convex_drawing(glued); }) == ErrorCode::Not3Connected);
}

TEST_CASE("convex drawings") {
    for (const auto& g : {k4(), prism(), cube()}) {
        auto d = convex_drawing(g);
        CHECK(audit_drawing(d, true).empty());
        auto faces = d.faces();
        CHECK(faces.size() == g.edges.size() - g.n + 2);  // Euler
        std::size_t outer_faces = 0;
        for (const auto& f : faces) {
            std::vector<Point2> poly;
            for (auto v : f) poly.push_back(d.points[v]);
            if (signed_area2(poly) < 0) ++outer_faces;
        }
        CHECK(outer_faces == 1);
        CHECK(signed_area2([&] {
                  std::vector<Point2> poly;
                  for (auto v : d.outer) poly.push_back(d.points[v]);
                  return poly;
              }()) > 0);
    }
    // K4 with a given outer triangle: the fourth vertex lands strictly inside
    auto d = convex_drawing(k4(), {0, 1, 2});
    std::vector<Point2> tri{d.points[d.outer[0]], d.points[d.outer[1]], d.points[d.outer[2]]};
    CHECK(locate_in_polygon(tri, d.points[3]) == PolygonSide::Inside);
    CHECK(d.faces().size() == 4);
    CHECK(convex_drawing(prism(), {0, 1, 4, 3}).outer.size() == 4);

    CHECK(code_of([] { convex_drawing(prism(), {0, 1}); }) == ErrorCode::InvalidOuterFace);
    CHECK(code_of([] { convex_drawing(prism(), {0, 1, 2, 5, 4, 3}); }) == ErrorCode::InvalidOuterFace);
    auto k5 = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(code_of([&] { convex_drawing(k5); }) == ErrorCode::NotPlanar);
    auto k33 = make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    CHECK(code_of([&] { convex_drawing(k33); }) == ErrorCode::NotPlanar);
}

TEST_CASE("drawings from coordinates") {
    auto tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    auto d = drawing_from_coordinates(tri, {pt(0, 0), pt(0, 4), pt(4, 0)});
    CHECK(d.outer.size() == 3);
    CHECK(orientation(d.points[d.outer[0]], d.points[d.outer[1]], d.points[d.outer[2]]) == Orientation::CCW);
    // crossing diagonals of a square
    auto x = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
    CHECK(code_of([&] { drawing_from_coordinates(x, {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}); }) ==
          ErrorCode::NotPlanar);
    auto path_through = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(code_of([&] { drawing_from_coordinates(path_through, {pt(0, 0), pt(1, 0), pt(2, 0)}); }) ==
          ErrorCode::NotPlanar);
}

TEST_CASE("sharp vertices") {
    auto tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    auto flat = drawing_from_coordinates(tri, {pt(0, 0), pt(4, 0), pt(0, 4)});
    auto same = eliminate_sharp(flat);
    CHECK(same.t == 0);
    CHECK(same.drawing.points == flat.points);

    for (const auto& g : {k4(), prism()}) {
        auto d = convex_drawing(g);
        std::size_t sharp = 0;
        for (std::size_t v = 0; v < g.n; ++v) sharp += is_sharp(d, v) ? 1 : 0;
        CHECK(sharp == d.outer.size());
        auto r = eliminate_sharp(d);
        CHECK(r.t == d.outer.size());
        CHECK(r.drawing.graph.n == g.n + 2 * r.t);
        CHECK(r.drawing.graph.edges.size() == g.edges.size() + 2 * r.t);
        CHECK(audit_drawing(r.drawing, false).empty());
        for (std::size_t v = 0; v < r.drawing.graph.n; ++v) {
            CHECK_FALSE(is_sharp(r.drawing, v));
            auto deg = r.drawing.graph.degree(v);
            CHECK((deg == 2 || deg == 3));
        }
    }
    auto k4t = eliminate_sharp(convex_drawing(k4()));
    CHECK(k4t.drawing.graph.n == 10);
    CHECK(k4t.drawing.graph.edges.size() == 12);

    // vertex 3's neighbors all lie below it: its reflex corner faces an inner face
    auto g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {3, 4}, {0, 4}, {1, 4}});
    auto d = drawing_from_coordinates(g, {pt(0, 0), pt(10, 0), pt(5, 10), pt(5, 5), pt(5, 2)});
    CHECK(is_sharp(d, 3));
    CHECK(code_of([&] { eliminate_sharp(d); }) == ErrorCode::InternalSharpVertex);
}

TEST_CASE("exact vertex cover") {
    CHECK(exact_vc(k4()).size == 3);
    CHECK(exact_vc(make_graph(3, {{0, 1}, {1, 2}, {2, 0}})).size == 2);
    CHECK(exact_vc(make_graph(5, {})).size == 0);
    CHECK(exact_vc(prism()).size == 4);
    CHECK(exact_vc(cube()).size == 4);
    CHECK(code_of([] { exact_vc(make_graph(41, {})); }) == ErrorCode::CapExceeded);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 12;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::uniform_int_distribution<int> coin(0, 99);
        int density = coin(rng);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (coin(rng) < density) edges.emplace_back(a, b);
            }
        }
        auto g = make_graph(n, edges);
        auto r = exact_vc(g);
        CHECK(r.size == brute_vc(g));
        CHECK(r.witness.size() == r.size);
        CHECK(is_cover(g, r.witness));
    }
}

TEST_CASE("cover checks") {
    auto g = k4();
    CHECK(is_cover(g, {0, 1, 2}));
    CHECK(is_cover(g, {1, 2, 3}));
    auto miss = uncovered_edge(g, {0, 1});
    REQUIRE(miss.has_value());
    CHECK(*miss == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK_FALSE(is_cover(make_graph(3, {{0, 1}, {1, 2}, {2, 0}}), {0}));
}

TEST_CASE("sharp-vertex elimination preserves the cover offset") {
    for (const auto& g : {k4(), prism()}) {
        auto r = eliminate_sharp(convex_drawing(g));
        CHECK(exact_vc(r.drawing.graph).size == exact_vc(g).size + r.t);
    }
}
