#include "doctest.h"
#include "flipdist/error.hpp"
#include "support.hpp"

using namespace flipdist;
using namespace testing_support;

TEST_CASE("lower bound") {
    auto d = polygon_domain(convex_polygon(4));
    auto a = fan(d, 0), b = fan(d, 1);
    CHECK(lower_bound(a, a) == 0);
    CHECK(lower_bound(a, b) == 1);
    auto r = exact_distance(a, b);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.distance == 1);
    CHECK(exact_distance(a, a).distance == 0);
    CHECK(exact_distance(a, a).witness.moves.empty());
}

TEST_CASE("flip graphs of convex polygons") {
    auto p5 = enumerate_flip_graph(polygon_domain(convex_polygon(5)));
    CHECK(p5.size() == 5);
    for (const auto& a : p5.adjacency()) CHECK(a.size() == 2);
    // connected 2-regular graph on 5 nodes is the 5-cycle
    auto dist = bfs(p5, 0);
    CHECK(*std::max_element(dist.begin(), dist.end()) == 2);

    auto p6 = enumerate_flip_graph(polygon_domain(convex_polygon(6)));
    CHECK(p6.size() == 14);
    auto p8 = enumerate_flip_graph(polygon_domain(convex_polygon(8)));
    CHECK(p8.size() == 132);
    CHECK_THROWS_AS(enumerate_flip_graph(polygon_domain(convex_polygon(8)), 100), Error);
}

TEST_CASE("DP counter agrees with enumeration on random simple polygons") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        auto poly = random_star_polygon(9, rng);
        auto g = enumerate_flip_graph(polygon_domain(poly));
        CHECK(g.size() == count_polygon_triangulations(poly));
    }
    CHECK(count_polygon_triangulations(convex_polygon(7)) == 42);
}

TEST_CASE("hexagon fans: search agrees with BFS") {
    auto d = polygon_domain(convex_polygon(6));
    auto a = fan(d, 0), b = fan(d, 3);
    auto g = enumerate_flip_graph(d);
    auto ia = g.index_of(a), ib = g.index_of(b);
    REQUIRE(ia);
    REQUIRE(ib);
    int oracle = bfs(g, *ia)[*ib];
    auto r = exact_distance(a, b);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(static_cast<int>(r.distance) == oracle);
    CHECK(r.witness.moves.size() == r.distance);
    CHECK(replay(a, r.witness.moves) == b);
    CHECK(r.witness.start_key == canonical_key(a));
}

TEST_CASE("budget") {
    auto d = polygon_domain(convex_polygon(7));
    auto a = fan(d, 0), b = fan(d, 3);
    auto full = exact_distance(a, b);
    REQUIRE(full.status == SearchStatus::Found);
    auto cut = exact_distance(a, b, SearchOptions{full.distance - 1});
    CHECK(cut.status == SearchStatus::ExceedsBudget);
    auto exact = exact_distance(a, b, SearchOptions{full.distance});
    CHECK(exact.status == SearchStatus::Found);
    CHECK(exact.distance == full.distance);
}

TEST_CASE("all pairs on a random 8-gon: oracle, symmetry, triangle inequality, greedy") {
    std::mt19937 rng(5);
    auto poly = random_star_polygon(8, rng);
    auto d = polygon_domain(poly);
    auto g = enumerate_flip_graph(d);
    std::vector<std::vector<int>> oracle;
    for (std::size_t i = 0; i < g.size(); ++i) oracle.push_back(bfs(g, i));
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto ti = g.triangulation(i), tj = g.triangulation(j);
            auto r = exact_distance(ti, tj);
            REQUIRE(r.status == SearchStatus::Found);
            CHECK(static_cast<int>(r.distance) == oracle[i][j]);
            CHECK(lower_bound(ti, tj) <= r.distance);
            if ((i + j) % 7 == 0) {
                CHECK(replay(ti, r.witness.moves) == tj);
                auto greedy = greedy_upper_bound(ti, tj);
                CHECK(greedy.size() >= r.distance);
                CHECK(replay(ti, greedy.moves) == tj);
            }
        }
    }
    for (std::size_t a = 0; a < g.size(); a += 3)
        for (std::size_t b = 0; b < g.size(); b += 2)
            for (std::size_t c = 0; c < g.size(); c += 5) CHECK(oracle[a][c] <= oracle[a][b] + oracle[b][c]);
}

TEST_CASE("greedy on convex octagon") {
    std::mt19937 rng(9);
    auto d = polygon_domain(convex_polygon(8));
    auto g = enumerate_flip_graph(d);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = g.triangulation(rng() % g.size());
        auto b = g.triangulation(rng() % g.size());
        auto s = greedy_upper_bound(a, b);
        CHECK(replay(a, s.moves) == b);
        CHECK(s.size() >= exact_distance(a, b).distance);
    }
    auto a = g.triangulation(0);
    CHECK(greedy_upper_bound(a, a).moves.empty());
}

TEST_CASE("point sets with interior points") {
    std::mt19937 rng(21);
    std::vector<Point2> pts{pt(0, 0), pt(12, 0), pt(12, 12), pt(0, 12), pt(3, 4), pt(8, 3), pt(6, 8), pt(4, 9)};
    auto d = Domain::point_set(pts);
    auto g = enumerate_flip_graph(d);
    CHECK(g.size() > 10);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t i = rng() % g.size(), j = rng() % g.size();
        auto r = exact_distance(g.triangulation(i), g.triangulation(j));
        CHECK(static_cast<int>(r.distance) == bfs(g, i)[j]);
        auto back = exact_distance(g.triangulation(j), g.triangulation(i));
        CHECK(back.distance == r.distance);
    }
}

TEST_CASE("replay reports the first illegal move") {
    auto d = polygon_domain(convex_polygon(5));
    auto a = fan(d, 0);
    auto m = legal_flips(a).front();
    std::vector<FlipMove> moves{m, m};
    CHECK(try_replay(a, moves) == std::optional<std::size_t>(1));
    CHECK_THROWS_AS(replay(a, moves), Error);
    CHECK_FALSE(try_replay(a, {m}).has_value());
}
