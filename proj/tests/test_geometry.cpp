#include "doctest.h"
#include "flipdist/error.hpp"
#include "support.hpp"

using namespace flipdist;
using testing_support::pt;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(format_rational(parse_rational("10/4")) == "5/2");
    CHECK(format_rational(parse_rational("-8/4")) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK(bit_size(Rational(5, 3)) == 5);
}

TEST_CASE("orientation") {
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == Orientation::CCW);
    CHECK(orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == Orientation::CW);
    CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == Orientation::Collinear);
    // a tiny rational perturbation is still detected
    Point2 p{Rational(1), Rational(1) + Rational(1, 1000000007)};
    CHECK(orientation(pt(0, 0), pt(2, 2), p) == Orientation::CCW);
}

TEST_CASE("segment predicates") {
    CHECK(segments_properly_cross(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)));
    CHECK_FALSE(segments_properly_cross(pt(0, 0), pt(2, 2), pt(2, 2), pt(3, 0)));
    CHECK_FALSE(segments_properly_cross(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)));
    CHECK_FALSE(segments_properly_cross(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)));
    CHECK(segments_intersect(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)));
    CHECK(on_segment(pt(0, 0), pt(4, 2), pt(2, 1)));
    CHECK_FALSE(on_segment(pt(0, 0), pt(4, 2), pt(6, 3)));
}

TEST_CASE("strictly convex quadrilateral") {
    CHECK(is_strictly_convex_quad(pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)));
    CHECK_FALSE(is_strictly_convex_quad(pt(0, 0), Point2{2, 0}, Point2{1, Rational(1, 2)}, pt(1, 2)));
    CHECK_FALSE(is_strictly_convex_quad(pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1)));
}

TEST_CASE("polygon location and hull") {
    std::vector<Point2> sq{pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)};
    CHECK(signed_area2(sq) == 8);
    CHECK(locate_in_polygon(sq, pt(1, 1)) == PolygonSide::Inside);
    CHECK(locate_in_polygon(sq, pt(2, 1)) == PolygonSide::Boundary);
    CHECK(locate_in_polygon(sq, pt(3, 1)) == PolygonSide::Outside);
    auto hull = convex_hull({pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1), pt(1, 3)});
    CHECK(hull.size() == 3);
}

TEST_CASE("half-plane intersection") {
    std::vector<HalfPlane> tri{{1, 0, 0}, {0, 1, 0}, {-1, -1, 1}};
    auto r = halfplane_intersection(tri);
    REQUIRE(r.status == RegionStatus::Bounded);
    CHECK(r.vertices.size() == 3);
    CHECK(interior_point(r) == Point2{Rational(1, 3), Rational(1, 3)});

    auto sq = halfplane_intersection({{1, 0, 0}, {0, 1, 0}, {-1, 0, 2}, {0, -1, 2}});
    CHECK(interior_point(sq) == pt(1, 1));

    auto empty = halfplane_intersection({{1, 0, 0}, {-1, 0, -1}});
    CHECK(empty.status == RegionStatus::Empty);
    CHECK_THROWS_AS(interior_point(empty), Error);

    // touching closures still have empty interior
    CHECK(halfplane_intersection({{1, 0, 0}, {-1, 0, 0}}).status == RegionStatus::Empty);

    auto quadrant = halfplane_intersection({{1, 0, 0}, {0, 1, 0}});
    CHECK(quadrant.status == RegionStatus::Unbounded);
    CHECK(quadrant.contains(interior_point(quadrant)));

    // duplicates fold to the tightest copy
    auto dup = halfplane_intersection({{1, 0, 0}, {2, 0, -2}, {0, 1, 0}, {-1, -1, 5}});
    CHECK(dup.half_planes.size() == 3);
    CHECK(dup.contains(interior_point(dup)));
}

TEST_CASE("interior_point lies strictly inside random bounded regions") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    int bounded = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<HalfPlane> hs;
        int m = 3 + trial % 4;
        for (int i = 0; i < m; ++i) {
            int a = coef(rng), b = coef(rng);
            if (a == 0 && b == 0) a = 1;
            hs.push_back({a, b, coef(rng) + 10});
        }
        auto r = halfplane_intersection(hs);
        if (r.status == RegionStatus::Empty) continue;
        bounded += r.status == RegionStatus::Bounded;
        auto p = interior_point(r);
        for (const auto& h : hs) CHECK(h.eval(p) > 0);
    }
    CHECK(bounded > 10);
}

TEST_CASE("ratio is canonical") {
    CHECK(ratio(6, 6) == Rational(1));
    CHECK(ratio(6, 6).get_den() == 1);
    CHECK(ratio(-4, 8).get_str() == "-1/2");
    CHECK(ratio(3, -9).get_str() == "-1/3");
    CHECK(ratio(2, 4) + ratio(1, 4) == Rational(3, 4));
}

TEST_CASE("simple_interior_point stays inside with few bits") {
    auto tri = halfplane_intersection({HalfPlane::left_of(pt(0, 0), pt(1, 0)), HalfPlane::left_of(pt(1, 0), pt(0, 1)),
                                       HalfPlane::left_of(pt(0, 1), pt(0, 0))});
    auto p = simple_interior_point(tri);
    CHECK(tri.contains(p));
    CHECK(p == Point2{Rational(11, 32), Rational(11, 32)});
    // a thin wedge with an awkward centroid
    auto thin = halfplane_intersection({HalfPlane::left_of(pt(0, 0), Point2{Rational(1000), Rational(1, 7)}),
                                        HalfPlane::left_of(Point2{Rational(1000), Rational(2, 7)}, pt(0, 0)),
                                        HalfPlane::left_of(pt(999, 1), pt(999, -1))});
    auto q = simple_interior_point(thin);
    CHECK(thin.contains(q));
    CHECK(bit_size(q) <= bit_size(interior_point(thin)));
}
