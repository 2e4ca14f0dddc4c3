#include "doctest.h"
#include "flipdist/channel.hpp"
#include "flipdist/error.hpp"
#include "support.hpp"

using namespace flipdist;
using namespace testing_support;

namespace {

bool convex_interior_edge(const Triangulation& t, Edge e) {
    auto a = t.apex(e.u, e.v, 1);
    auto b = t.apex(e.u, e.v, -1);
    if (!a || !b) return false;
    const auto& P = t.domain().points();
    // diagonals of the quadrilateral cross properly
    return segments_properly_cross(P[e.u], P[e.v], P[*a], P[*b]);
}

}  // namespace

TEST_CASE("figure channel invariants") {
    auto c = figure_channel();
    auto report = check_channel(c);
    CHECK(report.ok());
    auto d = channel_domain(c);
    int visible = 0;
    for (auto u : d.layout.upper)
        for (auto l : d.layout.lower) visible += d.domain->edge_inside(u, l);
    CHECK(visible == 49);
    // no chain vertex sees a non-neighbor on its own chain
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = i + 2; j < 7; ++j) CHECK_FALSE(d.domain->edge_inside(d.layout.upper[i], d.layout.upper[j]));
}

TEST_CASE("left and right inclined triangulations") {
    auto d = channel_domain(figure_channel());
    auto left = left_inclined(d);
    auto right = right_inclined(d);
    CHECK(validate(left).ok());
    CHECK(validate(right).ok());
    CHECK(left.triangles().size() == 12);
    CHECK(left_inclined_diagonals(d.layout).size() == 11);
    auto [only_left, only_right] = edge_difference(left, right);
    CHECK(only_left.size() == 11);
    CHECK(only_right.size() == 11);

    // exactly one chain-chain edge of the left-inclined triangulation is flippable
    std::vector<Edge> flippable;
    for (const auto& e : left.edges()) {
        if (d.domain->is_boundary(e)) continue;
        if (convex_interior_edge(left, e)) flippable.push_back(e);
    }
    REQUIRE(flippable.size() == 1);
    CHECK(flippable[0] == Edge(d.layout.upper[0], d.layout.lower[6]));
    auto legal = legal_flips(left);
    REQUIRE(legal.size() == 1);
    CHECK(legal[0].removed == flippable[0]);
    CHECK(lower_bound(left, right) == 11);
}

TEST_CASE("lattice-path transform has (n-1)^2 moves") {
    for (std::size_t n = 3; n <= 7; ++n) {
        auto c = n == 7 ? figure_channel() : parabolic_channel(n);
        CHECK(check_channel(c).ok());
        auto d = channel_domain(c);
        auto moves = uncapped_transform(d.layout);
        CHECK(moves.size() == (n - 1) * (n - 1));
        CHECK(replay(left_inclined(d), moves) == right_inclined(d));
    }
}

TEST_CASE("small channels: exact distance is (n-1)^2") {
    for (std::size_t n = 3; n <= 5; ++n) {
        auto d = channel_domain(parabolic_channel(n));
        auto r = exact_distance(left_inclined(d), right_inclined(d), SearchOptions{100});
        REQUIRE(r.status == SearchStatus::Found);
        CHECK(r.distance == (n - 1) * (n - 1));
    }
}

TEST_CASE("capped channel scripts") {
    auto c = figure_channel();
    auto d = channel_domain(c, pt(-80, 0));
    auto left = left_inclined(d);
    auto right = right_inclined(d);
    auto canon = canonical_capped(d);
    CHECK(validate(left).ok());
    CHECK(validate(right).ok());
    CHECK(validate(canon).ok());
    auto to_canon = left_to_canonical(d.layout, *d.left_cap);
    CHECK(to_canon.size() == 12);
    CHECK(replay(left, to_canon) == canon);
    auto from_right = right_to_canonical(d.layout, *d.left_cap);
    CHECK(replay(right, from_right) == canon);
    auto full = capped_transform(d.layout, *d.left_cap);
    CHECK(full.size() == 24);
    CHECK(replay(left, full) == right);
    CHECK(replay(right, reverse_moves(full)) == left);
}

TEST_CASE("right-end cap through the rotated layout") {
    auto c = figure_channel();
    auto d = channel_domain(c, std::nullopt, pt(80, 0));
    auto left = left_inclined(d);
    auto right = right_inclined(d);
    CHECK(validate(left).ok());
    auto moves = capped_transform(d.layout.rotated(), *d.right_cap);
    CHECK(replay(left, moves) == right);
}

TEST_CASE("cap outside the narrow mouth is rejected") {
    auto c = figure_channel();
    auto d = channel_domain(c, pt(-62, 30));
    CHECK_FALSE(inside_narrow(c, ChannelEnd::Left, pt(-62, 30)));
    CHECK_THROWS_AS(left_inclined(d), Error);
}

TEST_CASE("mouths") {
    auto c = figure_channel();
    for (auto end : {ChannelEnd::Left, ChannelEnd::Right}) {
        auto m = mouths(c, end);
        REQUIRE(m.narrow.status == RegionStatus::Bounded);
        CHECK(m.wide.status == RegionStatus::Unbounded);
        for (const auto& v : m.narrow.vertices) {
            for (const auto& h : m.wide.half_planes) CHECK(h.contains_closed(v));
        }
        CHECK(m.wide.contains(interior_point(m.narrow)));
    }
    CHECK(inside_narrow(c, ChannelEnd::Left, pt(-80, 0)));
    CHECK(inside_narrow(c, ChannelEnd::Right, pt(80, 0)));
    CHECK_FALSE(inside_narrow(c, ChannelEnd::Left, pt(80, 0)));
    CHECK(inside_wide(c, ChannelEnd::Left, pt(-80, 20)));
    CHECK_FALSE(inside_narrow(c, ChannelEnd::Left, pt(-80, 20)));
    CHECK_FALSE(inside_wide(c, ChannelEnd::Left, pt(-80, 60)));
}

TEST_CASE("visibility from the mouths") {
    auto c = figure_channel();
    auto capped = channel_domain(c, pt(-80, 0));
    int seen = 0;
    for (auto v : capped.layout.upper) seen += capped.domain->edge_inside(*capped.left_cap, v);
    for (auto v : capped.layout.lower) seen += capped.domain->edge_inside(*capped.left_cap, v);
    CHECK(seen == 14);

    // above the upper wide-mouth line: no upper vertex past the first is visible,
    // so the point cannot be the apex of a triangle on an upper chain edge
    auto outside = channel_domain(c, std::nullopt, std::nullopt, {pt(-80, 60), pt(-80, -60)});
    const VertexId above = 14, below = 15;
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(outside.domain->edge_inside(above, outside.layout.upper[i]) == (i == 0));
        CHECK(outside.domain->edge_inside(below, outside.layout.lower[i]) == (i == 0));
    }
    auto t = left_inclined(outside);
    CHECK(validate(t).ok());
}

TEST_CASE("build_channel") {
    auto c = build_channel(pt(-60, 40), pt(-60, -40), pt(60, 40), pt(60, -40), Rational(1, 8));
    CHECK(check_channel(c).ok());
    CHECK(c.upper.front() == pt(-60, 40));
    CHECK(c.lower.back() == pt(60, -40));
    auto d = channel_domain(c);
    CHECK(replay(left_inclined(d), uncapped_transform(d.layout)) == right_inclined(d));

    CHECK_THROWS_AS(build_channel(pt(-60, 40), pt(-60, -40), pt(60, 40), pt(60, -40), Rational(0)), Error);
    try {
        build_channel(pt(-60, 40), pt(-60, -40), pt(60, 40), pt(60, -40), Rational(0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleSag);
    }

    // tapered, tilted ends
    auto t = build_channel(pt(0, 3), pt(1, 0), pt(50, 42), pt(52, 38), Rational(1, 32));
    CHECK(check_channel(t).ok());

    // requirements survive the sag
    std::vector<MouthRequirement> reqs{
        {ChannelEnd::Left, MouthRequirement::Kind::InsideNarrow, pt(-70, 0)},
        {ChannelEnd::Left, MouthRequirement::Kind::OutsideWideUpper, pt(-70, 41)},
        {ChannelEnd::Right, MouthRequirement::Kind::OutsideWideLower, pt(70, -43)},
    };
    auto r = build_channel(pt(-60, 40), pt(-60, -40), pt(60, 40), pt(60, -40), Rational(1, 16), 7, reqs);
    CHECK(inside_narrow(r, ChannelEnd::Left, pt(-70, 0)));
    CHECK_FALSE(inside_wide(r, ChannelEnd::Left, pt(-70, 41)));
    CHECK_FALSE(inside_wide(r, ChannelEnd::Right, pt(70, -43)));
}
