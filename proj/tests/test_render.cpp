#include <doctest.h>

#include "flipdist/channel.hpp"
#include "flipdist/gadget.hpp"
#include "flipdist/render.hpp"
#include "support.hpp"

using namespace flipdist;
using testing_support::pt;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("channel figure has 12 triangles") {
    auto cd = channel_domain(figure_channel());
    auto t = left_inclined(cd);
    auto svg = render_svg(t);
    CHECK(count(svg, "class=\"triangle\"") == 12);
    CHECK(count(svg, "class=\"boundary\"") == 14);
    CHECK(count(svg, "class=\"edge\"") == 11);
    CHECK(count(svg, "class=\"vertex\"") == 14);
    CHECK(svg == render_svg(t));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);

    SvgOptions o;
    o.overlays = mouth_overlays(*cd.domain, {figure_channel()});
    CHECK(o.overlays.size() == 2);
    CHECK(count(render_svg(t, o), "class=\"mouth\"") == 2);
}

TEST_CASE("gadget lock is drawn distinctly") {
    auto g = build_vertex_gadget(gadget_frame(pt(0, 0), {pt(1, 0), pt(0, 1), pt(-1, -1)}, 1));
    SvgOptions o;
    o.locks = {g.lock()};
    o.labels = true;
    auto svg = render_svg(g.locked_pocket(), o);
    CHECK(count(svg, "class=\"lock\"") == 1);
    CHECK(count(svg, "class=\"triangle\"") == 8);
    CHECK(count(svg, "class=\"label\"") == 10);
}
