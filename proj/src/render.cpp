#include "flipdist/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

struct Box {
    Rational lo_x, lo_y, hi_x, hi_y;
};

Box bounds(const std::vector<Point2>& pts) {
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const auto& p : pts) {
        if (p.x < b.lo_x) b.lo_x = p.x;
        if (p.y < b.lo_y) b.lo_y = p.y;
        if (p.x > b.hi_x) b.hi_x = p.x;
        if (p.y > b.hi_y) b.hi_y = p.y;
    }
    return b;
}

class Mapper {
public:
    Mapper(const Box& b, double width, int precision) : precision_(precision) {
        x0_ = b.lo_x.get_d();
        y1_ = b.hi_y.get_d();
        double w = Rational(b.hi_x - b.lo_x).get_d(), h = Rational(b.hi_y - b.lo_y).get_d();
        double span = std::max(w, h);
        if (span <= 0) span = 1;
        margin_ = width * 0.03;
        s_ = (width - 2 * margin_) / span;
        width_ = w * s_ + 2 * margin_;
        height_ = h * s_ + 2 * margin_;
    }

    std::string x(const Point2& p) const { return num((p.x.get_d() - x0_) * s_ + margin_); }
    std::string y(const Point2& p) const { return num((y1_ - p.y.get_d()) * s_ + margin_); }
    std::string xy(const Point2& p) const { return x(p) + "," + y(p); }
    std::string num(double v) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision_, v);
        std::string s = buf;
        if (s == "-0" || s.rfind("-0.", 0) == 0) {
            bool zero = s.find_first_not_of("-0.") == std::string::npos;
            if (zero) s.erase(0, 1);
        }
        return s;
    }
    double width() const { return width_; }
    double height() const { return height_; }

private:
    int precision_;
    double x0_ = 0, y1_ = 0, s_ = 1, margin_ = 0, width_ = 0, height_ = 0;
};

}  // namespace

std::string render_svg(const Triangulation& t, const SvgOptions& options) {
    const Domain& d = t.domain();
    if (d.size() == 0) throw Error(ErrorCode::InvalidInstance, "nothing to render");
    std::vector<Point2> all = d.points();
    for (const auto& poly : options.overlays) all.insert(all.end(), poly.begin(), poly.end());
    Mapper m(bounds(all), options.width, options.precision);
    const double stroke = options.width / 800.0;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << m.num(m.width()) << "\" height=\""
        << m.num(m.height()) << "\" viewBox=\"0 0 " << m.num(m.width()) << ' ' << m.num(m.height()) << "\">\n";
    out << "<style>\n"
        << ".triangle{fill:#eef2fa;stroke:none}\n"
        << ".edge{stroke:#4a5a7a;stroke-width:" << m.num(stroke) << ";fill:none}\n"
        << ".boundary{stroke:#111;stroke-width:" << m.num(2 * stroke) << ";fill:none}\n"
        << ".lock{stroke:#c0392b;stroke-width:" << m.num(3 * stroke) << ";stroke-dasharray:4,2;fill:none}\n"
        << ".mouth{fill:#f1c40f;fill-opacity:0.18;stroke:#d4ac0d;stroke-width:" << m.num(stroke) << "}\n"
        << ".vertex{fill:#111}\n"
        << ".label{font:" << m.num(8 * stroke) << "px sans-serif;fill:#333}\n"
        << "</style>\n";

    out << "<g id=\"overlays\">\n";
    for (const auto& poly : options.overlays) {
        out << "<polygon class=\"mouth\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) out << (i ? " " : "") << m.xy(poly[i]);
        out << "\"/>\n";
    }
    out << "</g>\n<g id=\"triangles\">\n";
    for (const auto& tri : t.triangles()) {
        out << "<polygon class=\"triangle\" points=\"" << m.xy(d.point(tri[0])) << ' ' << m.xy(d.point(tri[1])) << ' '
            << m.xy(d.point(tri[2])) << "\"/>\n";
    }
    std::vector<Edge> locks = options.locks;
    std::sort(locks.begin(), locks.end());
    out << "</g>\n<g id=\"edges\">\n";
    for (const auto& e : t.edges()) {
        const char* cls = std::binary_search(locks.begin(), locks.end(), e) ? "lock"
                          : d.is_boundary(e)                                ? "boundary"
                                                                            : "edge";
        out << "<line class=\"" << cls << "\" x1=\"" << m.x(d.point(e.u)) << "\" y1=\"" << m.y(d.point(e.u))
            << "\" x2=\"" << m.x(d.point(e.v)) << "\" y2=\"" << m.y(d.point(e.v)) << "\"/>\n";
    }
    out << "</g>\n<g id=\"vertices\">\n";
    for (VertexId v = 0; v < d.size(); ++v) {
        out << "<circle class=\"vertex\" cx=\"" << m.x(d.point(v)) << "\" cy=\"" << m.y(d.point(v)) << "\" r=\""
            << m.num(2 * stroke) << "\"/>\n";
        if (options.labels) {
            out << "<text class=\"label\" x=\"" << m.x(d.point(v)) << "\" y=\"" << m.y(d.point(v)) << "\">" << v
                << "</text>\n";
        }
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::vector<std::vector<Point2>> mouth_overlays(const Domain& d, const std::vector<Channel>& channels) {
    Box b = bounds(d.points());
    Rational pad = (b.hi_x - b.lo_x + b.hi_y - b.lo_y) / 8;
    Point2 lo{b.lo_x - pad, b.lo_y - pad}, hi{b.hi_x + pad, b.hi_y + pad};
    std::vector<HalfPlane> box{HalfPlane::left_of(lo, Point2{hi.x, lo.y}), HalfPlane::left_of(Point2{hi.x, lo.y}, hi),
                               HalfPlane::left_of(hi, Point2{lo.x, hi.y}), HalfPlane::left_of(Point2{lo.x, hi.y}, lo)};
    std::vector<std::vector<Point2>> out;
    for (const auto& c : channels) {
        for (auto end : {ChannelEnd::Left, ChannelEnd::Right}) {
            auto hs = mouths(c, end).narrow.half_planes;
            hs.insert(hs.end(), box.begin(), box.end());
            auto r = halfplane_intersection(hs);
            if (r.status == RegionStatus::Bounded) out.push_back(r.vertices);
        }
    }
    return out;
}

}  // namespace flipdist
