#include "flipdist/geometry.hpp"

#include <algorithm>
#include <map>

#include "flipdist/error.hpp"

namespace flipdist {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return Error(ErrorCode::ParseError, "bad rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) { return r.get_str(10); }

std::size_t bit_size(const Rational& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }

Rational ratio(long num, long den) {
    if (den == 0) throw Error(ErrorCode::InvalidDomain, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
Rational dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }
Point2 midpoint(const Point2& a, const Point2& b) {
    return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}
Rational squared_length(const Point2& v) { return dot(v, v); }
std::size_t bit_size(const Point2& p) { return std::max(bit_size(p.x), bit_size(p.y)); }

Orientation orientation(const Point2& p, const Point2& q, const Point2& r) {
    Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    int s = sgn(det);
    return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

static int osign(const Point2& p, const Point2& q, const Point2& r) {
    return static_cast<int>(orientation(p, q, r));
}

bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = osign(a, b, c), o2 = osign(a, b, d);
    if (o1 == 0 || o2 == 0 || o1 == o2) return false;
    int o3 = osign(c, d, a), o4 = osign(c, d, b);
    return o3 != 0 && o4 != 0 && o3 != o4;
}

bool on_segment(const Point2& p, const Point2& q, const Point2& r) {
    if (osign(p, q, r) != 0) return false;
    bool in_x = (p.x <= r.x && r.x <= q.x) || (q.x <= r.x && r.x <= p.x);
    bool in_y = (p.y <= r.y && r.y <= q.y) || (q.y <= r.y && r.y <= p.y);
    return in_x && in_y;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = osign(a, b, c), o2 = osign(a, b, d), o3 = osign(c, d, a), o4 = osign(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

bool is_strictly_convex_quad(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const Point2* q[4] = {&a, &b, &c, &d};
    int first = 0;
    for (int i = 0; i < 4; ++i) {
        int s = osign(*q[i], *q[(i + 1) % 4], *q[(i + 2) % 4]);
        if (s == 0) return false;
        if (i == 0) first = s;
        else if (s != first) return false;
    }
    return true;
}

Rational signed_area2(std::span<const Point2> polygon) {
    Rational total = 0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        total += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
    }
    return total;
}

PolygonSide locate_in_polygon(std::span<const Point2> polygon, const Point2& q) {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[j];
        if (on_segment(a, b, q)) return PolygonSide::Boundary;
        if ((a.y > q.y) != (b.y > q.y)) {
            // x-coordinate of the crossing compared without division
            Rational lhs = (q.x - a.x) * (b.y - a.y);
            Rational rhs = (b.x - a.x) * (q.y - a.y);
            bool left = (b.y > a.y) ? lhs < rhs : lhs > rhs;
            if (left) inside = !inside;
        }
    }
    return inside ? PolygonSide::Inside : PolygonSide::Outside;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && osign(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && osign(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

HalfPlane HalfPlane::left_of(const Point2& p, const Point2& q, bool strict) {
    // cross(q - p, x - p) > 0
    Rational a = -(q.y - p.y);
    Rational b = q.x - p.x;
    Rational c = -(a * p.x + b * p.y);
    return {a, b, c, strict};
}

bool ConvexRegion::contains(const Point2& p) const {
    return std::all_of(half_planes.begin(), half_planes.end(),
                       [&](const HalfPlane& h) { return h.contains(p); });
}

namespace {

// Scale so the leading nonzero of (a, b) has magnitude one.
HalfPlane normalized(const HalfPlane& h) {
    Rational s = h.a != 0 ? Rational(abs(h.a)) : Rational(abs(h.b));
    return {h.a / s, h.b / s, h.c / s, h.strict};
}

std::vector<HalfPlane> canonicalize(const std::vector<HalfPlane>& hs) {
    std::map<std::pair<Rational, Rational>, HalfPlane> tightest;
    for (const auto& raw : hs) {
        if (raw.a == 0 && raw.b == 0) {
            throw Error(ErrorCode::InvalidDomain, "half-plane with zero normal");
        }
        HalfPlane h = normalized(raw);
        auto key = std::make_pair(h.a, h.b);
        auto it = tightest.find(key);
        if (it == tightest.end()) {
            tightest.emplace(key, h);
        } else if (h.c < it->second.c) {
            it->second = h;
        } else if (h.c == it->second.c) {
            it->second.strict = it->second.strict || h.strict;
        }
    }
    std::vector<HalfPlane> out;
    out.reserve(tightest.size());
    for (auto& [key, h] : tightest) out.push_back(h);
    return out;
}

std::optional<Point2> line_intersection(const HalfPlane& h1, const HalfPlane& h2) {
    Rational det = h1.a * h2.b - h1.b * h2.a;
    if (det == 0) return std::nullopt;
    Rational x = (h1.b * h2.c - h2.b * h1.c) / det;
    Rational y = (h2.a * h1.c - h1.a * h2.c) / det;
    return Point2{x, y};
}

Point2 anchor(const HalfPlane& h) {
    Rational n2 = h.a * h.a + h.b * h.b;
    return {-h.c * h.a / n2, -h.c * h.b / n2};
}

std::vector<Point2> closed_vertices(const std::vector<HalfPlane>& hs) {
    std::vector<Point2> cand;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            auto p = line_intersection(hs[i], hs[j]);
            if (!p) continue;
            bool ok = std::all_of(hs.begin(), hs.end(),
                                  [&](const HalfPlane& h) { return h.contains_closed(*p); });
            if (ok) cand.push_back(*p);
        }
    }
    return convex_hull(std::move(cand));
}

bool has_recession_direction(const std::vector<HalfPlane>& hs) {
    for (const auto& h : hs) {
        for (int sign : {1, -1}) {
            Point2 d{Rational(sign * -h.b), Rational(sign * h.a)};
            bool ok = std::all_of(hs.begin(), hs.end(),
                                  [&](const HalfPlane& g) { return g.a * d.x + g.b * d.y >= 0; });
            if (ok) return true;
        }
    }
    return false;
}

std::vector<HalfPlane> with_bounding_box(const std::vector<HalfPlane>& hs) {
    Rational m = 0;
    auto grow = [&](const Point2& p) {
        Rational ax = abs(p.x), ay = abs(p.y);
        if (ax > m) m = ax;
        if (ay > m) m = ay;
    };
    for (std::size_t i = 0; i < hs.size(); ++i) {
        grow(anchor(hs[i]));
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            if (auto p = line_intersection(hs[i], hs[j])) grow(*p);
        }
    }
    m += 1;
    auto boxed = hs;
    boxed.push_back({1, 0, m, false});
    boxed.push_back({-1, 0, m, false});
    boxed.push_back({0, 1, m, false});
    boxed.push_back({0, -1, m, false});
    return boxed;
}

Point2 vertex_average(const std::vector<Point2>& vs) {
    Point2 sum{0, 0};
    for (const auto& v : vs) sum = sum + v;
    return Rational(1, static_cast<unsigned long>(vs.size())) * sum;
}

}  // namespace

ConvexRegion halfplane_intersection(std::vector<HalfPlane> hs) {
    if (hs.empty()) throw Error(ErrorCode::InvalidDomain, "empty half-plane list");
    ConvexRegion region;
    region.half_planes = canonicalize(hs);
    auto clipped = closed_vertices(with_bounding_box(region.half_planes));
    if (clipped.size() < 3) {
        region.status = RegionStatus::Empty;
        return region;
    }
    if (has_recession_direction(region.half_planes)) {
        region.status = RegionStatus::Unbounded;
        return region;
    }
    region.vertices = closed_vertices(region.half_planes);
    region.status = region.vertices.size() >= 3 ? RegionStatus::Bounded : RegionStatus::Empty;
    if (region.status == RegionStatus::Empty) region.vertices.clear();
    return region;
}

Point2 interior_point(const ConvexRegion& r) {
    if (r.status == RegionStatus::Empty) {
        throw Error(ErrorCode::EmptyRegion, "region has no interior");
    }
    if (r.status == RegionStatus::Bounded) return vertex_average(r.vertices);
    auto clipped = closed_vertices(with_bounding_box(r.half_planes));
    if (clipped.size() < 3) throw Error(ErrorCode::EmptyRegion, "region has no interior");
    return vertex_average(clipped);
}

namespace {

Rational round_to(const Rational& x, const Rational& step) {
    Rational q = x / step + Rational(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f) * step;
}

}  // namespace

Point2 simple_interior_point(const ConvexRegion& r) {
    const Point2 p = interior_point(r);
    const auto& cycle = r.status == RegionStatus::Bounded ? r.vertices : closed_vertices(with_bounding_box(r.half_planes));
    Rational lo_x = cycle[0].x, hi_x = cycle[0].x, lo_y = cycle[0].y, hi_y = cycle[0].y;
    for (const auto& v : cycle) {
        if (v.x < lo_x) lo_x = v.x;
        if (v.x > hi_x) hi_x = v.x;
        if (v.y < lo_y) lo_y = v.y;
        if (v.y > hi_y) hi_y = v.y;
    }
    Rational side = hi_x - lo_x < hi_y - lo_y ? Rational(hi_x - lo_x) : Rational(hi_y - lo_y);
    Rational step = 1;
    while (step > side / 32) step /= 2;
    while (2 * step <= side / 32) step *= 2;
    for (;; step /= 2) {
        Point2 q{round_to(p.x, step), round_to(p.y, step)};
        if (r.contains(q)) return q;
    }
}

}  // namespace flipdist
