#pragma once

// Exact planar primitives over GMP rationals. No predicate here touches
// floating point.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flipdist {

/// Arbitrary-precision rational; GMP keeps every value in lowest terms
/// with a positive denominator.
using Rational = mpq_class;

/// Parses "p/q", "p", or "-p/q". Throws Error(ParseError) on bad input or q == 0.
Rational parse_rational(std::string_view text);

/// num / den in lowest terms (the two-argument mpq constructor does not
/// reduce, and exact comparison relies on canonical form).
Rational ratio(long num, long den);

/// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

/// Bits in numerator plus bits in denominator.
std::size_t bit_size(const Rational& r);

struct Point2 {
    Rational x;
    Rational y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

Point2 operator+(const Point2& a, const Point2& b);
Point2 operator-(const Point2& a, const Point2& b);
Point2 operator*(const Rational& s, const Point2& p);

Rational cross(const Point2& u, const Point2& v);
Rational dot(const Point2& u, const Point2& v);
Point2 midpoint(const Point2& a, const Point2& b);
Rational squared_length(const Point2& v);
std::size_t bit_size(const Point2& p);

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

/// Sign of the determinant of (q - p, r - p).
Orientation orientation(const Point2& p, const Point2& q, const Point2& r);

/// True iff the open segments ab and cd share a point interior to both.
bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// True iff r lies on the closed segment pq.
bool on_segment(const Point2& p, const Point2& q, const Point2& r);

/// True iff the closed segments intersect anywhere.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// All four turns of the cyclic quadrilateral a,b,c,d agree and none is collinear.
bool is_strictly_convex_quad(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Twice the signed area (positive for counterclockwise).
Rational signed_area2(std::span<const Point2> polygon);

enum class PolygonSide { Inside, Boundary, Outside };

/// Location of q relative to a simple polygon given as a vertex cycle.
PolygonSide locate_in_polygon(std::span<const Point2> polygon, const Point2& q);

/// Strictly convex counterclockwise hull; collinear boundary points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/// Open half-plane {a x + b y + c > 0} when strict, closed otherwise.
struct HalfPlane {
    Rational a;
    Rational b;
    Rational c;
    bool strict = true;

    /// Region to the left of the directed line p -> q.
    static HalfPlane left_of(const Point2& p, const Point2& q, bool strict = true);

    Rational eval(const Point2& p) const { return a * p.x + b * p.y + c; }
    bool contains(const Point2& p) const {
        auto v = eval(p);
        return strict ? v > 0 : v >= 0;
    }
    bool contains_closed(const Point2& p) const { return eval(p) >= 0; }
    HalfPlane complement() const { return {-a, -b, -c, !strict}; }
};

enum class RegionStatus { Bounded, Unbounded, Empty };

struct ConvexRegion {
    std::vector<HalfPlane> half_planes;
    /// Strictly convex counterclockwise cycle of the closure; empty when the
    /// region is unbounded or has empty interior.
    std::vector<Point2> vertices;
    RegionStatus status = RegionStatus::Empty;

    bool contains(const Point2& p) const;
    bool empty() const { return status == RegionStatus::Empty; }
};

/// Exact intersection. Duplicate and antiparallel constraints are folded
/// first. Regions with empty interior report Empty.
ConvexRegion halfplane_intersection(std::vector<HalfPlane> hs);

/// A point strictly inside every half-plane of r. Bounded regions use the
/// vertex average of the cycle. Unbounded regions are clipped to an axis box
/// that encloses every pairwise line intersection and one anchor point per
/// line (padded by one unit) and the vertex average of the clipped polygon
/// is returned. Throws Error(EmptyRegion) when r has no interior.
Point2 interior_point(const ConvexRegion& r);

/// interior_point rounded to the grid of step 2^j, for the largest j with
/// 2^j at most 1/32 of the smaller side of the region's bounding box
/// (unbounded: of the clipped box), refined until the point is strictly
/// inside. Keeps chained constructions from compounding bit sizes.
Point2 simple_interior_point(const ConvexRegion& r);

}  // namespace flipdist
