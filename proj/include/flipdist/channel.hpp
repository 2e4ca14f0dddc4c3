#pragma once

#include <cstddef>
#include <vector>

#include "flipdist/flip_search.hpp"
#include "flipdist/geometry.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

/// Two reflex chains joined by end edges. upper[0]-lower[0] is the left end,
/// upper[n-1]-lower[n-1] the right end. The polygon runs counterclockwise
/// as lower[0..n-1] then upper[n-1..0].
struct Channel {
    std::vector<Point2> upper;
    std::vector<Point2> lower;

    std::size_t n() const { return upper.size(); }
    std::vector<Point2> polygon() const;
};

enum class ChannelEnd { Left, Right };

/// Vertex ids of a channel inside some domain.
struct ChannelLayout {
    std::vector<VertexId> upper;
    std::vector<VertexId> lower;

    std::size_t n() const { return upper.size(); }
    /// The same channel seen after a half turn: upper'[i] = lower[n-1-i].
    ChannelLayout rotated() const;
};

/// A point p that must stay strictly inside the narrow mouth, or strictly
/// outside the wide mouth through the given chain's side line, at one end.
struct MouthRequirement {
    enum class Kind { InsideNarrow, OutsideWideUpper, OutsideWideLower };
    ChannelEnd end;
    Kind kind;
    Point2 p;
};

/// Places the 5 (in general n-2) inner points of each chain one at a time.
/// Each point is the interior point of: a box around the straight position
/// pushed toward the other chain by sag * k(n-1-k)/((n-1)/2)^2 of the
/// local width, the half-planes keeping the chain strictly reflex and
/// completable, and the half-planes keeping every requirement true.
/// Throws Error(InfeasibleSag) when a region is empty.
Channel build_channel(const Point2& upper_left, const Point2& lower_left, const Point2& upper_right,
                      const Point2& lower_right, const Rational& sag, std::size_t n = 7,
                      const std::vector<MouthRequirement>& requirements = {});

/// Literal coordinates of the drawn channel used in the tests and CLI:
/// chains dipping from y = +-40 at the ends to +-33 in the middle.
Channel figure_channel();

/// A symmetric channel with n vertices per chain on parabolic arcs.
Channel parabolic_channel(std::size_t n);

struct ChannelReport {
    bool ok() const { return problems.empty(); }
    std::vector<std::string> problems;
};

/// Strict reflexity, simple polygon, and mutual visibility of every
/// upper/lower pair.
ChannelReport check_channel(const Channel& c);

struct Mouths {
    ConvexRegion narrow;
    ConvexRegion wide;
};

/// Both mouths at one end, three half-planes each: strictly beyond the end
/// edge, and strictly inside the lines through the far-end chain segments
/// (narrow) or the near-end chain segments (wide).
Mouths mouths(const Channel& c, ChannelEnd end);
bool inside_narrow(const Channel& c, ChannelEnd end, const Point2& p);
bool inside_wide(const Channel& c, ChannelEnd end, const Point2& p);

/// Standalone domains: the channel polygon, optionally with caps placed
/// between upper[0] and lower[0] (left) or lower[n-1] and upper[n-1] (right).
/// Ids: lower 0..n-1, upper n..2n-1, then the left cap, then the right cap.
struct ChannelDomain {
    DomainPtr domain;
    ChannelLayout layout;
    std::optional<VertexId> left_cap;
    std::optional<VertexId> right_cap;
};
ChannelDomain channel_domain(const Channel& c, const std::optional<Point2>& left_cap = std::nullopt,
                             const std::optional<Point2>& right_cap = std::nullopt,
                             const std::vector<Point2>& extra_left = {});

/// Chain edges of the layout (not the end edges).
std::vector<Edge> chain_edges(const ChannelLayout& l);
/// Left-inclined diagonals: upper[0]-lower[j] for j >= 1, lower[n-1]-upper[i] for 1 <= i <= n-2.
std::vector<Edge> left_inclined_diagonals(const ChannelLayout& l);
std::vector<Edge> right_inclined_diagonals(const ChannelLayout& l);

/// Full triangulations of a channel domain. Cap triangles use the end edge
/// as the shared side. Throws Error(CapNotVisible) if a cap does not lie in
/// the narrow mouth of its end.
Triangulation left_inclined(const ChannelDomain& d);
Triangulation right_inclined(const ChannelDomain& d);
/// Every chain vertex joined to the left cap; the right end edge stays.
Triangulation canonical_capped(const ChannelDomain& d);

/// (n-1)^2 adjacent swaps turning the left-inclined lattice path into the
/// right-inclined one.
std::vector<FlipMove> uncapped_transform(const ChannelLayout& l);
/// 2n-2 flips from the left-inclined triangulation to the canonical one
/// with the cap at the left end of the layout.
std::vector<FlipMove> left_to_canonical(const ChannelLayout& l, VertexId cap);
std::vector<FlipMove> right_to_canonical(const ChannelLayout& l, VertexId cap);
/// left_to_canonical followed by the reverse of right_to_canonical.
std::vector<FlipMove> capped_transform(const ChannelLayout& l, VertexId cap);

/// Reverse order, each move reversed.
std::vector<FlipMove> reverse_moves(const std::vector<FlipMove>& moves);

}  // namespace flipdist
