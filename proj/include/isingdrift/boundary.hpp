#pragma once

#include <vector>

#include "isingdrift/lattice.hpp"

namespace isingdrift {

// Integer step vector (one of (+-1,0), (0,+-1)) in units of 1/N.
struct Step {
    int dx = 0;
    int dy = 0;
    bool operator==(const Step&) const = default;
};

inline constexpr Step kEast{1, 0}, kNorth{0, 1}, kWest{-1, 0}, kSouth{0, -1};

// [u ^ v] = (u.i)(v.j) - (u.j)(v.i)
inline int wedge(Step u, Step v) { return u.dx * v.dy - u.dy * v.dx; }

// Path on the dual lattice.  Vertex (X, Y) is the point ((X - 1/2)/N, (Y - 1/2)/N),
// i.e. the lower-left corner of the box of site (X, Y).
struct LatticePath {
    long N = 1;
    GridIndex start;
    std::vector<Step> steps;
    bool closed = false;

    std::size_t size() const { return steps.size(); }
    std::vector<GridIndex> vertices() const;  // start plus the endpoint of every step
    // Distinct starting points and distinct endpoints.
    bool is_path() const;
    // The sub-path of steps [first, first + count) (cyclic when closed); open.
    LatticePath subpath(std::size_t first, std::size_t count) const;
};

// Box on the left (resp. right) of the edge `step` leaving vertex v.
GridIndex left_box(GridIndex v, Step step);
GridIndex right_box(GridIndex v, Step step);
// Box inside the corner at vertex v between an incoming step a and outgoing step b
// (the plus box for a left turn, the minus box for a right turn).
GridIndex turn_box(GridIndex v, Step a, Step b);

// N+ counts turns with wedge(v_i, v_{i+1}) = +1, N- those with wedge = -1.  With the
// plus phase on the left, a convex plus corner contributes to N+.
struct TurnCount {
    long plus = 0;
    long minus = 0;
};

// Counterclockwise contour of the plus droplet, plus phase on the left.  Requires a
// non-empty, 4-connected, simply connected plus set without diagonal pinches.
LatticePath trace_boundary(const SpinConfig& c);

// Maximal run of steps having at least one adjacent box in the region.  A path
// entirely inside comes back closed.  Throws when there is no such step or when the
// steps inside form more than one run.
LatticePath clip_to_region(const LatticePath& path, const BoxSet& region);

// Drop leading and trailing steps of an open path while the turn at that end has its
// corner box outside the region; afterwards every remaining turn is checked to have its
// corner box inside (throws otherwise).  Closed paths are only checked.
LatticePath trim_to_region_turns(const LatticePath& path, const BoxSet& region);

TurnCount turn_counts(const LatticePath& path);

std::vector<LatticePath> monotone_decompose(const LatticePath& path);
bool is_monotone(const LatticePath& path);

// Plus sites with exactly two opposite neighbours among boxes of B(center, delta)_N
// whose centre lies outside the closed ball B(s, radius).
long corner_count(const SpinConfig& c, Vec2 center, double delta, Vec2 excluded_center,
                  double excluded_radius);
// Plus sites with exactly two opposite neighbours in columns k_lo..k_hi (all rows).
long corner_count_columns(const SpinConfig& c, long k_lo, long k_hi);

struct EdgeCounts {
    long total = 0;
    long horizontal = 0;
    long vertical = 0;
};
EdgeCounts edge_counts(const LatticePath& path);

}  // namespace isingdrift
