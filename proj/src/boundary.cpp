#include "isingdrift/boundary.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <stdexcept>

namespace isingdrift {

namespace {

Step left_of(Step d) { return {-d.dy, d.dx}; }
Step right_of(Step d) { return {d.dy, -d.dx}; }

GridIndex quadrant_box(GridIndex v, int qx, int qy) {
    return {v.x + (qx > 0 ? 0 : -1), v.y + (qy > 0 ? 0 : -1)};
}

GridIndex advance(GridIndex v, Step d) { return {v.x + d.dx, v.y + d.dy}; }

}  // namespace

GridIndex left_box(GridIndex v, Step d) {
    const Step l = left_of(d);
    return quadrant_box(v, d.dx + l.dx, d.dy + l.dy);
}

GridIndex right_box(GridIndex v, Step d) {
    const Step r = right_of(d);
    return quadrant_box(v, d.dx + r.dx, d.dy + r.dy);
}

GridIndex turn_box(GridIndex v, Step a, Step b) { return quadrant_box(v, b.dx - a.dx, b.dy - a.dy); }

std::vector<GridIndex> LatticePath::vertices() const {
    std::vector<GridIndex> out;
    out.reserve(steps.size() + 1);
    GridIndex v = start;
    out.push_back(v);
    for (Step s : steps) {
        v = advance(v, s);
        out.push_back(v);
    }
    return out;
}

bool LatticePath::is_path() const {
    const auto vs = vertices();
    if (vs.size() < 2) return true;
    std::set<GridIndex> starts(vs.begin(), vs.end() - 1), ends(vs.begin() + 1, vs.end());
    return starts.size() == vs.size() - 1 && ends.size() == vs.size() - 1;
}

LatticePath LatticePath::subpath(std::size_t first, std::size_t count) const {
    LatticePath p;
    p.N = N;
    GridIndex v = start;
    for (std::size_t i = 0; i < first; ++i) v = advance(v, steps[i % steps.size()]);
    p.start = v;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = closed ? (first + i) % steps.size() : first + i;
        if (k >= steps.size()) throw std::out_of_range("subpath beyond the end of an open path");
        p.steps.push_back(steps[k]);
    }
    return p;
}

LatticePath trace_boundary(const SpinConfig& c) {
    const auto bbox = c.plus_bbox();
    if (!bbox) throw std::invalid_argument("non-simply-connected droplet: no plus site");
    c.check_margin(2);

    // Diagonal pinches make the contour ambiguous; reject them up front.
    for (long y = bbox->y0; y <= bbox->y1 + 1; ++y)
        for (long x = bbox->x0; x <= bbox->x1 + 1; ++x) {
            const int ne = c.spin(x, y), nw = c.spin(x - 1, y), sw = c.spin(x - 1, y - 1), se = c.spin(x, y - 1);
            if (ne == sw && nw == se && ne != nw)
                throw std::invalid_argument("non-simply-connected droplet: diagonal pinch at vertex (" +
                                            std::to_string(x) + "," + std::to_string(y) + ")");
        }

    GridIndex first{0, 0};
    bool found = false;
    for (long y = bbox->y0; y <= bbox->y1 && !found; ++y)
        for (long x = bbox->x0; x <= bbox->x1; ++x)
            if (c.spin(x, y) == 1) {
                first = {x, y};
                found = true;
                break;
            }

    LatticePath path;
    path.N = c.scale();
    path.closed = true;
    path.start = first;  // lower-left corner of the lowest-leftmost plus box
    GridIndex v = first;
    Step d = kEast;
    const std::size_t limit = 4 * static_cast<std::size_t>(c.window().width() + 2) *
                              static_cast<std::size_t>(c.window().height() + 2);
    long twice_area = 0;
    for (;;) {
        path.steps.push_back(d);
        const GridIndex next = advance(v, d);
        twice_area += v.x * next.y - next.x * v.y;
        v = next;
        const bool al = c.spin(left_box(v, d)) == 1;
        const bool ar = c.spin(right_box(v, d)) == 1;
        if (!al && ar) throw std::logic_error("contour tracer met a pinch");
        if (!al)
            d = left_of(d);
        else if (ar)
            d = right_of(d);
        if (v == first && d == kEast) break;
        if (path.steps.size() > limit) throw std::logic_error("contour tracer did not close");
    }
    if (twice_area != 2 * c.plus_count())
        throw std::invalid_argument("non-simply-connected droplet: contour encloses " +
                                    std::to_string(twice_area / 2) + " cells but there are " +
                                    std::to_string(c.plus_count()) + " plus sites");
    return path;
}

LatticePath clip_to_region(const LatticePath& path, const BoxSet& region) {
    const std::size_t n = path.steps.size();
    if (n == 0) throw std::invalid_argument("empty path");
    std::vector<char> in(n);
    GridIndex v = path.start;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Step d = path.steps[i];
        in[i] = region.contains(left_box(v, d)) || region.contains(right_box(v, d));
        count += in[i];
        v = advance(v, d);
    }
    if (count == 0) throw std::invalid_argument("probe region misses the boundary");
    if (path.closed && count == n) return path;

    std::size_t runs = 0, run_start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool prev_in = path.closed ? in[(i + n - 1) % n] : (i > 0 && in[i - 1]);
        if (in[i] && !prev_in) {
            ++runs;
            run_start = i;
        }
    }
    if (runs != 1) throw std::invalid_argument("probe clipped boundary is disconnected");
    LatticePath out = path.subpath(run_start, count);
    out.closed = false;
    return out;
}

LatticePath trim_to_region_turns(const LatticePath& path, const BoxSet& region) {
    const auto vs = path.vertices();
    const std::size_t n = path.steps.size();
    auto turn_inside = [&](std::size_t i) {  // turn between steps i and i+1 (cyclic)
        const Step a = path.steps[i], b = path.steps[(i + 1) % n];
        return region.contains(turn_box(vs[i + 1], a, b));
    };
    auto is_turn = [&](std::size_t i) { return wedge(path.steps[i], path.steps[(i + 1) % n]) != 0; };

    if (path.closed) {
        for (std::size_t i = 0; i < n; ++i)
            if (is_turn(i) && !turn_inside(i))
                throw std::invalid_argument("probe clipped boundary is disconnected: corner outside the region");
        return path;
    }
    std::size_t lo = 0, hi = n;  // keep steps [lo, hi)
    for (;;) {
        std::size_t i = lo;
        while (i + 1 < hi && !is_turn(i)) ++i;
        if (i + 1 >= hi || turn_inside(i)) break;
        lo = i + 1;
    }
    for (;;) {
        if (hi < lo + 2) break;
        std::size_t i = hi - 2;
        while (i > lo && !is_turn(i)) --i;
        if (!is_turn(i) || turn_inside(i)) break;
        hi = i + 1;
    }
    for (std::size_t i = lo; i + 1 < hi; ++i)
        if (is_turn(i) && !turn_inside(i))
            throw std::invalid_argument("probe clipped boundary is disconnected: corner outside the region");
    LatticePath out = path.subpath(lo, hi - lo);
    out.closed = false;
    return out;
}

TurnCount turn_counts(const LatticePath& path) {
    TurnCount t;
    const std::size_t n = path.steps.size();
    if (n == 0) throw std::invalid_argument("turn count of an empty path");
    const std::size_t pairs = path.closed ? n : n - 1;
    for (std::size_t i = 0; i < pairs; ++i) {
        const Step a = path.steps[i], b = path.steps[(i + 1) % n];
        const int w = wedge(a, b);
        if (w > 0)
            ++t.plus;
        else if (w < 0)
            ++t.minus;
        else if (a.dx != b.dx || a.dy != b.dy)
            throw std::invalid_argument("backtracking path");
    }
    return t;
}

std::vector<LatticePath> monotone_decompose(const LatticePath& path) {
    std::vector<LatticePath> out;
    if (path.steps.empty()) return out;
    LatticePath cur;
    cur.N = path.N;
    cur.start = path.start;
    int hs = 0, vsense = 0;
    GridIndex v = path.start;
    for (Step s : path.steps) {
        const bool clash = (s.dx != 0 && hs != 0 && s.dx != hs) || (s.dy != 0 && vsense != 0 && s.dy != vsense);
        if (clash) {
            out.push_back(cur);
            cur.steps.clear();
            cur.start = v;
            hs = vsense = 0;
        }
        if (s.dx != 0) hs = s.dx;
        if (s.dy != 0) vsense = s.dy;
        cur.steps.push_back(s);
        v = advance(v, s);
    }
    out.push_back(cur);
    return out;
}

bool is_monotone(const LatticePath& path) { return monotone_decompose(path).size() <= 1; }

long corner_count(const SpinConfig& c, Vec2 center, double delta, Vec2 excluded_center, double excluded_radius) {
    const long N = c.scale();
    const BoxSet ball = discretize({Disk{center, delta}}, N);
    const double n = static_cast<double>(N);
    long count = 0;
    for (const GridIndex& g : ball.members()) {
        if (c.spin(g) != 1 || opposite_neighbors(c, g) != 2) continue;
        const Vec2 y{static_cast<double>(g.x) / n, static_cast<double>(g.y) / n};
        if (norm(y - excluded_center) > excluded_radius) ++count;
    }
    return count;
}

long corner_count_columns(const SpinConfig& c, long k_lo, long k_hi) {
    long count = 0;
    const Rect& w = c.window();
    for (long k = std::max(k_lo, w.x0); k <= std::min(k_hi, w.x1); ++k)
        for (long j = w.y0; j <= w.y1; ++j)
            if (c.spin(k, j) == 1 && opposite_neighbors(c, k, j) == 2) ++count;
    return count;
}

EdgeCounts edge_counts(const LatticePath& path) {
    EdgeCounts e;
    for (Step s : path.steps) {
        ++e.total;
        if (s.dx != 0)
            ++e.horizontal;
        else
            ++e.vertical;
    }
    return e;
}

}  // namespace isingdrift
