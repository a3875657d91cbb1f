#include "isingdrift/initcond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isingdrift {

namespace {

Rect window_for(const Curve& c, long N, long margin) {
    const auto [lo, hi] = c.bounds();
    const GridIndex a = locate(lo, N), b = locate(hi, N);
    return Rect{a.x - margin, a.y - margin, b.x + margin, b.y + margin};
}

double axis_gap(double c, long k, bool& open) {
    const double lo = static_cast<double>(k) - 0.5, hi = static_cast<double>(k) + 0.5;
    open = false;
    if (c < lo) return lo - c;
    if (c >= hi) {
        open = true;
        return c - hi;
    }
    return 0.0;
}

bool box_meets_ellipse(GridIndex g, long N, Vec2 center, double a, double b) {
    const double n = static_cast<double>(N);
    bool ox = false, oy = false;
    const double dx = axis_gap(center.x * n, g.x, ox) / (a * n);
    const double dy = axis_gap(center.y * n, g.y, oy) / (b * n);
    const double q = dx * dx + dy * dy;
    if (q < 1.0) return true;
    return q == 1.0 && !ox && !oy;
}

// Fill each row of the window with the (convex) run of boxes meeting the region.
template <class Meets>
void fill_convex_rows(SpinConfig& cfg, Vec2 center, double half_w, double half_h, Meets meets) {
    const Rect& w = cfg.window();
    const double n = static_cast<double>(cfg.scale());
    for (long j = w.y0; j <= w.y1; ++j) {
        bool open = false;
        const double dy = axis_gap(center.y * n, j, open) / (half_h * n);
        if (dy > 1.0) continue;
        const double span = half_w * n * std::sqrt(std::max(0.0, 1.0 - dy * dy));
        long lo = std::max(w.x0, static_cast<long>(std::floor(center.x * n - span)) - 2);
        long hi = std::min(w.x1, static_cast<long>(std::ceil(center.x * n + span)) + 2);
        while (lo <= hi && !meets(GridIndex{lo, j})) ++lo;
        while (hi >= lo && !meets(GridIndex{hi, j})) --hi;
        for (long i = lo; i <= hi; ++i) cfg.set(i, j, 1);
    }
}

// Liang-Barsky: does segment pq meet the closed rectangle [lo, hi]?
bool segment_meets_rect(Vec2 p, Vec2 q, Vec2 lo, Vec2 hi) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = q.x - p.x, dy = q.y - p.y;
    const double P[4] = {-dx, dx, -dy, dy};
    const double Q[4] = {p.x - lo.x, hi.x - p.x, p.y - lo.y, hi.y - p.y};
    for (int i = 0; i < 4; ++i) {
        if (P[i] == 0.0) {
            if (Q[i] < 0.0) return false;
        } else {
            const double t = Q[i] / P[i];
            if (P[i] < 0.0)
                t0 = std::max(t0, t);
            else
                t1 = std::min(t1, t);
            if (t0 > t1) return false;
        }
    }
    return true;
}

bool polygon_meets_rect(const Curve& poly, Vec2 lo, Vec2 hi) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (segment_meets_rect(v[i], v[(i + 1) % v.size()], lo, hi)) return true;
    return poly.contains({0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)});
}

}  // namespace

SpinConfig deterministic_config(const Curve& c, long N, long margin) {
    if (c.kind() == CurveKind::polygon) return polygon_config(c, N, margin);
    return deterministic_config(c, N, window_for(c, N, margin));
}

SpinConfig deterministic_config(const Curve& c, long N, const Rect& window) {
    if (!(c.signed_area() > 0.0)) throw std::invalid_argument("degenerate curve: zero enclosed area");
    if (c.kind() == CurveKind::polygon) return polygon_config(c, N, window);
    SpinConfig cfg(window, N);
    if (c.kind() == CurveKind::circle) {
        const Disk d{c.center(), c.radius()};
        fill_convex_rows(cfg, c.center(), c.radius(), c.radius(),
                         [&](GridIndex g) { return box_meets_disk(g, N, d); });
    } else {
        fill_convex_rows(cfg, c.center(), c.semi_a(), c.semi_b(), [&](GridIndex g) {
            return box_meets_ellipse(g, N, c.center(), c.semi_a(), c.semi_b());
        });
    }
    return cfg;
}

SpinConfig polygon_config(const Curve& polygon, long N, long margin) {
    if (polygon.kind() != CurveKind::polygon) throw std::invalid_argument("polygon_config needs a polygon");
    return polygon_config(polygon, N, window_for(polygon, N, margin));
}

SpinConfig polygon_config(const Curve& polygon, long N, const Rect& window) {
    if (polygon.kind() != CurveKind::polygon) throw std::invalid_argument("polygon_config needs a polygon");
    SpinConfig cfg(window, N);
    const double n = static_cast<double>(N);
    const double eps = 1e-9 / n;
    const auto [plo, phi] = polygon.bounds();
    for (long j = window.y0; j <= window.y1; ++j) {
        for (long i = window.x0; i <= window.x1; ++i) {
            const Vec2 lo = box_lo({i, j}, N), hi = box_hi({i, j}, N);
            if (hi.x < plo.x || lo.x > phi.x || hi.y < plo.y || lo.y > phi.y) continue;
            const bool closed = polygon_meets_rect(polygon, lo, hi);
            if (!closed) continue;
            const bool strict = polygon_meets_rect(polygon, {lo.x + eps, lo.y + eps}, {hi.x - eps, hi.y - eps});
            if (!strict)
                throw std::domain_error("polygon touches the boundary of lattice box (" + std::to_string(i) +
                                        "," + std::to_string(j) + ") only along its edge; offset the polygon");
            cfg.set(i, j, 1);
        }
    }
    return cfg;
}

HeightFunction spohn_sample(const GraphFunction& g, long N, Rng& rng, SpohnOptions opt) {
    if (N <= 0) throw std::invalid_argument("N must be positive");
    if (!(g.b > g.a)) throw std::invalid_argument("empty interval for the height function");
    const double n = static_cast<double>(N);
    HeightFunction h;
    h.N = N;
    h.k0 = static_cast<long>(std::ceil(g.a * n));
    const long k1 = static_cast<long>(std::floor(g.b * n));
    if (k1 < h.k0) throw std::invalid_argument("interval shorter than one lattice column");
    bool up = false, down = false;
    std::vector<double> slope;
    for (long k = h.k0; k < k1; ++k) {
        const double fp = g.fprime(static_cast<double>(k) / n);
        if (!std::isfinite(fp)) throw std::invalid_argument("unbounded slope in the Spohn sampler");
        up |= fp > 0.0;
        down |= fp < 0.0;
        slope.push_back(fp);
    }
    if (up && down && opt.require_monotone) throw std::invalid_argument("non-monotone f: the Spohn measure needs a monotone graph");
    h.orientation = (up && down) ? Orientation::mixed : (down ? Orientation::nonincreasing : Orientation::nondecreasing);
    h.h.reserve(slope.size() + 1);
    long cur = std::lround(g.f(g.a) * n);
    h.h.push_back(cur);
    for (double fp : slope) {
        const long l = geometric_failures(rng, std::abs(fp));
        cur += fp < 0.0 ? -l : l;
        h.h.push_back(cur);
    }
    return h;
}

SpinConfig height_to_config(const HeightFunction& h, Side side, const Rect& window) {
    if (h.k0 < window.x0 || h.k1() > window.x1) throw std::invalid_argument("window overflow: columns");
    SpinConfig cfg(window, h.N);
    for (long k = h.k0; k <= h.k1(); ++k) {
        const long v = h.at(k);
        if (side == Side::above) {
            if (v <= window.y0 || v > window.y1) throw std::out_of_range("window overflow: height leaves the window");
            for (long j = v; j <= window.y1; ++j) cfg.set(k, j, 1);
        } else {
            if (v < window.y0 || v >= window.y1) throw std::out_of_range("window overflow: height leaves the window");
            for (long j = window.y0; j <= v; ++j) cfg.set(k, j, 1);
        }
    }
    return cfg;
}

HeightFunction config_to_height(const SpinConfig& c, Side side, long k0, long k1) {
    HeightFunction h;
    h.N = c.scale();
    h.k0 = k0;
    const Rect& w = c.window();
    bool up = false, down = false;
    for (long k = k0; k <= k1; ++k) {
        long v = 0;
        if (side == Side::above) {
            v = w.y1 + 1;
            while (v - 1 >= w.y0 && c.spin(k, v - 1) == 1) --v;
        } else {
            v = w.y0 - 1;
            while (v + 1 <= w.y1 && c.spin(k, v + 1) == 1) ++v;
        }
        if (!h.h.empty()) {
            up |= v > h.h.back();
            down |= v < h.h.back();
        }
        h.h.push_back(v);
    }
    h.orientation = (up && down) ? Orientation::mixed : (down ? Orientation::nonincreasing : Orientation::nondecreasing);
    return h;
}

double ArcGraph::param_at(double x) const {
    double lo = t_lo, hi = t_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double xm = curve->point(mid).x;
        if ((xm < x) == (x_sense > 0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ArcGraph::f(double x) const { return curve->point(param_at(x)).y; }

double ArcGraph::fprime(double x) const {
    const Vec2 d = curve->d1(param_at(x));
    return d.y / d.x;
}

GraphFunction ArcGraph::as_function() const {
    GraphFunction g;
    g.a = a;
    g.b = b;
    g.f = [this](double x) { return f(x); };
    g.fprime = [this](double x) { return fprime(x); };
    return g;
}

ArcGraph arc_graph(const Curve& c, double t_s, double a, double b) {
    if (c.kind() == CurveKind::polygon) throw std::invalid_argument("arc graphs need a smooth curve");
    ArcGraph g;
    g.curve = &c;
    g.a = a;
    g.b = b;
    const Vec2 d = c.d1(t_s);
    if (d.x == 0.0) throw std::invalid_argument("vertical tangent at the probe: not a graph over x");
    g.x_sense = d.x > 0.0 ? 1 : -1;
    const double h = 1e-4;
    // March both ways until the horizontal range [a, b] is covered, insisting that
    // x(t) stays strictly monotone.
    auto march = [&](int dir, double target) {
        double t = t_s;
        for (int k = 0; k < 20000; ++k) {
            const double tn = t + dir * h;
            const Vec2 dn = c.d1(tn);
            if ((dn.x > 0.0 ? 1 : -1) != g.x_sense || dn.x == 0.0)
                throw std::invalid_argument("curve is not a graph over x on the probe range");
            const double x = c.point(tn).x;
            const bool past = (dir * g.x_sense > 0) ? x >= target : x <= target;
            t = tn;
            if (past) return t;
        }
        throw std::invalid_argument("curve arc does not cover the probe range");
    };
    const double left_target = g.x_sense > 0 ? a : b;
    const double right_target = g.x_sense > 0 ? b : a;
    g.t_lo = march(-1, left_target);
    g.t_hi = march(+1, right_target);
    return g;
}

SpohnProbeSampler::SpohnProbeSampler(const Curve& c, const Probe& p, double delta, long N, SpohnOptions opt)
    : n_(N) {
    const double n = static_cast<double>(N);
    double xmin = p.s.x - p.r, xmax = p.s.x + p.r, ymin = p.s.y - p.r, ymax = p.s.y + p.r;
    for (Vec2 q : {p.x0, p.x1}) {
        xmin = std::min(xmin, q.x - delta);
        xmax = std::max(xmax, q.x + delta);
        ymin = std::min(ymin, q.y - delta);
        ymax = std::max(ymax, q.y + delta);
    }
    const double pad = 6.0 / n;
    const ArcGraph arc = arc_graph(c, p.t_s, xmin - pad, xmax + pad);
    side_ = arc.plus_side();
    const GraphFunction g = arc.as_function();
    k0_ = static_cast<long>(std::ceil(g.a * n));
    const long k1 = static_cast<long>(std::floor(g.b * n));
    bool up = false, down = false;
    for (long k = k0_; k < k1; ++k) {
        const double fp = g.fprime(static_cast<double>(k) / n);
        up |= fp > 0.0;
        down |= fp < 0.0;
        slope_.push_back(fp);
    }
    if (up && down && opt.require_monotone)
        throw std::invalid_argument("non-monotone f: the curve is not a monotone graph near the probe");
    anchor_ = std::lround(g.f(g.a) * n);
    row_lo_ = static_cast<long>(std::floor(ymin * n)) - 4;
    row_hi_ = static_cast<long>(std::ceil(ymax * n)) + 4;
}

HeightFunction SpohnProbeSampler::sample_heights(Rng& rng) const {
    HeightFunction h;
    h.N = n_;
    h.k0 = k0_;
    h.h.reserve(slope_.size() + 1);
    long cur = anchor_;
    h.h.push_back(cur);
    for (double fp : slope_) {
        const long l = geometric_failures(rng, std::abs(fp));
        cur += fp < 0.0 ? -l : l;
        h.h.push_back(cur);
    }
    return h;
}

SpinConfig SpohnProbeSampler::config_from_heights(const HeightFunction& h) const {
    const auto [mn, mx] = std::minmax_element(h.h.begin(), h.h.end());
    const Rect window{k0_, std::min(*mn, row_lo_) - 4, k1(), std::max(*mx, row_hi_) + 4};
    return height_to_config(h, side_, window);
}

SpinConfig SpohnProbeSampler::sample(Rng& rng) const { return config_from_heights(sample_heights(rng)); }

}  // namespace isingdrift
