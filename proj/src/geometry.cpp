#include "isingdrift/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isingdrift {

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w -= kTwoPi;
    return w;
}

double wrap_param(double t) {
    double w = t - std::floor(t);
    if (w >= 1.0) w -= 1.0;
    return w;
}

namespace {

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
    const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_seg = [](Vec2 a, Vec2 b, Vec2 p) {
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
               p.y <= std::max(a.y, b.y);
    };
    if (d1 == 0 && on_seg(q1, q2, p1)) return true;
    if (d2 == 0 && on_seg(q1, q2, p2)) return true;
    if (d3 == 0 && on_seg(p1, p2, q1)) return true;
    if (d4 == 0 && on_seg(p1, p2, q2)) return true;
    return false;
}

}  // namespace

Curve Curve::circle(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("degenerate curve: circle radius must be > 0");
    Curve c;
    c.kind_ = CurveKind::circle;
    c.c_ = center;
    c.a_ = c.b_ = radius;
    return c;
}

Curve Curve::ellipse(Vec2 center, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("degenerate curve: ellipse axes must be > 0");
    Curve c;
    c.kind_ = CurveKind::ellipse;
    c.c_ = center;
    c.a_ = a;
    c.b_ = b;
    return c;
}

Curve Curve::polygon(std::vector<Vec2> vertices) {
    const std::size_t m = vertices.size();
    if (m < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (vertices[i].x == vertices[j].x && vertices[i].y == vertices[j].y)
                throw std::invalid_argument("polygon vertices must be distinct");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            if (segments_intersect(vertices[i], vertices[(i + 1) % m], vertices[j], vertices[(j + 1) % m]))
                throw std::invalid_argument("polygon is not simple");
        }
    Curve c;
    c.kind_ = CurveKind::polygon;
    c.v_ = std::move(vertices);
    if (!(c.signed_area() > 0.0))
        throw std::invalid_argument("polygon must be counterclockwise with positive area");
    return c;
}

Vec2 Curve::point(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::circle:
        case CurveKind::ellipse:
            return {c_.x + a_ * std::cos(kTwoPi * t), c_.y + b_ * std::sin(kTwoPi * t)};
        case CurveKind::polygon: {
            const std::size_t m = v_.size();
            const double u = t * static_cast<double>(m);
            std::size_t k = std::min(m - 1, static_cast<std::size_t>(std::floor(u)));
            const double f = u - static_cast<double>(k);
            const Vec2 a = v_[k], b = v_[(k + 1) % m];
            return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
        }
    }
    return {};
}

Vec2 Curve::d1_side(double t, int side) const {
    if (kind_ != CurveKind::polygon) return d1(t);
    const std::size_t m = v_.size();
    const double u = wrap_param(t) * static_cast<double>(m);
    long k = static_cast<long>(std::floor(u));
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-12) k = static_cast<long>(nearest) - (side < 0 ? 1 : 0);
    k = ((k % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m);
    const Vec2 a = v_[static_cast<std::size_t>(k)], b = v_[static_cast<std::size_t>(k + 1) % m];
    const double md = static_cast<double>(m);
    return {md * (b.x - a.x), md * (b.y - a.y)};
}

Vec2 Curve::d1(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::circle:
        case CurveKind::ellipse:
            return {-kTwoPi * a_ * std::sin(kTwoPi * t), kTwoPi * b_ * std::cos(kTwoPi * t)};
        case CurveKind::polygon:
            if (is_corner(t)) throw std::domain_error("tangent undefined at corner");
            return d1_side(t, 1);
    }
    return {};
}

Vec2 Curve::d2(double t) const {
    t = wrap_param(t);
    switch (kind_) {
        case CurveKind::circle:
        case CurveKind::ellipse: {
            const double w2 = kTwoPi * kTwoPi;
            return {-w2 * a_ * std::cos(kTwoPi * t), -w2 * b_ * std::sin(kTwoPi * t)};
        }
        case CurveKind::polygon:
            if (is_corner(t)) throw std::domain_error("curvature undefined at corner");
            return {0.0, 0.0};
    }
    return {};
}

bool Curve::is_corner(double t) const {
    if (kind_ != CurveKind::polygon) return false;
    const double u = wrap_param(t) * static_cast<double>(v_.size());
    return std::abs(u - std::round(u)) < 1e-12;
}

double Curve::length() const {
    switch (kind_) {
        case CurveKind::circle:
            return kTwoPi * a_;
        case CurveKind::ellipse: {
            // Composite Simpson on the speed; smooth and periodic, so this converges fast.
            const int n = 4096;
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += norm(d1((i + 0.5) / n));
            return sum / n;
        }
        case CurveKind::polygon: {
            double L = 0.0;
            for (std::size_t i = 0; i < v_.size(); ++i) L += norm(v_[(i + 1) % v_.size()] - v_[i]);
            return L;
        }
    }
    return 0.0;
}

double Curve::diameter() const {
    switch (kind_) {
        case CurveKind::circle:
            return 2.0 * a_;
        case CurveKind::ellipse:
            return 2.0 * std::max(a_, b_);
        case CurveKind::polygon: {
            double d = 0.0;
            for (const Vec2& p : v_)
                for (const Vec2& q : v_) d = std::max(d, norm(p - q));
            return d;
        }
    }
    return 0.0;
}

double Curve::signed_area() const {
    switch (kind_) {
        case CurveKind::circle:
        case CurveKind::ellipse:
            return kPi * a_ * b_;
        case CurveKind::polygon: {
            double s = 0.0;
            for (std::size_t i = 0; i < v_.size(); ++i) s += cross(v_[i], v_[(i + 1) % v_.size()]);
            return 0.5 * s;
        }
    }
    return 0.0;
}

bool Curve::contains(Vec2 p) const {
    switch (kind_) {
        case CurveKind::circle:
        case CurveKind::ellipse: {
            const double u = (p.x - c_.x) / a_, w = (p.y - c_.y) / b_;
            return u * u + w * w <= 1.0;
        }
        case CurveKind::polygon: {
            bool inside = false;
            const std::size_t m = v_.size();
            for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
                const Vec2 a = v_[i], b = v_[j];
                if (((a.y > p.y) != (b.y > p.y)) &&
                    (p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x))
                    inside = !inside;
            }
            return inside;
        }
    }
    return false;
}

std::pair<Vec2, Vec2> Curve::bounds() const {
    if (kind_ != CurveKind::polygon) return {{c_.x - a_, c_.y - b_}, {c_.x + a_, c_.y + b_}};
    Vec2 lo = v_[0], hi = v_[0];
    for (const Vec2& p : v_) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
}

std::string Curve::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case CurveKind::circle:
            os << "circle(c=(" << c_.x << "," << c_.y << "), R=" << a_ << ")";
            break;
        case CurveKind::ellipse:
            os << "ellipse(c=(" << c_.x << "," << c_.y << "), a=" << a_ << ", b=" << b_ << ")";
            break;
        case CurveKind::polygon:
            os << "polygon(" << v_.size() << " vertices)";
            break;
    }
    return os.str();
}

double tangent_angle(const Curve& c, double t) {
    const Vec2 d = c.d1(t);
    return wrap_angle(std::atan2(d.y, d.x));
}

double curvature(const Curve& c, double t) {
    const Vec2 a = c.d1(t), b = c.d2(t);
    return cross(a, b) / std::pow(a.x * a.x + a.y * a.y, 1.5);
}

double param_at_tangent_angle(const Curve& c, double theta) {
    switch (c.kind()) {
        case CurveKind::circle:
            return wrap_param((theta - kPi / 2.0) / kTwoPi);
        case CurveKind::ellipse: {
            // Tangent (-a sin u, b cos u) parallel to (cos theta, sin theta).
            const double u = std::atan2(-std::cos(theta) / c.semi_a(), std::sin(theta) / c.semi_b());
            return wrap_param(u / kTwoPi);
        }
        case CurveKind::polygon:
            break;
    }
    throw std::invalid_argument("tangent-angle lookup needs a smooth curve");
}

namespace {

double bisect_crossing(const Curve& c, Vec2 s, double r, double t_in, double t_out) {
    // t_in is inside the disk (g < 0), t_out outside (g >= 0); parameters may be
    // unwrapped (outside [0,1)).
    for (int it = 0; it < 200 && std::abs(t_out - t_in) > 1e-15; ++it) {
        const double mid = 0.5 * (t_in + t_out);
        if (norm(c.point(mid) - s) - r < 0.0)
            t_in = mid;
        else
            t_out = mid;
    }
    return wrap_param(0.5 * (t_in + t_out));
}

}  // namespace

Probe make_probe(const Curve& c, double t_s, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("probe radius invalid: r must be > 0");
    Probe p;
    p.t_s = wrap_param(t_s);
    p.r = r;
    p.s = c.point(p.t_s);
    const double len = c.length();
    const double h = 0.1 * r / len;
    const long steps = static_cast<long>(std::ceil(1.0 / h));
    auto g = [&](double t) { return norm(c.point(t) - p.s) - r; };

    // Count sign changes around the whole loop; exactly two are allowed.
    int crossings = 0;
    double prev = g(p.t_s);
    for (long k = 1; k <= steps; ++k) {
        const double cur = g(p.t_s + static_cast<double>(k) / static_cast<double>(steps));
        if ((prev < 0.0) != (cur < 0.0)) ++crossings;
        prev = cur;
    }
    if (crossings != 2) throw std::invalid_argument("probe radius invalid: circle of radius r meets the curve " + std::to_string(crossings) + " times");

    double t_prev = p.t_s;
    for (long k = 1;; ++k) {
        const double t = p.t_s - static_cast<double>(k) * h;
        if (g(t) >= 0.0) {
            p.t0 = bisect_crossing(c, p.s, r, t_prev, t);
            break;
        }
        t_prev = t;
        if (k > steps) throw std::invalid_argument("probe radius invalid");
    }
    t_prev = p.t_s;
    for (long k = 1;; ++k) {
        const double t = p.t_s + static_cast<double>(k) * h;
        if (g(t) >= 0.0) {
            p.t1 = bisect_crossing(c, p.s, r, t_prev, t);
            break;
        }
        t_prev = t;
        if (k > steps) throw std::invalid_argument("probe radius invalid");
    }
    p.x0 = c.point(p.t0);
    p.x1 = c.point(p.t1);
    const Vec2 d0 = -1.0 * c.d1_side(p.t0, -1);
    const Vec2 d1 = c.d1_side(p.t1, +1);
    p.theta0 = wrap_angle(std::atan2(d0.y, d0.x));
    p.theta1 = wrap_angle(std::atan2(d1.y, d1.x));

    const double den = cross(d0, d1);
    if (std::abs(den) > 1e-14 * norm(d0) * norm(d1)) {
        const double lam = cross(p.x1 - p.x0, d1) / den;
        p.s_prime = p.x0 + lam * d0;
    }
    return p;
}

std::vector<Disk> probe_disks(const Probe& p, double alpha1, double alpha2) {
    return {Disk{p.s, p.r}, Disk{p.x0, alpha1}, Disk{p.x1, alpha2}};
}

std::vector<ChordRow> chord_curvature_limits(const Curve& c, double t_s,
                                             const std::vector<double>& r_ladder) {
    std::vector<ChordRow> rows;
    for (double r : r_ladder) {
        const Probe p = make_probe(c, t_s, r);
        rows.push_back({r, std::sin(p.theta0 - p.theta1) / (2.0 * r), std::cos(p.theta0 + p.theta1)});
    }
    return rows;
}

}  // namespace isingdrift
