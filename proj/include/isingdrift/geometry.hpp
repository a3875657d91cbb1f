#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isingdrift/lattice.hpp"

namespace isingdrift {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Angle folded into [0, 2*pi).
double wrap_angle(double a);
// Parameter folded into [0, 1).
double wrap_param(double t);

enum class CurveKind { circle, ellipse, polygon };

// Closed counterclockwise curve parametrised on t in [0,1).  Polygons run over
// their edges at uniform parameter speed, edge k occupying [k/m, (k+1)/m).
class Curve {
public:
    static Curve circle(Vec2 center, double radius);
    static Curve ellipse(Vec2 center, double a, double b);
    static Curve polygon(std::vector<Vec2> vertices);

    CurveKind kind() const { return kind_; }
    Vec2 center() const { return c_; }
    double radius() const { return a_; }
    double semi_a() const { return a_; }
    double semi_b() const { return b_; }
    const std::vector<Vec2>& vertices() const { return v_; }

    Vec2 point(double t) const;
    Vec2 d1(double t) const;
    Vec2 d2(double t) const;
    // One-sided derivative for polygons (side < 0: the edge ending at t, side > 0: the
    // edge starting at t); identical to d1 for smooth curves.
    Vec2 d1_side(double t, int side) const;

    bool is_corner(double t) const;
    double length() const;
    double diameter() const;
    double signed_area() const;
    // Closed region bounded by the curve (boundary included up to rounding).
    bool contains(Vec2 p) const;
    // Bounding box [lo, hi] of the enclosed region.
    std::pair<Vec2, Vec2> bounds() const;
    std::string describe() const;

private:
    CurveKind kind_ = CurveKind::circle;
    Vec2 c_;
    double a_ = 1.0, b_ = 1.0;
    std::vector<Vec2> v_;
};

double tangent_angle(const Curve& c, double t);
double curvature(const Curve& c, double t);

// Parameter of the point whose counterclockwise tangent makes angle theta with the
// horizontal axis (circles and ellipses only).
double param_at_tangent_angle(const Curve& c, double theta);

struct Probe {
    double t_s = 0.0;
    double r = 0.0;
    Vec2 s;
    double t0 = 0.0, t1 = 0.0;
    Vec2 x0, x1;
    double theta0 = 0.0;  // half-tangent at x0, pointing away from s
    double theta1 = 0.0;  // half-tangent at x1, pointing away from s
    std::optional<Vec2> s_prime;
    double alpha1 = 0.0, alpha2 = 0.0;
};

Probe make_probe(const Curve& c, double t_s, double r);

// B(s,r), B(x0,alpha1), B(x1,alpha2).
std::vector<Disk> probe_disks(const Probe& p, double alpha1, double alpha2);
inline std::vector<Disk> probe_disks(const Probe& p) { return probe_disks(p, p.alpha1, p.alpha2); }

struct ChordRow {
    double r = 0.0;
    double sin_ratio = 0.0;  // sin(theta0 - theta1) / (2r)
    double cos_sum = 0.0;    // cos(theta0 + theta1)
};

std::vector<ChordRow> chord_curvature_limits(const Curve& c, double t_s,
                                             const std::vector<double>& r_ladder);

}  // namespace isingdrift
