#include "isingdrift/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

#include "isingdrift/geometry.hpp"

namespace isingdrift {

int sg(double x) { return (x > 0.0) - (x < 0.0); }

int sg_tan(double theta) { return sg(std::sin(theta) * std::cos(theta)); }

double corner_density_deterministic(double theta) {
    return std::min(std::abs(std::sin(theta)), std::abs(std::cos(theta)));
}

double corner_density_spohn(double theta) {
    const double s = std::abs(std::sin(theta)), c = std::abs(std::cos(theta));
    return std::abs(std::sin(2.0 * theta)) / (2.0 * (s + c));
}

double CornerDensityFn::operator()(double theta) const {
    switch (kind) {
        case Kind::deterministic:
            return corner_density_deterministic(theta);
        case Kind::spohn:
            return corner_density_spohn(theta);
        case Kind::custom:
            return custom(theta);
    }
    return 0.0;
}

namespace {

bool near_quarter_multiple(double theta) {
    const double u = wrap_angle(theta) / (kPi / 4.0);
    return std::abs(u - std::round(u)) < 1e-12;
}

double end_term(double theta, const CornerDensityFn& C) {
    const double s = std::sin(theta), c = std::cos(theta);
    return sg_tan(theta) * (c * c + C(theta) * (std::abs(s) - std::abs(c)));
}

}  // namespace

TheoryValue t1_limit(double theta0, double theta1, const CornerDensityFn& C) {
    theta0 = wrap_angle(theta0);
    theta1 = wrap_angle(theta1);
    TheoryValue out;
    const double s0 = std::sin(theta0), s1 = std::sin(theta1);
    const double c0 = std::cos(theta0), c1 = std::cos(theta1);
    double v = -0.5 * end_term(theta0, C) + 0.5 * end_term(theta1, C);
    if (s0 * s1 > 0.0) {
        if (c0 * c1 > 0.0) v += sg(theta1 - theta0);
        if (c0 * c1 < 0.0) v += sg_tan(theta0);
    }
    out.value = v;
    out.degenerate = near_quarter_multiple(theta0) || near_quarter_multiple(theta1) ||
                     std::abs(theta1 - theta0) < 1e-12;
    return out;
}

double limit_deterministic(double theta, double xi) { return -0.5 * std::abs(std::cos(2.0 * theta)) * xi; }

double limit_spohn(double theta, double xi) {
    const double d = std::abs(std::cos(theta)) + std::abs(std::sin(theta));
    return -xi / (2.0 * d * d);
}

namespace {

// Sector k covers [(2k+1) pi/4, (2k+3) pi/4]: 0 up, 1 left, 2 down, 3 right.
int sector(double theta) {
    const double u = wrap_angle(theta - kPi / 4.0) / (kPi / 2.0);
    const double off = u - std::round(u);
    if (std::abs(off) < 1e-12 / (kPi / 2.0)) throw std::domain_error("boundary-octant angle");
    return static_cast<int>(std::floor(u)) % 4;
}

}  // namespace

Pro1Case pro1_case(double theta_prev, double theta_next) {
    const double tp = wrap_angle(theta_prev), tn = wrap_angle(theta_next);
    const int sp = sector(tp), sn = sector(tn);
    const double sin2p = std::sin(2.0 * tp), sin2n = std::sin(2.0 * tn);
    Pro1Case r;
    if (sn == (sp + 2) % 4) {
        r.k = sp;
        if (sp % 2 == 0) {
            r.bullet = 1;
            r.value = 0.25 * (sin2n - sin2p);
        } else {
            r.bullet = 2;
            r.value = 0.25 * (sin2p - sin2n);
        }
    } else if (sn == sp) {
        r.k = sp;
        if (sp % 2 == 0) {
            r.bullet = 3;
            r.value = 0.25 * (4.0 * sg(tn - tp) + sin2n - sin2p);
        } else {
            r.bullet = 4;
            r.value = 0.25 * (4.0 * sg(std::sin(tn - tp)) + sin2p - sin2n);
        }
    } else {
        r.k = (sn == (sp + 1) % 4) ? sp : sn;
        const bool flat_next = std::abs(std::tan(tn)) <= 1.0;
        r.subcase = flat_next ? 1 : 2;
        const double sum = sin2n + sin2p;
        if (r.k % 2 == 0) {
            r.bullet = 5;
            r.value = flat_next ? 0.25 * (2.0 - sum) : 0.25 * (-2.0 + sum);
        } else {
            r.bullet = 6;
            r.value = flat_next ? 0.25 * (-2.0 - sum) : 0.25 * (2.0 + sum);
        }
    }
    r.label = "bullet " + std::to_string(r.bullet) + ", k=" + std::to_string(r.k) +
              (r.subcase ? ", subcase " + std::to_string(r.subcase) : std::string());
    return r;
}

}  // namespace isingdrift
