#pragma once

#include <functional>
#include <string>

namespace isingdrift {

// sg(x) in {-1, 0, +1}.
int sg(double x);
// Sign of tan(theta), evaluated as sg(sin theta * cos theta) so it is total.
int sg_tan(double theta);

// Corner density C(theta) of an initial condition.
struct CornerDensityFn {
    enum class Kind { deterministic, spohn, custom };
    Kind kind = Kind::deterministic;
    std::function<double(double)> custom;

    static CornerDensityFn deterministic() { return {Kind::deterministic, {}}; }
    static CornerDensityFn spohn() { return {Kind::spohn, {}}; }
    static CornerDensityFn from(std::function<double(double)> f) { return {Kind::custom, std::move(f)}; }

    double operator()(double theta) const;
};

// min(|sin|, |cos|)
double corner_density_deterministic(double theta);
// |sin 2 theta| / (2 (|sin| + |cos|))
double corner_density_spohn(double theta);

struct TheoryValue {
    double value = 0.0;
    // Set when an angle sits on a multiple of pi/4, where sg(tan) or the indicator
    // terms switch and the formula's value is convention dependent.
    bool degenerate = false;
};

// Three-term limit of the averaged drift in terms of the chord half-tangent angles.
TheoryValue t1_limit(double theta0, double theta1, const CornerDensityFn& C);

// -1/2 |cos 2 theta| xi
double limit_deterministic(double theta, double xi);
// -xi / (2 (|cos theta| + |sin theta|)^2)
double limit_spohn(double theta, double xi);

struct Pro1Case {
    int bullet = 0;    // 1..6 in the order of the polygon case table
    int k = 0;         // sector index of the table row
    int subcase = 0;   // 1 or 2 for the adjacent-sector bullets, 0 otherwise
    std::string label;
    double value = 0.0;
};

// Polygon corner value from the sector table; theta_prev is the direction towards
// the previous vertex, theta_next towards the next one.  Throws std::domain_error on
// sector-boundary angles (odd multiples of pi/4, within 1e-12).
Pro1Case pro1_case(double theta_prev, double theta_next);

}  // namespace isingdrift
