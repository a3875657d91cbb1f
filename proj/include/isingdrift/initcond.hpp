#pragma once

#include <functional>
#include <vector>

#include "isingdrift/geometry.hpp"
#include "isingdrift/lattice.hpp"
#include "isingdrift/random.hpp"

namespace isingdrift {

// sigma(x) = +1 iff the box of x meets the closed region bounded by the curve.
// The window is the droplet's bounding box grown by `margin` cells.  Polygons are
// routed through polygon_config.
SpinConfig deterministic_config(const Curve& c, long N, long margin = 2);
// Same rule restricted to an explicit window (sites outside read -1 as usual).
SpinConfig deterministic_config(const Curve& c, long N, const Rect& window);

// Polygon variant.  Throws std::domain_error when an edge runs along a box boundary
// (or otherwise touches a box only on its boundary): offset the polygon instead.
SpinConfig polygon_config(const Curve& polygon, long N, long margin = 2);
SpinConfig polygon_config(const Curve& polygon, long N, const Rect& window);

enum class Orientation { nondecreasing, nonincreasing, mixed };
enum class Side { above, below };

// Integer heights h[k - k0] for columns k0..k0+h.size()-1; the continuum height is
// h/N.  For Side::above the plus phase fills rows j >= h, for Side::below rows j <= h.
struct HeightFunction {
    long N = 1;
    long k0 = 0;
    std::vector<long> h;
    Orientation orientation = Orientation::nondecreasing;

    long k1() const { return k0 + static_cast<long>(h.size()) - 1; }
    long at(long k) const { return h[static_cast<std::size_t>(k - k0)]; }
    double value(long k) const { return static_cast<double>(at(k)) / static_cast<double>(N); }
};

struct GraphFunction {
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    double a = 0.0, b = 1.0;
};

struct SpohnOptions {
    // The product measure is defined for monotone graphs.  When false, each
    // increment takes the sign of f' at its column (used for probes sitting on an
    // extremum of the graph).
    bool require_monotone = true;
};

// Columns ceil(N a) .. floor(N b); anchor h = round(N f(a)); independent increments
// with P(|eta| = l) = m^l (1+m)^(-l-1), m = |f'(k/N)|.
HeightFunction spohn_sample(const GraphFunction& g, long N, Rng& rng, SpohnOptions opt = {});

SpinConfig height_to_config(const HeightFunction& h, Side side, const Rect& window);
HeightFunction config_to_height(const SpinConfig& c, Side side, long k0, long k1);

// A curve arc [t_lo, t_hi] (unwrapped, t_lo < t_hi) viewed as a graph over x.
struct ArcGraph {
    const Curve* curve = nullptr;
    double t_lo = 0.0, t_hi = 0.0;
    int x_sense = 1;  // sign of x'(t) on the arc
    double a = 0.0, b = 0.0;

    double param_at(double x) const;
    double f(double x) const;
    double fprime(double x) const;
    // Interior of a counterclockwise curve lies to the left of the motion.
    Side plus_side() const { return x_sense > 0 ? Side::above : Side::below; }
    GraphFunction as_function() const;
};

// Arc of the curve around t_s covering horizontal range [a, b]; throws when the
// arc has a vertical tangent (not a graph over x).
ArcGraph arc_graph(const Curve& c, double t_s, double a, double b);

// Spohn initial condition around a probe: samples the interface over the columns
// covering S(s, r, delta, delta) plus a margin and fills the plus phase on the
// interior side.  Column slopes are tabulated once.
class SpohnProbeSampler {
public:
    SpohnProbeSampler(const Curve& c, const Probe& p, double delta, long N, SpohnOptions opt = {});

    SpinConfig sample(Rng& rng) const;
    HeightFunction sample_heights(Rng& rng) const;

    long N() const { return n_; }
    long k0() const { return k0_; }
    long k1() const { return k0_ + static_cast<long>(slope_.size()); }
    Side side() const { return side_; }
    const std::vector<double>& slopes() const { return slope_; }
    SpinConfig config_from_heights(const HeightFunction& h) const;

private:
    long n_;
    long k0_;
    long anchor_;
    std::vector<double> slope_;  // f'(k/N) for k = k0 .. k0 + size - 1
    Side side_;
    long row_lo_, row_hi_;       // rows the probe region can reach
};

}  // namespace isingdrift
