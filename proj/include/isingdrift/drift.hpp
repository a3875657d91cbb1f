#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "isingdrift/geometry.hpp"
#include "isingdrift/initcond.hpp"
#include "isingdrift/lattice.hpp"
#include "isingdrift/random.hpp"

namespace isingdrift {

// Generator sum over the boxes of the region:
//   sum (1{-,s>=3} - 1{+,s>=3}) + alpha * sum (1{-,s=2} - 1{+,s=2}).
double drift_generator(const SpinConfig& c, const BoxSet& region, double alpha = 0.5);

// The same quantity read off the boundary: 1/2 (N- - N+) on the contour clipped to
// the region.  Requires a traceable droplet, a single clipped arc, and no sites in
// the region where the turn bookkeeping breaks down (s = 4, or s = 2 with the two
// opposite neighbours on opposite sides).
double drift_turns(const SpinConfig& c, const BoxSet& region);
double drift_turns(const SpinConfig& c, const Probe& p, long N);

// Throws std::invalid_argument naming the first site that makes the turn identity
// inapplicable.
void check_turn_identity_sites(const SpinConfig& c, const BoxSet& region);

// A_N: average of L_N over (alpha1, alpha2) in (0, delta]^2 with an M x M midpoint rule.
// Evaluated from the boundary sites of the largest region: each site contributes to
// the (alpha1, alpha2) cells whose small disks reach its box.
double averaged_drift(const SpinConfig& c, const Probe& p, double delta, int M, double alpha = 0.5);
double averaged_drift(const SpinConfig& c, const Curve& curve, double t_s, double r, double delta, int M,
                      double alpha = 0.5);
// The same average as an exact integral over (0, delta]^2: a box at distance rho0 from x0
// and rho1 from x1 (outside B(s,r)) is in S_N except on [0,rho0) x [0,rho1).
double averaged_drift_exact(const SpinConfig& c, const Probe& p, double delta, double alpha = 0.5);
// Literal version: rebuilds S_N for each quadrature node and calls drift_generator.
double averaged_drift_reference(const SpinConfig& c, const Probe& p, double delta, int M, double alpha = 0.5);

// Quadrature node k of the midpoint rule on (0, delta].
inline double quadrature_radius(int k, int M, double delta) {
    return (static_cast<double>(k) + 0.5) * delta / static_cast<double>(M);
}

struct InitialCondition {
    std::string name;
    bool deterministic = true;
    std::function<SpinConfig(Rng&)> sample;
};

struct DriftReport {
    long N = 0;
    double r = 0.0, delta = 0.0;
    int M = 0;
    long K = 0;
    std::uint64_t seed = 0;
    double theta = 0.0;  // tangent angle at s
    double xi = 0.0;     // curvature at s
    std::vector<double> samples;
    double mean = 0.0;
    double stderr_mean = 0.0;
    double scaled = 0.0;         // mean / (2r)
    double scaled_stderr = 0.0;
    double theory_det = 0.0;
    double theory_spohn = 0.0;
};

// Lattice window covering S(s, r, delta, delta) with `pad` extra cells on each side;
// enough for every quantity that only reads the probe region and its neighbours.
Rect probe_window(const Probe& p, double delta, long N, long pad = 2);

// The deterministic initial condition restricted to probe_window.
InitialCondition deterministic_initial(const Curve& c, const Probe& p, double delta, long N);
// Spohn's product measure on the arc under the probe.  The sampler is shared by all
// copies of the returned object.
InitialCondition spohn_initial(const Curve& c, const Probe& p, double delta, long N, SpohnOptions opt = {});

// M = 0 selects averaged_drift_exact.
DriftReport expected_drift(const InitialCondition& ic, const Curve& curve, double t_s, double r, double delta,
                           int M, long K, std::uint64_t seed, long N, unsigned threads = 0);

struct MeanStderr {
    double mean = 0.0;
    double stderr_mean = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace isingdrift
