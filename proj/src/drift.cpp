#include "isingdrift/drift.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "isingdrift/boundary.hpp"
#include "isingdrift/parallel.hpp"
#include "isingdrift/theory.hpp"

namespace isingdrift {

namespace {

// Generator weight of one site: -sigma * c(x), with c = 1 (s>=3),
// alpha (s=2), 0 otherwise.
double site_weight(const SpinConfig& c, GridIndex g, double alpha) {
    const int s = opposite_neighbors(c, g);
    if (s < 2) return 0.0;
    const double rate = s >= 3 ? 1.0 : alpha;
    return c.spin(g) == 1 ? -rate : rate;
}

}  // namespace

double drift_generator(const SpinConfig& c, const BoxSet& region, double alpha) {
    double sum = 0.0;
    for (const GridIndex& g : region.members()) sum += site_weight(c, g, alpha);
    return sum;
}

void check_turn_identity_sites(const SpinConfig& c, const BoxSet& region) {
    for (const GridIndex& g : region.members()) {
        const int s = c.spin(g);
        const bool e = c.spin(g.x + 1, g.y) != s, w = c.spin(g.x - 1, g.y) != s;
        const bool n = c.spin(g.x, g.y + 1) != s, so = c.spin(g.x, g.y - 1) != s;
        const int k = e + w + n + so;
        const bool bridge = k == 2 && ((e && w) || (n && so));
        if (k == 4 || bridge)
            throw std::invalid_argument("degenerate site in probe region at (" + std::to_string(g.x) + "," +
                                        std::to_string(g.y) + "): " + (k == 4 ? "isolated spin" : "one-cell neck"));
    }
}

double drift_turns(const SpinConfig& c, const BoxSet& region) {
    check_turn_identity_sites(c, region);
    const LatticePath contour = trace_boundary(c);
    const LatticePath arc = trim_to_region_turns(clip_to_region(contour, region), region);
    const TurnCount t = turn_counts(arc);
    return 0.5 * static_cast<double>(t.minus - t.plus);
}

double drift_turns(const SpinConfig& c, const Probe& p, long N) {
    return drift_turns(c, discretize(probe_disks(p), N));
}

double averaged_drift(const SpinConfig& c, const Probe& p, double delta, int M, double alpha) {
    if (M < 1) throw std::invalid_argument("quadrature resolution M must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    const long N = c.scale();
    const BoxSet outer = discretize(probe_disks(p, delta, delta), N);
    const Disk main{p.s, p.r};
    const long MM = static_cast<long>(M) * M;
    auto first_node = [&](GridIndex g, Vec2 centre) {
        long lo = 0, hi = M;  // smallest k whose node disk meets the box, or M
        while (lo < hi) {
            const long mid = (lo + hi) / 2;
            if (box_meets_disk(g, N, Disk{centre, quadrature_radius(static_cast<int>(mid), M, delta)}))
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    };
    // A site outside B(s,r) is in S_N for the cells (i, j) with i >= i0 or j >= j1.
    // Weights are multiples of alpha and cell counts are integers, so for alpha = 1/2
    // the sum is exact in double precision whatever the summation order.
    double sum = 0.0;
    for (const GridIndex& g : outer.members()) {
        const double w = site_weight(c, g, alpha);
        if (w == 0.0) continue;
        long cover = MM;
        if (!box_meets_disk(g, N, main)) cover = MM - first_node(g, p.x0) * first_node(g, p.x1);
        sum += w * static_cast<double>(cover);
    }
    return sum / static_cast<double>(MM);
}

double averaged_drift_exact(const SpinConfig& c, const Probe& p, double delta, double alpha) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    const long N = c.scale();
    const BoxSet outer = discretize(probe_disks(p, delta, delta), N);
    const Disk main{p.s, p.r};
    auto dist = [&](GridIndex g, Vec2 q) {
        const Vec2 lo = box_lo(g, N), hi = box_hi(g, N);
        const double dx = std::max({lo.x - q.x, 0.0, q.x - hi.x});
        const double dy = std::max({lo.y - q.y, 0.0, q.y - hi.y});
        return std::min(std::hypot(dx, dy), delta);
    };
    double sum = 0.0;
    for (const GridIndex& g : outer.members()) {
        const double w = site_weight(c, g, alpha);
        if (w == 0.0) continue;
        double cover = 1.0;
        if (!box_meets_disk(g, N, main)) cover -= dist(g, p.x0) * dist(g, p.x1) / (delta * delta);
        sum += w * cover;
    }
    return sum;
}

double averaged_drift(const SpinConfig& c, const Curve& curve, double t_s, double r, double delta, int M,
                      double alpha) {
    return averaged_drift(c, make_probe(curve, t_s, r), delta, M, alpha);
}

double averaged_drift_reference(const SpinConfig& c, const Probe& p, double delta, int M, double alpha) {
    double sum = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const BoxSet region =
                discretize(probe_disks(p, quadrature_radius(i, M, delta), quadrature_radius(j, M, delta)), c.scale());
            sum += drift_generator(c, region, alpha);
        }
    return sum / (static_cast<double>(M) * static_cast<double>(M));
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    if (xs.empty()) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double v = 0.0;
    for (double x : xs) v += (x - out.mean) * (x - out.mean);
    v /= static_cast<double>(xs.size() - 1);
    out.stderr_mean = std::sqrt(v / static_cast<double>(xs.size()));
    return out;
}

Rect probe_window(const Probe& p, double delta, long N, long pad) {
    double xmin = p.s.x - p.r, xmax = p.s.x + p.r, ymin = p.s.y - p.r, ymax = p.s.y + p.r;
    for (Vec2 q : {p.x0, p.x1}) {
        xmin = std::min(xmin, q.x - delta);
        xmax = std::max(xmax, q.x + delta);
        ymin = std::min(ymin, q.y - delta);
        ymax = std::max(ymax, q.y + delta);
    }
    const GridIndex lo = locate(Vec2{xmin, ymin}, N), hi = locate(Vec2{xmax, ymax}, N);
    return Rect{lo.x - pad, lo.y - pad, hi.x + pad, hi.y + pad};
}

InitialCondition deterministic_initial(const Curve& c, const Probe& p, double delta, long N) {
    auto cfg = std::make_shared<const SpinConfig>(deterministic_config(c, N, probe_window(p, delta, N)));
    return InitialCondition{"deterministic", true, [cfg](Rng&) { return *cfg; }};
}

InitialCondition spohn_initial(const Curve& c, const Probe& p, double delta, long N, SpohnOptions opt) {
    auto sampler = std::make_shared<const SpohnProbeSampler>(c, p, delta, N, opt);
    return InitialCondition{"spohn", false, [sampler](Rng& rng) { return sampler->sample(rng); }};
}

DriftReport expected_drift(const InitialCondition& ic, const Curve& curve, double t_s, double r, double delta,
                           int M, long K, std::uint64_t seed, long N, unsigned threads) {
    if (K < 1) throw std::invalid_argument("sample count K must be >= 1");
    const Probe p = make_probe(curve, t_s, r);
    DriftReport rep;
    rep.N = N;
    rep.r = r;
    rep.delta = delta;
    rep.M = M;
    rep.K = K;
    rep.seed = seed;
    if (curve.kind() != CurveKind::polygon) {
        rep.theta = tangent_angle(curve, t_s);
        rep.xi = curvature(curve, t_s);
        rep.theory_det = limit_deterministic(rep.theta, rep.xi);
        rep.theory_spohn = limit_spohn(rep.theta, rep.xi);
    } else {
        rep.theta = rep.xi = rep.theory_det = rep.theory_spohn = std::nan("");
    }
    rep.samples.assign(static_cast<std::size_t>(K), 0.0);
    auto eval = [&](const SpinConfig& c) {
        return M > 0 ? averaged_drift(c, p, delta, M) : averaged_drift_exact(c, p, delta);
    };
    if (ic.deterministic) {
        Rng rng = make_rng(seed);
        const double a = eval(ic.sample(rng));
        for (double& x : rep.samples) x = a;
    } else {
        parallel_for(
            static_cast<std::size_t>(K),
            [&](std::size_t k) {
                Rng rng = make_rng(seed, k);
                rep.samples[k] = eval(ic.sample(rng));
            },
            threads);
    }
    const MeanStderr ms = mean_stderr(rep.samples);
    rep.mean = ms.mean;
    rep.stderr_mean = ms.stderr_mean;
    rep.scaled = rep.mean / (2.0 * r);
    rep.scaled_stderr = rep.stderr_mean / (2.0 * r);
    return rep;
}

}  // namespace isingdrift
