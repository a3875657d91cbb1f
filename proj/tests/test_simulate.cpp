#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isingdrift/drift.hpp"
#include "isingdrift/initcond.hpp"
#include "isingdrift/simulate.hpp"

using namespace isingdrift;

namespace {

SpinConfig block(long w, long h, long N = 16) {
    SpinConfig c(Rect{-2, -2, w + 1, h + 1}, N);
    for (long x = 0; x < w; ++x)
        for (long y = 0; y < h; ++y) c.set(x, y, 1);
    return c;
}

double rescanned_rate(const SpinConfig& c) {
    double total = 0.0;
    const Rect& w = c.window();
    for (long y = w.y0; y <= w.y1; ++y)
        for (long x = w.x0; x <= w.x1; ++x) total += flip_rate(c, {x, y});
    return total;
}

}  // namespace

TEST_CASE("rate index stays coherent over a long run") {
    const SpinConfig start = deterministic_config(Curve::ellipse({0.01, -0.02}, 1.0, 0.7), 160);
    Engine e(start, 11);
    CHECK(e.total_rate() == rescanned_rate(e.config()));
    long steps = 0;
    for (; steps < 100000; ++steps)
        if (!e.step()) break;
    CHECK(steps == 100000);
    CHECK(e.events() == steps);
    CHECK(e.rate_index_consistent());
    CHECK(e.total_rate() == rescanned_rate(e.config()));
    CHECK(e.plus_count() == e.config().plus_count());
    CHECK(e.clock() > 0.0);
}

TEST_CASE("construction checks the minus margin") {
    SpinConfig slab(Rect{0, 0, 9, 9}, 10);
    for (long x = 0; x <= 9; ++x)
        for (long y = 0; y <= 4; ++y) slab.set(x, y, 1);
    CHECK_THROWS_AS(Engine(slab, 1), std::logic_error);
}

TEST_CASE("an all-minus window is absorbed at once") {
    Engine e(SpinConfig(Rect{0, 0, 7, 7}, 8), 1);
    CHECK(e.total_rate() == 0.0);
    CHECK_FALSE(e.step().has_value());
    const Trajectory t = run_until(e, 1.0, {0.0, 0.5, 1.0});
    CHECK(t.absorbed);
    CHECK(t.absorption_tau == 0.0);
    REQUIRE(t.snapshots.size() == 3);
    for (const Snapshot& s : t.snapshots) CHECK(s.volume == 0.0);
}

TEST_CASE("single plus site: absorption time is exponential with mean 1") {
    const long reps = 10000;
    double s = 0.0, s2 = 0.0;
    for (long r = 0; r < reps; ++r) {
        Engine e(block(1, 1, 1), 1000 + static_cast<std::uint64_t>(r));
        CHECK(e.total_rate() == 1.0);
        const auto ev = e.step();
        REQUIRE(ev.has_value());
        REQUIRE_FALSE(e.step().has_value());
        s += ev->wait;
        s2 += ev->wait * ev->wait;
    }
    const double mean = s / reps, se = std::sqrt((s2 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 1.0) <= 3 * se);
}

TEST_CASE("2x2 block: four corners at rate 1/2, first event at mean 1/2") {
    const long reps = 10000;
    double s = 0.0, s2 = 0.0;
    for (long r = 0; r < reps; ++r) {
        Engine e(block(2, 2), 5000 + static_cast<std::uint64_t>(r));
        REQUIRE(e.total_rate() == 2.0);
        const auto ev = e.step();
        REQUIRE(ev.has_value());
        REQUIRE(ev->site.x >= 0);
        REQUIRE(ev->site.x <= 1);
        REQUIRE(e.plus_count() == 3);
        s += ev->wait;
        s2 += ev->wait * ev->wait;
    }
    const double mean = s / reps, se = std::sqrt((s2 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 0.5) <= 3 * se);
}

TEST_CASE("total rate times the mean first-flip change equals the generator sum") {
    const Curve e = Curve::ellipse({0.02, 0.01}, 1.0, 0.6);
    const long N = 24;
    const SpinConfig c = deterministic_config(e, N);
    const Probe p = make_probe(e, 0.1, 0.3);
    const BoxSet region = discretize(probe_disks(p, 0.05, 0.05), N);
    const double L = drift_generator(c, region);
    auto region_plus = [&](const SpinConfig& s) {
        long n = 0;
        for (const GridIndex& g : region.members()) n += s.spin(g) == 1;
        return n;
    };
    const long before = region_plus(c);
    const long reps = 100000;
    double sum = 0.0, sum2 = 0.0, R = 0.0;
    for (long r = 0; r < reps; ++r) {
        Engine eng(c, 77 + static_cast<std::uint64_t>(r));
        R = eng.total_rate();
        eng.step();
        const double d = static_cast<double>(region_plus(eng.config()) - before);
        sum += d;
        sum2 += d * d;
    }
    const double mean = sum / reps, se = std::sqrt((sum2 / reps - mean * mean) / reps);
    CHECK(L != 0.0);
    CHECK(std::abs(R * mean - L) <= 4 * R * se);
}

TEST_CASE("run_until: tau_max = 0 records the initial state only") {
    const SpinConfig c = block(5, 3);
    Engine e(c, 3);
    const Trajectory t = run_until(e, 0.0, {0.0}, true);
    REQUIRE(t.snapshots.size() == 1);
    CHECK(t.snapshots[0].tau == 0.0);
    CHECK(t.snapshots[0].volume == c.volume());
    REQUIRE(t.snapshots[0].config.has_value());
    CHECK(*t.snapshots[0].config == c);
    CHECK(t.events == 0);
    CHECK_FALSE(t.absorbed);
}

TEST_CASE("run_until: snapshots, region counts, absorption") {
    const SpinConfig c = block(4, 4, 8);
    const BoxSet region(8, {{0, 0}, {1, 0}, {0, 1}});
    Engine e(c, 9);
    const auto taus = snapshot_times(10.0, 11);
    REQUIRE(taus.size() == 11);
    CHECK(taus.front() == 0.0);
    CHECK(taus.back() == 10.0);
    const Trajectory t = run_until(e, 10.0, taus, true, &region);
    REQUIRE(t.snapshots.size() == 11);
    CHECK(t.snapshots[0].region_plus == 3);
    CHECK(t.absorbed);
    CHECK(t.absorption_tau > 0.0);
    CHECK(t.absorption_tau <= 10.0);
    CHECK(t.events >= 16);
    for (const Snapshot& s : t.snapshots) {
        REQUIRE(s.config.has_value());
        CHECK(s.volume == s.config->volume());
        long in = 0;
        for (const GridIndex& g : region.members()) in += s.config->spin(g) == 1;
        CHECK(s.region_plus == in);
        if (s.tau >= t.absorption_tau) CHECK(s.volume == 0.0);
    }
    for (std::size_t i = 1; i < t.snapshots.size(); ++i)
        CHECK(t.snapshots[i].volume <= t.snapshots[i - 1].volume);
}

TEST_CASE("same seed, same trajectory") {
    const SpinConfig c = deterministic_config(Curve::circle({0.0, 0.0}, 1.0), 20);
    Engine a(c, 42), b(c, 42), d(c, 43);
    bool differs = false;
    for (int i = 0; i < 500; ++i) {
        const auto ea = a.step(), eb = b.step(), ed = d.step();
        REQUIRE(ea.has_value());
        REQUIRE(eb.has_value());
        CHECK(ea->site == eb->site);
        CHECK(ea->wait == eb->wait);
        if (ed && (ed->site != ea->site || ed->wait != ea->wait)) differs = true;
    }
    CHECK(a.config() == b.config());
    CHECK(differs);

    const auto taus = snapshot_times(0.05, 6);
    const auto r1 = run_replicas(c, 4, 100, 0.05, taus, nullptr, 1);
    const auto r2 = run_replicas(c, 4, 100, 0.05, taus, nullptr, 3);
    REQUIRE(r1.size() == 4);
    for (std::size_t r = 0; r < 4; ++r) {
        Engine solo(c, 100 + r);
        const Trajectory t = run_until(solo, 0.05, taus);
        REQUIRE(r1[r].snapshots.size() == t.snapshots.size());
        CHECK(r1[r].events == t.events);
        CHECK(r2[r].events == t.events);
        for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
            CHECK(r1[r].snapshots[k].volume == t.snapshots[k].volume);
            CHECK(r2[r].snapshots[k].volume == t.snapshots[k].volume);
        }
    }
}

TEST_CASE("square droplet: ensemble-mean volume is non-increasing and the droplet disappears") {
    const double o = 0.0049;
    const Curve sq = Curve::polygon({{-0.5 + o, -0.5 + o}, {0.5 + o, -0.5 + o}, {0.5 + o, 0.5 + o}, {-0.5 + o, 0.5 + o}});
    const long N = 32, reps = 200;
    const SpinConfig c = polygon_config(sq, N);
    const auto taus = snapshot_times(2.0, 20);
    const auto runs = run_replicas(c, reps, 7, 2.0, taus);
    std::vector<double> mean(taus.size(), 0.0), m2(taus.size(), 0.0);
    long absorbed = 0;
    for (const Trajectory& t : runs) {
        absorbed += t.absorbed;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            mean[k] += t.snapshots[k].volume / reps;
            m2[k] += t.snapshots[k].volume * t.snapshots[k].volume / reps;
        }
    }
    CHECK(mean.front() == doctest::Approx(c.volume()).epsilon(1e-12));
    for (std::size_t k = 1; k < taus.size(); ++k) {
        const double se = std::sqrt(std::max(0.0, m2[k] - mean[k] * mean[k]) / reps);
        const double se0 = std::sqrt(std::max(0.0, m2[k - 1] - mean[k - 1] * mean[k - 1]) / reps);
        CHECK(mean[k] <= mean[k - 1] + 3 * std::hypot(se, se0));
    }
    CHECK(absorbed == reps);
    CHECK(mean.back() == 0.0);
}
