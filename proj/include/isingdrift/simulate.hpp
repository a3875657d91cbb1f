#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isingdrift/lattice.hpp"
#include "isingdrift/random.hpp"

namespace isingdrift {

// Event-driven zero-temperature Glauber dynamics on a fixed window.  Sites are kept
// in two buckets by rate (1 and alpha); a flip touches only the site and its four
// neighbours.  The plus phase never leaves its initial bounding box, so window-edge
// sites are never active; the constructor insists on a one-cell minus margin.
class Engine {
public:
    struct Event {
        GridIndex site;
        double wait = 0.0;
    };

    Engine(SpinConfig config, std::uint64_t seed, double alpha = 0.5);

    // Performs one flip; std::nullopt once the total rate is zero (absorbed).
    std::optional<Event> step();

    double clock() const { return clock_; }
    void advance_clock(double t) { clock_ = t; }
    double tau() const;
    const SpinConfig& config() const { return cfg_; }
    double total_rate() const;
    long plus_count() const { return plus_; }
    long events() const { return events_; }
    // Full rescan of the rate field against the incremental buckets.
    bool rate_index_consistent() const;

    // Internal: pick and perform an event without drawing a waiting time.
    Event flip_random(double wait);
    Rng& rng() { return rng_; }

private:
    int rate_class(std::size_t idx) const;
    void set_class(std::size_t idx, int cls);
    void refresh(std::size_t idx);

    SpinConfig cfg_;
    Rng rng_;
    double alpha_;
    double clock_ = 0.0;
    long plus_ = 0;
    long events_ = 0;
    long width_ = 0;
    std::vector<std::int8_t> cls_;   // 0: rate 0, 1: rate alpha, 2: rate 1
    std::vector<std::uint32_t> pos_;  // position inside its bucket
    std::vector<std::uint32_t> bucket_[3];
};

struct Snapshot {
    double tau = 0.0;
    double volume = 0.0;      // plus count / N^2
    long region_plus = 0;     // plus sites inside the optional region
    std::optional<SpinConfig> config;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    bool absorbed = false;
    double absorption_tau = 0.0;
    long events = 0;
};

// Advances to microscopic time N^2 tau_max (or absorption) and records the state at
// each requested scaled time in `taus` (sorted, within [0, tau_max]).
Trajectory run_until(Engine& e, double tau_max, const std::vector<double>& taus, bool keep_configs = false,
                     const BoxSet* region = nullptr);

// `count` equally spaced times from 0 to tau_max inclusive.
std::vector<double> snapshot_times(double tau_max, int count);

// Replica r uses seed + r.
std::vector<Trajectory> run_replicas(const SpinConfig& initial, long replicas, std::uint64_t seed, double tau_max,
                                     const std::vector<double>& taus, const BoxSet* region = nullptr,
                                     unsigned threads = 0);

}  // namespace isingdrift
