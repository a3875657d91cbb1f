#include "isingdrift/simulate.hpp"

#include <stdexcept>

#include "isingdrift/parallel.hpp"

namespace isingdrift {

Engine::Engine(SpinConfig config, std::uint64_t seed, double alpha)
    : cfg_(std::move(config)), rng_(make_rng(seed)), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
    cfg_.check_margin(1);
    width_ = cfg_.window().width();
    const std::size_t n = cfg_.raw().size();
    cls_.assign(n, 0);
    pos_.assign(n, 0);
    plus_ = cfg_.plus_count();
    const Rect& w = cfg_.window();
    for (long y = w.y0 + 1; y < w.y1; ++y)
        for (long x = w.x0 + 1; x < w.x1; ++x) {
            const std::size_t idx = cfg_.index(x, y);
            set_class(idx, rate_class(idx));
        }
}

int Engine::rate_class(std::size_t idx) const {
    const auto& s = cfg_.raw();
    const std::int8_t v = s[idx];
    const int k = (s[idx + 1] != v) + (s[idx - 1] != v) + (s[idx + width_] != v) + (s[idx - width_] != v);
    return k >= 3 ? 2 : (k == 2 ? 1 : 0);
}

void Engine::set_class(std::size_t idx, int cls) {
    const int old = cls_[idx];
    if (old == cls) return;
    if (old != 0) {
        auto& b = bucket_[old];
        const std::uint32_t p = pos_[idx];
        const std::uint32_t last = b.back();
        b[p] = last;
        pos_[last] = p;
        b.pop_back();
    }
    if (cls != 0) {
        pos_[idx] = static_cast<std::uint32_t>(bucket_[cls].size());
        bucket_[cls].push_back(static_cast<std::uint32_t>(idx));
    }
    cls_[idx] = static_cast<std::int8_t>(cls);
}

void Engine::refresh(std::size_t idx) {
    // Window-edge sites stay inactive (see class comment).
    const long x = static_cast<long>(idx % static_cast<std::size_t>(width_));
    const long y = static_cast<long>(idx / static_cast<std::size_t>(width_));
    if (x == 0 || y == 0 || x == width_ - 1 || y == cfg_.window().height() - 1) return;
    set_class(idx, rate_class(idx));
}

double Engine::total_rate() const {
    return static_cast<double>(bucket_[2].size()) + alpha_ * static_cast<double>(bucket_[1].size());
}

double Engine::tau() const {
    const double n = static_cast<double>(cfg_.scale());
    return clock_ / (n * n);
}

Engine::Event Engine::flip_random(double wait) {
    const double n2 = static_cast<double>(bucket_[2].size());
    const double u = uniform01(rng_) * total_rate();
    std::uint32_t idx;
    if (u < n2) {
        idx = bucket_[2][std::min<std::size_t>(static_cast<std::size_t>(u), bucket_[2].size() - 1)];
    } else {
        const std::size_t k = static_cast<std::size_t>((u - n2) / alpha_);
        idx = bucket_[1][std::min<std::size_t>(k, bucket_[1].size() - 1)];
    }
    auto& s = cfg_.raw();
    s[idx] = static_cast<std::int8_t>(-s[idx]);
    plus_ += s[idx] == 1 ? 1 : -1;
    ++events_;
    refresh(idx);
    refresh(idx + 1);
    refresh(idx - 1);
    refresh(idx + static_cast<std::size_t>(width_));
    refresh(idx - static_cast<std::size_t>(width_));
    const Rect& w = cfg_.window();
    return Event{GridIndex{w.x0 + static_cast<long>(idx % static_cast<std::size_t>(width_)),
                           w.y0 + static_cast<long>(idx / static_cast<std::size_t>(width_))},
                 wait};
}

std::optional<Engine::Event> Engine::step() {
    const double R = total_rate();
    if (R <= 0.0) return std::nullopt;
    const double wait = exponential(rng_, R);
    clock_ += wait;
    return flip_random(wait);
}

bool Engine::rate_index_consistent() const {
    const Rect& w = cfg_.window();
    std::size_t counts[3] = {0, 0, 0};
    for (long y = w.y0 + 1; y < w.y1; ++y)
        for (long x = w.x0 + 1; x < w.x1; ++x) {
            const std::size_t idx = cfg_.index(x, y);
            const int expect = rate_class(idx);
            if (cls_[idx] != expect) return false;
            const double r = flip_rate(cfg_, GridIndex{x, y}, alpha_);
            if (r != (expect == 2 ? 1.0 : (expect == 1 ? alpha_ : 0.0))) return false;
            ++counts[expect];
            if (expect != 0 && bucket_[expect][pos_[idx]] != idx) return false;
        }
    return counts[1] == bucket_[1].size() && counts[2] == bucket_[2].size();
}

namespace {

Snapshot take(const Engine& e, double tau, bool keep, const BoxSet* region) {
    Snapshot s;
    s.tau = tau;
    s.volume = e.config().volume();
    if (region) {
        long k = 0;
        for (const GridIndex& g : region->members()) k += e.config().spin(g) == 1;
        s.region_plus = k;
    }
    if (keep) s.config = e.config();
    return s;
}

}  // namespace

Trajectory run_until(Engine& e, double tau_max, const std::vector<double>& taus, bool keep_configs,
                     const BoxSet* region) {
    Trajectory tr;
    const double n = static_cast<double>(e.config().scale());
    const double T = tau_max * n * n;
    std::size_t next = 0;
    auto record_until = [&](double t_micro) {
        while (next < taus.size() && taus[next] * n * n < t_micro && taus[next] <= tau_max)
            tr.snapshots.push_back(take(e, taus[next++], keep_configs, region));
    };
    const long events0 = e.events();
    for (;;) {
        const double R = e.total_rate();
        if (R <= 0.0) {
            tr.absorbed = true;
            tr.absorption_tau = e.tau();
            break;
        }
        const double t_next = e.clock() + exponential(e.rng(), R);
        if (t_next > T) {
            record_until(T + 1.0);
            e.advance_clock(T);
            break;
        }
        record_until(t_next);
        e.advance_clock(t_next);
        e.flip_random(0.0);
    }
    // Absorbed (or stopped): the state is frozen for the remaining snapshot times.
    while (next < taus.size() && taus[next] <= tau_max) tr.snapshots.push_back(take(e, taus[next++], keep_configs, region));
    tr.events = e.events() - events0;
    return tr;
}

std::vector<double> snapshot_times(double tau_max, int count) {
    std::vector<double> t;
    if (count <= 0) return t;
    if (count == 1) return {tau_max};
    for (int i = 0; i < count; ++i) t.push_back(tau_max * static_cast<double>(i) / static_cast<double>(count - 1));
    return t;
}

std::vector<Trajectory> run_replicas(const SpinConfig& initial, long replicas, std::uint64_t seed, double tau_max,
                                     const std::vector<double>& taus, const BoxSet* region, unsigned threads) {
    std::vector<Trajectory> out(static_cast<std::size_t>(replicas));
    parallel_for(
        out.size(),
        [&](std::size_t r) {
            Engine e(initial, seed + r);
            out[r] = run_until(e, tau_max, taus, false, region);
        },
        threads);
    return out;
}

}  // namespace isingdrift
