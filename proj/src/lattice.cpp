#include "isingdrift/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isingdrift {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

GridIndex locate(Vec2 p, long N) {
    return {static_cast<long>(std::floor(static_cast<double>(N) * p.x + 0.5)),
            static_cast<long>(std::floor(static_cast<double>(N) * p.y + 0.5))};
}

Vec2 box_lo(GridIndex g, long N) {
    const double n = static_cast<double>(N);
    return {(static_cast<double>(g.x) - 0.5) / n, (static_cast<double>(g.y) - 0.5) / n};
}

Vec2 box_hi(GridIndex g, long N) {
    const double n = static_cast<double>(N);
    return {(static_cast<double>(g.x) + 0.5) / n, (static_cast<double>(g.y) + 0.5) / n};
}

namespace {

// Distance along one axis from c to the half-open interval [k - 1/2, k + 1/2),
// in lattice units; `open` is set when the nearest point is the open end.
double axis_gap(double c, long k, bool& open) {
    const double lo = static_cast<double>(k) - 0.5;
    const double hi = static_cast<double>(k) + 0.5;
    open = false;
    if (c < lo) return lo - c;
    if (c >= hi) {
        open = true;
        return c - hi;
    }
    return 0.0;
}

}  // namespace

bool box_meets_disk(GridIndex g, long N, const Disk& d) {
    // Work in lattice units so box edges are exact half-integers.
    const double n = static_cast<double>(N);
    const double cx = d.center.x * n, cy = d.center.y * n, R = d.radius * n;
    bool ox = false, oy = false;
    const double dx = axis_gap(cx, g.x, ox);
    const double dy = axis_gap(cy, g.y, oy);
    const double d2 = dx * dx + dy * dy;
    const double r2 = R * R;
    if (d2 < r2) return true;
    return d2 == r2 && !ox && !oy;
}

BoxSet::BoxSet(long N, std::vector<GridIndex> members) : n_(N), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool BoxSet::contains(GridIndex g) const {
    return std::binary_search(members_.begin(), members_.end(), g);
}

double BoxSet::volume() const {
    return static_cast<double>(members_.size()) / (static_cast<double>(n_) * static_cast<double>(n_));
}

bool BoxSet::subset_of(const BoxSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

BoxSet discretize(const std::vector<Disk>& region, long N) {
    std::vector<GridIndex> out;
    const double n = static_cast<double>(N);
    for (const Disk& d : region) {
        if (d.radius < 0.0) throw std::invalid_argument("disk radius must be non-negative");
        const double cx = d.center.x * n, cy = d.center.y * n, R = d.radius * n;
        const long j0 = static_cast<long>(std::floor(cy - R)) - 1;
        const long j1 = static_cast<long>(std::ceil(cy + R)) + 1;
        for (long j = j0; j <= j1; ++j) {
            bool open = false;
            const double dy = axis_gap(cy, j, open);
            if (dy > R) continue;
            const double w = std::sqrt(std::max(0.0, R * R - dy * dy));
            const long i0 = static_cast<long>(std::floor(cx - w)) - 1;
            const long i1 = static_cast<long>(std::ceil(cx + w)) + 1;
            for (long i = i0; i <= i1; ++i)
                if (box_meets_disk({i, j}, N, d)) out.push_back({i, j});
        }
    }
    return BoxSet(N, std::move(out));
}

SpinConfig::SpinConfig(Rect window, long N) : n_(N), w_(window) {
    if (N <= 0) throw std::invalid_argument("scale N must be positive");
    if (window.empty()) throw std::invalid_argument("empty spin window");
    s_.assign(static_cast<std::size_t>(window.width()) * static_cast<std::size_t>(window.height()),
              static_cast<std::int8_t>(-1));
}

void SpinConfig::set(long x, long y, int value) {
    if (!w_.contains(x, y)) throw std::out_of_range("site outside spin window");
    if (value != 1 && value != -1) throw std::invalid_argument("spin must be +1 or -1");
    s_[index(x, y)] = static_cast<std::int8_t>(value);
}

long SpinConfig::plus_count() const {
    return static_cast<long>(std::count(s_.begin(), s_.end(), static_cast<std::int8_t>(1)));
}

double SpinConfig::volume() const {
    return static_cast<double>(plus_count()) / (static_cast<double>(n_) * static_cast<double>(n_));
}

std::optional<Rect> SpinConfig::plus_bbox() const {
    Rect b{w_.x1 + 1, w_.y1 + 1, w_.x0 - 1, w_.y0 - 1};
    bool any = false;
    for (long y = w_.y0; y <= w_.y1; ++y) {
        const std::int8_t* row = &s_[index(w_.x0, y)];
        for (long i = 0; i < w_.width(); ++i) {
            if (row[i] != 1) continue;
            any = true;
            const long x = w_.x0 + i;
            b.x0 = std::min(b.x0, x);
            b.x1 = std::max(b.x1, x);
            b.y0 = std::min(b.y0, y);
            b.y1 = std::max(b.y1, y);
        }
    }
    if (!any) return std::nullopt;
    return b;
}

void SpinConfig::check_margin(long margin) const {
    const auto b = plus_bbox();
    if (!b) return;
    if (b->x0 - w_.x0 < margin || w_.x1 - b->x1 < margin || b->y0 - w_.y0 < margin ||
        w_.y1 - b->y1 < margin)
        throw std::logic_error("plus droplet closer than " + std::to_string(margin) +
                               " cells to the window edge");
}

SpinConfig SpinConfig::negated() const {
    SpinConfig c = *this;
    for (auto& v : c.s_) v = static_cast<std::int8_t>(-v);
    return c;
}

SpinConfig SpinConfig::translated(long dx, long dy) const {
    SpinConfig c = *this;
    c.w_ = Rect{w_.x0 + dx, w_.y0 + dy, w_.x1 + dx, w_.y1 + dy};
    return c;
}

int opposite_neighbors(const SpinConfig& c, GridIndex g) {
    const int s = c.spin(g);
    int n = 0;
    n += c.spin(g.x + 1, g.y) != s;
    n += c.spin(g.x - 1, g.y) != s;
    n += c.spin(g.x, g.y + 1) != s;
    n += c.spin(g.x, g.y - 1) != s;
    return n;
}

double flip_rate(const SpinConfig& c, GridIndex g, double alpha) {
    const int s = opposite_neighbors(c, g);
    if (s >= 3) return 1.0;
    if (s == 2) return alpha;
    return 0.0;
}

}  // namespace isingdrift
