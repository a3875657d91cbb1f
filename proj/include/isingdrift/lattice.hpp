#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace isingdrift {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
double norm(Vec2 v);

// Site of Z^2; its continuum position at scale N is (x/N, y/N).
struct GridIndex {
    long x = 0;
    long y = 0;
    auto operator<=>(const GridIndex&) const = default;
};

// Inclusive integer rectangle.
struct Rect {
    long x0 = 0, y0 = 0, x1 = -1, y1 = -1;
    long width() const { return x1 - x0 + 1; }
    long height() const { return y1 - y0 + 1; }
    bool contains(long x, long y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    bool empty() const { return x1 < x0 || y1 < y0; }
};

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

// Owner of the half-open box [x/N - 1/2N, x/N + 1/2N) x [y/N - 1/2N, y/N + 1/2N)
// containing p.
GridIndex locate(Vec2 p, long N);

// Lower-left (closed) and upper-right (open) corners of a box.
Vec2 box_lo(GridIndex g, long N);
Vec2 box_hi(GridIndex g, long N);

// Does the half-open box of g meet the closed disk?  Contact that happens only on
// the open right/top edges does not count.
bool box_meets_disk(GridIndex g, long N, const Disk& d);

class BoxSet {
public:
    explicit BoxSet(long N = 1) : n_(N) {}
    BoxSet(long N, std::vector<GridIndex> members);

    long scale() const { return n_; }
    bool contains(GridIndex g) const;
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    double volume() const;
    // Sorted by (x, y).
    const std::vector<GridIndex>& members() const { return members_; }
    bool subset_of(const BoxSet& other) const;

private:
    long n_;
    std::vector<GridIndex> members_;
};

BoxSet discretize(const std::vector<Disk>& region, long N);

class SpinConfig {
public:
    SpinConfig() = default;
    SpinConfig(Rect window, long N);

    long scale() const { return n_; }
    const Rect& window() const { return w_; }

    int spin(long x, long y) const {
        if (!w_.contains(x, y)) return -1;
        return s_[index(x, y)];
    }
    int spin(GridIndex g) const { return spin(g.x, g.y); }
    void set(long x, long y, int value);
    void set(GridIndex g, int value) { set(g.x, g.y, value); }
    void flip(long x, long y) { s_[index(x, y)] = static_cast<std::int8_t>(-s_[index(x, y)]); }

    std::size_t index(long x, long y) const {
        return static_cast<std::size_t>(y - w_.y0) * static_cast<std::size_t>(w_.width()) +
               static_cast<std::size_t>(x - w_.x0);
    }

    long plus_count() const;
    double volume() const;
    std::optional<Rect> plus_bbox() const;
    // Throws std::logic_error when a plus site sits closer than `margin` cells to
    // the window edge.
    void check_margin(long margin) const;

    SpinConfig negated() const;
    SpinConfig translated(long dx, long dy) const;

    const std::vector<std::int8_t>& raw() const { return s_; }
    std::vector<std::int8_t>& raw() { return s_; }

    bool operator==(const SpinConfig& o) const {
        return n_ == o.n_ && w_.x0 == o.w_.x0 && w_.y0 == o.w_.y0 && w_.x1 == o.w_.x1 &&
               w_.y1 == o.w_.y1 && s_ == o.s_;
    }

private:
    long n_ = 1;
    Rect w_;
    std::vector<std::int8_t> s_;
};

// s(sigma, x): number of nearest neighbours carrying the opposite spin.
int opposite_neighbors(const SpinConfig& c, GridIndex g);
inline int opposite_neighbors(const SpinConfig& c, long x, long y) {
    return opposite_neighbors(c, GridIndex{x, y});
}

// Zero-temperature rate: 1 if s >= 3, alpha if s == 2, 0 otherwise.
double flip_rate(const SpinConfig& c, GridIndex g, double alpha = 0.5);

}  // namespace isingdrift
