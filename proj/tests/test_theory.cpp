#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "isingdrift/geometry.hpp"
#include "isingdrift/random.hpp"
#include "isingdrift/theory.hpp"

using namespace isingdrift;

namespace {

const CornerDensityFn kDet = CornerDensityFn::deterministic();
const CornerDensityFn kSpohn = CornerDensityFn::spohn();

// Uniform angle at least `gap` away from every multiple of pi/4.
double generic_angle(Rng& rng, double gap = 1e-6) {
    for (;;) {
        const double th = kTwoPi * uniform01(rng);
        const double u = th / (kPi / 4);
        if (std::abs(u - std::round(u)) * (kPi / 4) > gap) return th;
    }
}

}  // namespace

TEST_CASE("sign helpers") {
    CHECK(sg(2.0) == 1);
    CHECK(sg(-0.1) == -1);
    CHECK(sg(0.0) == 0);
    CHECK(sg_tan(0.3) == 1);
    CHECK(sg_tan(kPi - 0.3) == -1);
    CHECK(sg_tan(kPi / 2) == sg(std::sin(kPi / 2) * std::cos(kPi / 2)));
}

TEST_CASE("corner densities") {
    CHECK(corner_density_deterministic(kPi / 6) == doctest::Approx(0.5));
    CHECK(corner_density_deterministic(0.0) == 0.0);
    CHECK(corner_density_spohn(kPi / 4) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
    CHECK(corner_density_spohn(0.0) == 0.0);
    CHECK(kDet(1.1) == corner_density_deterministic(1.1));
    CHECK(kSpohn(1.1) == corner_density_spohn(1.1));
    CHECK(CornerDensityFn::from([](double t) { return 3.0 * t; })(0.5) == 1.5);

    Rng rng = make_rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double th = generic_angle(rng);
        const double t = std::abs(std::tan(th));
        REQUIRE(std::abs(corner_density_spohn(th) - std::abs(std::cos(th)) * t / (1.0 + t)) <= 1e-12);
        REQUIRE(corner_density_spohn(th) >= 0.0);
        REQUIRE(corner_density_spohn(th) <= corner_density_deterministic(th) + 1e-15);
    }
}

TEST_CASE("limit coefficients") {
    CHECK(limit_deterministic(0.0, 1.0) == -0.5);
    CHECK(limit_deterministic(kPi / 4, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(limit_deterministic(0.7, 0.0) == 0.0);
    CHECK(limit_spohn(0.0, 1.0) == -0.5);
    CHECK(limit_spohn(kPi / 4, 1.0) == doctest::Approx(-0.25));
    CHECK(limit_spohn(0.7, 0.0) == 0.0);
    CHECK(limit_deterministic(0.3, 2.0) == doctest::Approx(-std::abs(std::cos(0.6))));

    Rng rng = make_rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double th = kTwoPi * uniform01(rng), xi = 3.0 * uniform01(rng);
        REQUIRE(limit_deterministic(th, xi) == doctest::Approx(limit_deterministic(kPi / 2 - th, xi)));
        REQUIRE(limit_spohn(th, xi) == doctest::Approx(limit_spohn(kPi / 2 - th, xi)));
        REQUIRE(limit_deterministic(th, xi) == doctest::Approx(limit_deterministic(th + kPi / 2, xi)));
        REQUIRE(limit_spohn(th, xi) == doctest::Approx(limit_spohn(th + kPi, xi)));
    }
}

TEST_CASE("t1_limit: oracle values") {
    CHECK(t1_limit(kPi / 3, 5 * kPi / 12, kDet).value == doctest::Approx(0.9084936490538903).epsilon(1e-13));
    CHECK(t1_limit(kPi - 0.3, 1.2, kDet).value == doctest::Approx(-0.47229482321097105).epsilon(1e-13));
    CHECK(t1_limit(2.0, 0.4, kDet).value == doctest::Approx(-0.49013839889789856).epsilon(1e-13));
    CHECK(t1_limit(2.0, 0.4, kSpohn).value == doctest::Approx(-0.491594682873736).epsilon(1e-13));
    CHECK_FALSE(t1_limit(2.0, 0.4, kDet).degenerate);

    const double a = 3 * kPi / 4 + 0.1, b = 7 * kPi / 4 + 0.1;
    CHECK(t1_limit(a, b, kDet).value == doctest::Approx(0.25 * (std::sin(2 * b) - std::sin(2 * a))).epsilon(1e-13));

    const double c = kPi - 0.3, d = 1.2;
    CHECK(t1_limit(c, d, kDet).value == doctest::Approx(0.25 * (-2 + std::sin(2 * c) + std::sin(2 * d))).epsilon(1e-13));
}

TEST_CASE("t1_limit on the unit circle, theta = 0, r = 0.1") {
    const Curve unit = Curve::circle({0.0, 0.0}, 1.0);
    const Probe p = make_probe(unit, 0.75, 0.1);
    CHECK(t1_limit(p.theta0, p.theta1, kDet).value / 0.2 == doctest::Approx(-0.4968777358415255).epsilon(1e-10));
    CHECK(t1_limit(p.theta0, p.theta1, kSpohn).value / 0.2 == doctest::Approx(-0.4561019701459368).epsilon(1e-10));
}

TEST_CASE("t1_limit: straight lines give zero") {
    Rng rng = make_rng(5);
    const CornerDensityFn sym = CornerDensityFn::from([](double t) { return std::abs(std::sin(2 * t)) * 0.3; });
    for (int i = 0; i < 10000; ++i) {
        const double th = generic_angle(rng);
        for (const CornerDensityFn* C : {&kDet, &kSpohn, &sym}) {
            REQUIRE(std::abs(t1_limit(th, th + kPi, *C).value) <= 1e-12);
            REQUIRE(std::abs(t1_limit(th, th - kPi, *C).value) <= 1e-12);
        }
    }
}

TEST_CASE("t1_limit flags degenerate angles") {
    CHECK(t1_limit(0.0, kPi, kDet).degenerate);
    CHECK(t1_limit(kPi / 4, 2.0, kDet).degenerate);
    CHECK(t1_limit(1.0, 3 * kPi / 2, kDet).degenerate);
    CHECK_FALSE(t1_limit(1.0, 3.0, kDet).degenerate);
}

TEST_CASE("pro1_case: bullets") {
    const Pro1Case third = pro1_case(kPi / 3, 5 * kPi / 12);
    CHECK(third.bullet == 3);
    CHECK(third.k == 0);
    CHECK(third.value ==
          doctest::Approx(0.25 * (4 + std::sin(5 * kPi / 6) - std::sin(2 * kPi / 3))).epsilon(1e-13));

    // Opposite sectors, k = 0: up then down.
    const double a = kPi / 2 + 0.1, b = 3 * kPi / 2 - 0.4;
    const Pro1Case first = pro1_case(a, b);
    CHECK(first.bullet == 1);
    CHECK(first.k == 0);
    CHECK(first.value == doctest::Approx(0.25 * (std::sin(2 * b) - std::sin(2 * a))).epsilon(1e-13));

    // 3pi/4 + 0.1 lies in the k = 1 sector; the pair is a straight edge, so both
    // opposite-sector formulas give 0.
    const Pro1Case second = pro1_case(3 * kPi / 4 + 0.1, 7 * kPi / 4 + 0.1);
    CHECK(second.bullet == 2);
    CHECK(second.k == 1);
    CHECK(std::abs(second.value) <= 1e-15);
    const double c = kPi + 0.2, d = 0.4;
    CHECK(pro1_case(c, d).bullet == 2);
    CHECK(pro1_case(c, d).value == doctest::Approx(0.25 * (std::sin(2 * c) - std::sin(2 * d))).epsilon(1e-13));

    // A straight edge through the vertex.
    CHECK(std::abs(pro1_case(kPi / 2 + 0.2, 3 * kPi / 2 + 0.2).value) <= 1e-15);

    const Pro1Case fifth = pro1_case(kPi - 0.3, 1.2);
    CHECK(fifth.bullet == 5);
    CHECK(fifth.subcase == 2);
    CHECK(fifth.value == doctest::Approx(-0.47229482321097105).epsilon(1e-13));
    CHECK(fifth.label.find("bullet 5") != std::string::npos);

    CHECK_THROWS_WITH_AS(pro1_case(kPi / 4, 2.0), "boundary-octant angle", std::domain_error);
    CHECK_THROWS_AS(pro1_case(1.0, 7 * kPi / 4), std::domain_error);
}

TEST_CASE("pro1_case agrees with t1_limit on random corners") {
    Rng rng = make_rng(6);
    int seen[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 100000; ++i) {
        const double tp = generic_angle(rng), tn = generic_angle(rng);
        const Pro1Case pc = pro1_case(tp, tn);
        ++seen[pc.bullet];
        REQUIRE(std::abs(pc.value - t1_limit(tp, tn, kDet).value) <= 1e-12);
    }
    for (int b = 1; b <= 6; ++b) CHECK(seen[b] > 1000);
}

TEST_CASE("square corners of a counterclockwise polygon") {
    // Convex corner, edges towards the previous vertex pointing up and to the next
    // pointing right, rotated slightly off the axes.
    const double e = 1e-3;
    CHECK(pro1_case(kPi / 2 + e, e).value == doctest::Approx(-0.5).epsilon(1e-2));
    // Concave corner: the same two directions, swapped.
    CHECK(pro1_case(e, kPi / 2 + e).value == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("a locally larger plus region has a larger corner value") {
    // Counterclockwise, the interior at a vertex is swept from the next edge round to
    // the previous one; widening that sweep grows the region near the vertex.
    Rng rng = make_rng(7);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const double tn = generic_angle(rng, 1e-3);
        const double width = 0.05 + (kTwoPi - 0.1) * uniform01(rng);
        const double tp = wrap_angle(tn + width);
        const double grow_next = (kTwoPi - 0.05 - width) * uniform01(rng);
        const double grow_prev = (kTwoPi - 0.05 - width - grow_next) * uniform01(rng);
        const double tn2 = wrap_angle(tn - grow_next), tp2 = wrap_angle(tp + grow_prev);
        double small = 0.0, large = 0.0;
        try {
            small = pro1_case(tp, tn).value;
            large = pro1_case(tp2, tn2).value;
        } catch (const std::domain_error&) {
            continue;
        }
        ++checked;
        REQUIRE(small <= large + 1e-12);
    }
    CHECK(checked > 19000);
}
