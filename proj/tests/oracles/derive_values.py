#!/usr/bin/env python3
"""Independent reference values frozen into the C++ unit tests.

Everything here is re-derived from the model definitions with plain Python (and
shapely for polygon/box intersection), without calling the library.  Run it to
regenerate the numbers; the tests carry the printed values verbatim.
"""
import math
import random
from fractions import Fraction

from shapely.geometry import Polygon, box


def locate(p, n):
    # half-open boxes [k - 1/2, k + 1/2) in lattice units
    return tuple(math.floor(c * n + 0.5) for c in p)


def box_disk_dist2(i, j, n, cx, cy):
    lo_x, hi_x = (i - 0.5) / n, (i + 0.5) / n
    lo_y, hi_y = (j - 0.5) / n, (j + 0.5) / n
    dx = max(lo_x - cx, 0.0, cx - hi_x)
    dy = max(lo_y - cy, 0.0, cy - hi_y)
    return dx * dx + dy * dy


def discretize(disks, n):
    out = set()
    for cx, cy, r in disks:
        for i in range(math.floor((cx - r) * n) - 2, math.ceil((cx + r) * n) + 3):
            for j in range(math.floor((cy - r) * n) - 2, math.ceil((cy + r) * n) + 3):
                if box_disk_dist2(i, j, n, cx, cy) < r * r:
                    out.add((i, j))
    return out


def spin(cfg, i, j):
    return 1 if (i, j) in cfg else -1


def s_count(cfg, i, j):
    v = spin(cfg, i, j)
    return sum(spin(cfg, i + a, j + b) != v for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1)))


def generator(cfg, region, alpha=Fraction(1, 2)):
    total = Fraction(0)
    for i, j in region:
        s = s_count(cfg, i, j)
        if s < 2:
            continue
        rate = 1 if s >= 3 else alpha
        total += -rate if spin(cfg, i, j) == 1 else rate
    return total


def circle_probe(R, phi_s, r):
    # chord of length r subtends 2 asin(r / 2R); tangent at polar angle phi is phi + pi/2
    beta = 2 * math.asin(r / (2 * R))
    phi0, phi1 = phi_s - beta, phi_s + beta
    x0 = (R * math.cos(phi0), R * math.sin(phi0))
    x1 = (R * math.cos(phi1), R * math.sin(phi1))
    th0 = (phi0 - math.pi / 2) % (2 * math.pi)
    th1 = (phi1 + math.pi / 2) % (2 * math.pi)
    return x0, x1, th0, th1


def sgn(x):
    return (x > 0) - (x < 0)


def t1(th0, th1, C):
    def end(t):
        s, c = math.sin(t), math.cos(t)
        return sgn(s * c) * (c * c + C(t) * (abs(s) - abs(c)))

    v = -0.5 * end(th0) + 0.5 * end(th1)
    if math.sin(th0) * math.sin(th1) > 0:
        if math.cos(th0) * math.cos(th1) > 0:
            v += sgn(th1 - th0)
        if math.cos(th0) * math.cos(th1) < 0:
            v += sgn(math.sin(th0) * math.cos(th0))
    return v


def c_det(t):
    return min(abs(math.sin(t)), abs(math.cos(t)))


def c_spohn(t):
    s, c = abs(math.sin(t)), abs(math.cos(t))
    return abs(math.sin(2 * t)) / (2 * (s + c))


def polygon_plus_count(verts, n):
    poly = Polygon(verts)
    minx, miny, maxx, maxy = poly.bounds
    count = 0
    for i in range(math.floor(minx * n) - 2, math.ceil(maxx * n) + 3):
        for j in range(math.floor(miny * n) - 2, math.ceil(maxy * n) + 3):
            if poly.intersects(box((i - 0.5) / n, (j - 0.5) / n, (i + 0.5) / n, (j + 0.5) / n)):
                count += 1
    return count


def averaged_literal(cfg, n, s, r, x0, x1, delta, M):
    total = Fraction(0)
    for a in range(M):
        for b in range(M):
            a1 = (a + 0.5) * delta / M
            a2 = (b + 0.5) * delta / M
            reg = discretize([(s[0], s[1], r), (x0[0], x0[1], a1), (x1[0], x1[1], a2)], n)
            total += generator(cfg, reg)
    return total / (M * M)


def main():
    print("# lattice")
    print("locate(0.26,-0.26;N=2) =", locate((0.26, -0.26), 2))
    print("locate(0.5,0;N=1) =", locate((0.5, 0.0), 1))
    print("unit disk N=1 boxes =", sorted(discretize([(0.0, 0.0, 1.0)], 1)))
    print("unit disk N=8 count =", len(discretize([(0.0, 0.0, 1.0)], 8)))
    print("disk (0.3,0.1) r=0.45 N=10 count =", len(discretize([(0.3, 0.1, 0.45)], 10)))

    print("# geometry")
    x0, x1, th0, th1 = circle_probe(1.0, 0.0, 0.5)
    print("circle probe s=(1,0) r=0.5: x0 =", x0, "x1 =", x1, "theta0 =", th0, "theta1 =", th1)
    print("  polar angles -+", 2 * math.asin(0.25))
    for r in (0.2, 0.1, 0.05, 0.025):
        x0, x1, th0, th1 = circle_probe(1.0, -math.pi / 2, r)
        print("  unit circle theta=0 r=%g: sin(th0-th1)/2r = %r cos(th0+th1) = %r" %
              (r, math.sin(th0 - th1) / (2 * r), math.cos(th0 + th1)))
    print("ellipse a=2 b=1 curvature at t=0:", 2 / 1 ** 2)

    print("# initcond")
    print("unit disk N=64 deterministic plus count =", len(discretize([(0.0, 0.0, 1.0)], 64)))
    print("square [-0.5,0.5]^2 + (1/(2N)+1e-7) N=16 count =",
          polygon_plus_count([(-0.5 + 1 / 32 + 1e-7, -0.5 + 1 / 32 + 1e-7), (0.5 + 1 / 32 + 1e-7, -0.5 + 1 / 32 + 1e-7),
                              (0.5 + 1 / 32 + 1e-7, 0.5 + 1 / 32 + 1e-7), (-0.5 + 1 / 32 + 1e-7, 0.5 + 1 / 32 + 1e-7)], 16))
    e = 1e-3
    # shifted by (e, 2e): an unshifted (or diagonally shifted) diamond runs through box corners
    print("diamond side sqrt2 centred (e,2e), N=64 count =",
          polygon_plus_count([(1 + e, 2 * e), (e, 1 + 2 * e), (-1 + e, 2 * e), (e, -1 + 2 * e)], 64))
    print("triangle (0.2,0.2),(0.3,0.21),(0.25,0.3) N=4 count =",
          polygon_plus_count([(0.2, 0.2), (0.3, 0.21), (0.25, 0.3)], 4))
    print("triangle (0.31,0.12),(0.52,0.2),(0.4,0.55) N=7 count =",
          polygon_plus_count([(0.31, 0.12), (0.52, 0.2), (0.4, 0.55)], 7))
    print("spohn f'=1: mean increment =", sum(l * 2.0 ** (-l - 1) for l in range(200)),
          "P(eta!=0) =", 1 - 0.5)
    print("spohn f'=3: mean increment =", sum(l * 0.75 ** l * 0.25 for l in range(2000)),
          "P(eta!=0) =", 3 / 4)

    print("# boundary / drift")
    # plus quadrant {x<=0, y<=0} cut to a 12x12 block; region: disk of radius 3 around the corner
    quad = {(i, j) for i in range(-11, 1) for j in range(-11, 1)}
    reg = discretize([(0.0, 0.0, 3.0)], 1)
    print("square corner generator =", generator(quad, reg))
    # 45 degree staircase: plus region {y <= -x}; corner sites with s = 2 in a disk
    stair = {(i, j) for i in range(-20, 21) for j in range(-25, 21) if j <= -i}
    reg = discretize([(0.0, 0.0, 5.0)], 1)
    print("45deg staircase s=2 plus sites in disk r=5 =",
          sum(1 for (i, j) in reg if spin(stair, i, j) == 1 and s_count(stair, i, j) == 2))
    print("45deg staircase generator in disk r=5 =", generator(stair, reg))
    # literal averaged drift on a small deterministic circle
    n, R = 40, 1.0
    disk = discretize([(0.0, 0.0, R)], n)
    s = (0.0, -1.0)
    x0, x1, th0, th1 = circle_probe(R, -math.pi / 2, 0.3)
    print("averaged literal N=40 r=0.3 delta=0.05 M=4 =", averaged_literal(disk, n, s, 0.3, x0, x1, 0.05, 4))
    print("averaged literal N=40 r=0.3 delta=0.05 M=1 =", averaged_literal(disk, n, s, 0.3, x0, x1, 0.05, 1))

    print("# theory")
    print("limit_det(0,1) =", -0.5 * abs(math.cos(0)), " limit_spohn(pi/4,1) =",
          -1 / (2 * (abs(math.cos(math.pi / 4)) + abs(math.sin(math.pi / 4))) ** 2))
    a, b = 3 * math.pi / 4 + 0.1, 7 * math.pi / 4 + 0.1
    print("t1 first bullet pair =", t1(a, b, c_det), " 1/4(sin2b - sin2a) =", 0.25 * (math.sin(2 * b) - math.sin(2 * a)))
    a, b = math.pi / 3, 5 * math.pi / 12
    print("t1 pi/3,5pi/12 =", t1(a, b, c_det), " third bullet =",
          0.25 * (4 * sgn(b - a) + math.sin(2 * b) - math.sin(2 * a)))
    a, b = math.pi - 0.3, 1.2  # |tan a| <= 1, |tan b| >= 1, adjacent sectors
    print("t1 pi-0.3,1.2 =", t1(a, b, c_det), " fifth bullet =", 0.25 * (-2 + math.sin(2 * a) + math.sin(2 * b)))
    a, b = 2.0, 0.4
    print("t1 2.0,0.4 det =", t1(a, b, c_det), " spohn =", t1(a, b, c_spohn))
    x0, x1, th0, th1 = circle_probe(1.0, -math.pi / 2, 0.1)
    print("unit circle theta=0 r=0.1: t1 det/2r =", t1(th0, th1, c_det) / 0.2, " spohn/2r =", t1(th0, th1, c_spohn) / 0.2)

    print("# simulate")
    rng = random.Random(7)
    reps = 200000
    print("2x2 block first-event mean (exp rate 2) =", sum(rng.expovariate(2.0) for _ in range(reps)) / reps, "(exact 0.5)")


if __name__ == "__main__":
    main()
