import math

import numpy as np
import pytest

from hypack import (
    DomainError,
    RangeError,
    HPoint,
    ORIGIN,
    Isometry,
    make_isometry,
    apply,
    distance,
    HDisk,
    BallSpec,
    disk_euclidean_form,
    disk_from_euclidean,
    ball_area,
    angle_of_parallelism,
    Geodesic,
    geodesic_through,
    point_along,
    arc_coordinate,
    midpoint,
    signed_distance,
    perpendicular_bisector,
    GeodesicPolygon,
    polygon_area,
)

RNG_SEED = 20260816


def random_point(rng, span=3.0):
    return HPoint(rng.uniform(-span, span), math.exp(rng.uniform(-span, span)))


def random_isometry(rng):
    g = Isometry.translation(rng.uniform(-2, 2))
    g = g @ Isometry.dilation(math.exp(rng.uniform(-2, 2)))
    g = g @ Isometry.rotation(rng.uniform(-math.pi, math.pi))
    return g


# ---------------------------------------------------------------- distance

def test_distance_vertical_is_exact_log_identity():
    assert distance(HPoint(0, 1), HPoint(0, math.e)) == 1.0
    assert distance(HPoint(2.5, math.exp(-3)), HPoint(2.5, math.exp(4))) == 7.0


def test_distance_frozen_oracles():
    # values from an independent oracle: numeric quadrature of ds = |dz|/y
    # along the connecting semicircular geodesic (epsrel 1e-12)
    cases = [
        ((0.0, 1.0), (3.0, 2.0), 1.924847300238413),
        ((-1.0, 0.5), (2.0, 4.0), 2.529345200834626),
        ((0.3, 2.0), (5.0, 0.25), 3.956726246167853),
    ]
    for p, q, want in cases:
        got = distance(HPoint(*p), HPoint(*q))
        assert abs(got - want) < 1e-12


def test_distance_metric_properties():
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(200):
        p, q, r = (random_point(rng) for _ in range(3))
        dpq = distance(p, q)
        assert dpq >= 0.0
        assert distance(p, p) == 0.0
        assert abs(dpq - distance(q, p)) < 1e-12
        assert dpq <= distance(p, r) + distance(r, q) + 1e-12


def test_distance_log_domain_matches_scaled_safe_domain():
    rng = np.random.default_rng(RNG_SEED + 1)
    shift = 599.0
    scale = math.exp(shift)
    for _ in range(50):
        x1, x2 = rng.uniform(-2, 2, size=2)
        l1, l2 = rng.uniform(-2, 2, size=2)
        d_safe = distance(HPoint(x1, math.exp(l1)), HPoint(x2, math.exp(l2)))
        d_ext = distance(
            HPoint.from_log(x1 * scale, l1 + shift),
            HPoint.from_log(x2 * scale, l2 + shift),
        )
        assert abs(d_ext - d_safe) < 1e-9 * max(1.0, d_safe)


def test_distance_extreme_vertical():
    p = HPoint.from_log(0.0, -650.0)
    q = HPoint.from_log(0.0, -649.0)
    assert distance(p, q) == 1.0


def test_point_validation():
    with pytest.raises(DomainError):
        HPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        HPoint(0.0, -1.0)
    with pytest.raises(DomainError):
        HPoint(0.0, math.inf)
    p = HPoint.from_log(1.0, -800.0)  # below float underflow, still usable
    assert p.log_y == -800.0


# ---------------------------------------------------------------- isometries

def test_isometry_group_laws():
    rng = np.random.default_rng(RNG_SEED + 2)
    for _ in range(200):
        g = random_isometry(rng)
        h = random_isometry(rng)
        p = random_point(rng)
        assert abs(g.det - 1.0) < 1e-12
        assert distance((g @ h)(p), g(h(p))) < 1e-12
        assert distance((g @ g.inverse())(p), p) < 1e-12


def test_isometry_invariance_1000_pairs():
    rng = np.random.default_rng(RNG_SEED + 3)
    for _ in range(1000):
        g = random_isometry(rng)
        p, q = random_point(rng), random_point(rng)
        assert abs(distance(g(p), g(q)) - distance(p, q)) < 1e-9


def test_rotation_about_origin_by_pi():
    g = Isometry.rotation(math.pi, ORIGIN)
    img = g(HPoint(0, math.e))
    assert abs(img.x) < 1e-12
    assert abs(img.y - 1.0 / math.e) < 1e-12


def test_rotation_fixes_center():
    rng = np.random.default_rng(RNG_SEED + 4)
    for _ in range(50):
        p = random_point(rng)
        g = Isometry.rotation(rng.uniform(-math.pi, math.pi), p)
        assert distance(g(p), p) < 1e-12


def test_make_isometry_factory():
    p = HPoint(0.5, 2.0)
    assert distance(make_isometry("translation", t=1.0)(p), HPoint(1.5, 2.0)) < 1e-12
    assert distance(make_isometry("dilation", lam=4.0)(p), HPoint(2.0, 8.0)) < 1e-12
    g = make_isometry("rotation", theta=0.7, center=p)
    assert distance(g(p), p) < 1e-12
    with pytest.raises(DomainError):
        make_isometry("reflection")
    with pytest.raises(DomainError):
        Isometry.dilation(-1.0)
    with pytest.raises(DomainError):
        Isometry(1.0, 0.0, 0.0, -1.0)  # negative determinant


def test_apply_rejects_underflowing_image():
    p = HPoint.from_log(0.0, -600.0)
    with pytest.raises(RangeError):
        apply(Isometry.dilation(math.exp(-200.0)), p)


def test_apply_extreme_heights_affine_and_inversion():
    p = HPoint.from_log(3.0, 650.0)
    g = Isometry.dilation(math.exp(2.0))
    img = g(p)
    assert abs(img.log_y - 652.0) < 1e-9
    # inversion z -> -1/z sends great heights to tiny ones
    inv = Isometry(0.0, -1.0, 1.0, 0.0)
    img2 = inv(p)
    assert abs(img2.log_y + 650.0) < 1e-6


def test_apply_xy_matches_pointwise():
    rng = np.random.default_rng(RNG_SEED + 5)
    g = random_isometry(rng)
    xs = rng.uniform(-3, 3, size=64)
    ys = np.exp(rng.uniform(-3, 3, size=64))
    nx, ny = g.apply_xy(xs, ys)
    for i in range(64):
        img = g(HPoint(xs[i], ys[i]))
        assert abs(nx[i] - img.x) < 1e-10
        assert abs(ny[i] - img.y) < 1e-10 * max(1.0, img.y)


# ---------------------------------------------------------------- disks

def test_disk_euclid_form_identity_and_roundtrip():
    # (k - r)(k + r) = K^2, checked with the cancellation-free k - r field
    for K in (math.exp(-5), 1.0, math.exp(7)):
        for R in np.geomspace(1e-3, 30.0, 40):
            d = HDisk(HPoint(1.25, K), float(R))
            circ = disk_euclidean_form(d)
            # at large R the float difference k - r collapses; the stable
            # field must stay positive regardless
            assert circ.k >= circ.r
            assert circ.k_minus_r > 0.0
            lhs = circ.k_minus_r * (circ.k + circ.r)
            assert abs(lhs - K * K) <= 1e-10 * K * K
            back = disk_from_euclidean(circ)
            assert abs(back.center.y - K) <= 1e-10 * K
            assert abs(back.radius - R) <= 1e-10 * max(1.0, R)


def test_disk_boundary_points_at_radius():
    rng = np.random.default_rng(RNG_SEED + 6)
    for _ in range(100):
        d = HDisk(random_point(rng), rng.uniform(0.1, 5.0))
        theta = rng.uniform(0, 2 * math.pi)
        bp = d.boundary_point(theta)
        assert abs(distance(d.center, bp) - d.radius) < 1e-9


def test_disk_contains_and_euclid_agreement():
    rng = np.random.default_rng(RNG_SEED + 7)
    for _ in range(200):
        d = HDisk(random_point(rng), rng.uniform(0.1, 3.0))
        circ = d.euclid_form()
        p = random_point(rng)
        inside_h = d.contains(p)
        inside_e = (p.x - circ.h) ** 2 + (p.y - circ.k) ** 2 <= circ.r**2
        if abs(distance(d.center, p) - d.radius) > 1e-9:
            assert inside_h == inside_e


def test_ballspec_validation():
    with pytest.raises(DomainError):
        BallSpec(ORIGIN, 0.0)
    b = BallSpec(ORIGIN, 2.0)
    circ = b.euclid_form()
    assert circ.k > circ.r
    with pytest.raises(RangeError):
        HDisk(ORIGIN, 800.0).euclid_form()


# ---------------------------------------------------------------- areas

def test_ball_area_closed_form():
    # cross-checked by an independent Euclidean-measure MC estimate
    # over the bounding box at R=1: 3.4082 +- 0.0025
    assert abs(ball_area(1.0) - 3.4122762652849022) < 1e-12
    assert ball_area(0.0) == 0.0
    with pytest.raises(DomainError):
        ball_area(-0.5)
    with pytest.raises(RangeError):
        ball_area(601.0)


def test_volume_growth_ratios():
    # area(R + r)/area(R) converges to e^r
    for r in (0.5, 1.0, 2.0):
        ratio = ball_area(30.0 + r) / ball_area(30.0)
        assert abs(ratio - math.exp(r)) < 1e-6
    # area(R) e^{-R} converges to pi
    assert abs(ball_area(30.0) * math.exp(-30.0) - math.pi) < 0.01 * math.pi
    assert abs(ball_area(19.0) / ball_area(20.0) - math.exp(-1.0)) < 1e-3


def test_angle_of_parallelism_values():
    assert angle_of_parallelism(0.0) == math.pi / 2
    # frozen from arcsin(1/cosh t)
    assert abs(angle_of_parallelism(1.0) - 0.7050268435552380) < 1e-12
    assert abs(angle_of_parallelism(2.0) - 0.2690359907488816) < 1e-12
    ts = np.linspace(0, 10, 50)
    vals = [angle_of_parallelism(float(t)) for t in ts]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-3
    with pytest.raises(DomainError):
        angle_of_parallelism(-0.1)


# ---------------------------------------------------------------- geodesics

def test_geodesic_through_and_arclength():
    rng = np.random.default_rng(RNG_SEED + 8)
    for _ in range(100):
        p, q = random_point(rng), random_point(rng)
        if abs(p.x - q.x) < 1e-6:
            continue
        geo = geodesic_through(p, q)
        s_p = arc_coordinate(geo, p)
        s_q = arc_coordinate(geo, q)
        assert abs(abs(s_p - s_q) - distance(p, q)) < 1e-9
        # point_along inverts arc_coordinate
        assert distance(point_along(geo, s_p), p) < 1e-9


def test_midpoint_bisects():
    rng = np.random.default_rng(RNG_SEED + 9)
    for _ in range(100):
        p, q = random_point(rng), random_point(rng)
        m = midpoint(p, q)
        half = 0.5 * distance(p, q)
        assert abs(distance(p, m) - half) < 1e-9
        assert abs(distance(q, m) - half) < 1e-9
    m = midpoint(HPoint(0, 1), HPoint(0, math.exp(4)))
    assert m.x == 0.0 and abs(m.log_y - 2.0) < 1e-15


def test_signed_distance_line_and_circle():
    line = Geodesic.vertical(0.0)
    assert abs(signed_distance(line, HPoint(math.sinh(1.0), 1.0)) - 1.0) < 1e-12
    assert signed_distance(line, HPoint(-0.5, 1.0)) < 0.0
    circ = Geodesic.circle(0.0, 1.0)
    p_on = HPoint(0.0, 1.0)
    assert abs(signed_distance(circ, p_on)) < 1e-12
    # distance agrees with the true metric distance to the geodesic
    rng = np.random.default_rng(RNG_SEED + 10)
    for _ in range(50):
        p = random_point(rng)
        sd = abs(signed_distance(circ, p))
        brute = min(
            distance(p, point_along(circ, s)) for s in np.linspace(-12, 12, 4001)
        )
        assert sd <= brute + 1e-9
        assert brute - sd < 1e-4  # the sampled minimum is only approximate


def test_perpendicular_bisector_closed_form():
    geo = perpendicular_bisector(HPoint(0, 1), HPoint(0, math.e**2))
    assert not geo.is_line
    assert abs(geo.c) < 1e-12
    assert abs(geo.r - math.e) < 1e-12
    geo2 = perpendicular_bisector(HPoint(-1, 2), HPoint(3, 2))
    assert geo2.is_line and abs(geo2.x0 - 1.0) < 1e-12


def test_perpendicular_bisector_equidistance():
    rng = np.random.default_rng(RNG_SEED + 11)
    for _ in range(100):
        p, q = random_point(rng), random_point(rng)
        if distance(p, q) < 1e-3:
            continue
        geo = perpendicular_bisector(p, q)
        for s in (-1.0, 0.0, 1.5):
            z = point_along(geo, s)
            assert abs(distance(z, p) - distance(z, q)) < 1e-9


# ---------------------------------------------------------------- polygons

def tight_triangle(m=7):
    r = 0.5 * math.acosh(1.0 / (math.tan(math.pi / m) * math.tan(2 * math.pi / m)))
    v0 = HPoint(0.0, 1.0)
    v1 = HPoint(0.0, math.exp(2 * r))
    v2 = apply(Isometry.rotation(2 * math.pi / m, v0), v1)
    return GeodesicPolygon([v0, v1, v2])


def test_polygon_area_tight_triangle():
    # equilateral triangle with all angles 2 pi / 7 has area pi - 3 * 2 pi / 7 = pi / 7
    tri = tight_triangle(7)
    assert abs(polygon_area(tri) - math.pi / 7) < 1e-9


def test_polygon_area_isometry_invariant():
    rng = np.random.default_rng(RNG_SEED + 12)
    tri = tight_triangle(7)
    for _ in range(25):
        g = random_isometry(rng)
        moved = GeodesicPolygon([g(v) for v in tri.vertices])
        assert abs(polygon_area(moved) - polygon_area(tri)) < 1e-9


def test_polygon_area_near_degenerate_is_tiny():
    # middle vertex sits just off the connecting geodesic, so the triangle
    # is a sliver and its area is near zero
    p, q = HPoint(0, 1), HPoint(2, 1)
    geo = geodesic_through(p, q)
    mid_s = 0.5 * (arc_coordinate(geo, p) + arc_coordinate(geo, q))
    on_geo = point_along(geo, mid_s)
    m = HPoint(on_geo.x, on_geo.y * (1 + 1e-5))
    tri = GeodesicPolygon([p, m, q])
    assert 0.0 < polygon_area(tri) < 1e-3


def test_polygon_rejects_self_intersection():
    # bowtie: edges cross between vertices 0-1 and 2-3
    pts = [HPoint(0, 1), HPoint(2, 1), HPoint(0, 2), HPoint(2, 2)]
    with pytest.raises(DomainError):
        GeodesicPolygon(pts)


def test_polygon_rejects_too_few_vertices():
    with pytest.raises(DomainError):
        GeodesicPolygon([HPoint(0, 1), HPoint(1, 1)])
