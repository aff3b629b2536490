"""Coverage-density curves, limits, and transport-style averages.

The central object is the density curve: the covered fraction of balls
of growing radius about a fixed center. Exact quadrature and closed
forms are used whenever the target supplies them; otherwise fractions
are Monte Carlo estimates with reported standard errors. In this
geometry boundary effects never vanish, so curves need not converge;
the oscillation report summarizes their tail behavior instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, UnsupportedOperationError
from .hgeom import (
    ORIGIN,
    BallSpec,
    HPoint,
    angle_of_parallelism,
    ball_area,
    cosh_distance_xy,
)
from .packings import BrickTile, TightPacking, brick_region
from .regions import (
    AreaEstimate,
    SamplePlan,
    _ball_points,
    annulus_fraction_euclid,
    mc_area_fraction,
    sample_ball_uniform,
)
from .voronoi import VoronoiCell, packing_cell

CSV_HEADER = "radius,fraction,std_error,samples,method"


@dataclass(frozen=True)
class CurvePoint:
    radius: float
    fraction: float
    std_error: float
    samples: int

    def __iter__(self):
        return iter((self.radius, self.fraction, self.std_error))


@dataclass(frozen=True)
class DensityCurve:
    """Covered fraction of balls about a fixed center, one point per radius."""

    center: HPoint
    points: tuple
    method: str

    def __post_init__(self):
        if self.method not in ("mc", "quadrature", "closed-form"):
            raise DomainError(f"unknown curve method {self.method!r}")
        radii = [pt.radius for pt in self.points]
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("curve radii must be strictly increasing")
        for pt in self.points:
            if not (0.0 <= pt.fraction <= 1.0):
                raise DomainError(f"fraction {pt.fraction} outside [0, 1]")

    @property
    def radii(self):
        return np.array([pt.radius for pt in self.points])

    @property
    def fractions(self):
        return np.array([pt.fraction for pt in self.points])

    @property
    def std_errors(self):
        return np.array([pt.std_error for pt in self.points])

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for pt in self.points:
            lines.append(
                f"{pt.radius:.17g},{pt.fraction:.17g},{pt.std_error:.17g},"
                f"{pt.samples},{self.method}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OscillationReport:
    liminf_est: float
    limsup_est: float
    window: tuple
    converged: bool
    tolerance: float


def _exact_fraction(target, ball: BallSpec):
    exact = getattr(target, "exact_area_in_ball", None)
    if exact is None:
        return None
    area = exact(ball)
    if area is None:
        return None
    total = ball_area(ball.radius)
    return min(max(area / total, 0.0), 1.0)


def density_curve(target, center: HPoint, radii, plan: SamplePlan) -> DensityCurve:
    """Density curve of a packing or region about center at the given radii.

    Uses the target's exact ball quadrature when it covers every radius;
    otherwise falls back to Monte Carlo with per-radius plans derived
    from the given seed.
    """
    radii = [float(r) for r in radii]
    if not radii:
        raise DomainError("at least one radius is required")
    if any(not (r > 0.0) or not math.isfinite(r) for r in radii):
        raise DomainError("radii must be positive and finite")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly increasing")

    exact = [_exact_fraction(target, BallSpec(center, r)) for r in radii]
    if all(f is not None for f in exact):
        method = getattr(target, "exact_method", "quadrature")
        points = tuple(
            CurvePoint(r, f, 0.0, 0) for r, f in zip(radii, exact)
        )
        return DensityCurve(center=center, points=points, method=method)

    points = []
    for k, r in enumerate(radii):
        sub = SamplePlan(seed=plan.seed + k, n=plan.n, strata=plan.strata)
        est = mc_area_fraction(target, BallSpec(center, r), sub)
        points.append(CurvePoint(r, est.fraction, est.std_error, est.samples))
    return DensityCurve(center=center, points=tuple(points), method="mc")


def f_R_average(target, R: float, plan: SamplePlan) -> AreaEstimate:
    """Covered fraction of the ball of radius R about the standard origin."""
    curve = density_curve(target, ORIGIN, [R], plan)
    pt = curve.points[0]
    return AreaEstimate(pt.fraction, pt.std_error, pt.samples, curve.method)


def oscillation_report(
    curve: DensityCurve,
    window_fraction: float = 0.5,
    tolerance: float = 0.01,
) -> OscillationReport:
    """Tail extrema of a density curve over its trailing radius window.

    The window is the last window_fraction of the radius range. Fewer
    than four curve points inside it leave the extrema meaningless, so
    that is a domain error.
    """
    if not (0.0 < window_fraction <= 1.0):
        raise DomainError("window_fraction must lie in (0, 1]")
    radii = curve.radii
    r_hi = float(radii[-1])
    r_lo = float(radii[-1] - window_fraction * (radii[-1] - radii[0]))
    sel = radii >= r_lo - 1e-12
    if int(np.count_nonzero(sel)) < 4:
        raise DomainError(
            f"only {int(np.count_nonzero(sel))} curve points in the tail "
            f"window [{r_lo:g}, {r_hi:g}]; need at least 4"
        )
    tail = curve.fractions[sel]
    liminf_est = float(tail.min())
    limsup_est = float(tail.max())
    return OscillationReport(
        liminf_est=liminf_est,
        limsup_est=limsup_est,
        window=(r_lo, r_hi),
        converged=(limsup_est - liminf_est) <= tolerance,
        tolerance=tolerance,
    )


def halfspace_density_limit(t: float, side: str) -> float:
    """Limiting covered fraction of balls centered distance t into a
    closed half-space ("near") or its complement ("far")."""
    if not (t >= 0.0) or not math.isfinite(t):
        raise DomainError(f"signed distance must be >= 0, got {t}")
    far = angle_of_parallelism(t) / math.pi
    if side == "near":
        return 1.0 - far
    if side == "far":
        return far
    raise DomainError(f"side must be 'near' or 'far', got {side!r}")


def fundamental_domain_density(packing) -> float:
    """Exact covered fraction of the packing's fundamental domain."""
    domain = getattr(packing, "fundamental_domain", None)
    if domain is None:
        raise UnsupportedOperationError(
            f"{type(packing).__name__} carries no fundamental domain"
        )
    return domain.covered_area() / domain.area()


def _resolve_tile(tile):
    """Normalize a tile argument to (region-with-sampler, exact area)."""
    if isinstance(tile, BrickTile):
        return brick_region(tile), tile.area()
    if isinstance(tile, VoronoiCell):
        region = tile.region()
        return region, tile.area()
    area_fn = getattr(tile, "area", None)
    sampler = getattr(tile, "sample_uniform", None)
    if area_fn is None or sampler is None:
        raise UnsupportedOperationError(
            f"{type(tile).__name__} supports neither exact area nor sampling"
        )
    return tile, float(area_fn())


def tile_density(packing, tile, plan: SamplePlan) -> AreaEstimate:
    """Covered fraction of a tile under a packing.

    Exact (closed-form) when the tile is a Dirichlet cell of a tight
    packing, whose inscribed disk is the entire covered part; Monte
    Carlo by uniform tile sampling otherwise.
    """
    region, area = _resolve_tile(tile)
    if not (area > 0.0):
        raise DomainError(f"tile has non-positive area {area:g}")

    if isinstance(tile, VoronoiCell) and isinstance(packing, TightPacking):
        rho = packing.disk_radius
        near = packing.centers_in_ball(BallSpec(tile.site, 1e-9))
        if near and rho <= tile.inscribed_radius_bound() + 1e-12:
            return AreaEstimate(ball_area(rho) / area, 0.0, 0, "closed-form")

    xs, ys = region.sample_uniform(plan)
    cov = np.asarray(packing.covers_xy(xs, ys), dtype=bool)
    frac = float(np.mean(cov))
    se = math.sqrt(frac * (1.0 - frac) / plan.n)
    return AreaEstimate(frac, se, plan.n, "mc")


def annulus_density_curve(exponents) -> DensityCurve:
    """Closed-form density curve of the dyadic annulus region.

    One point per integer exponent K: the black fraction of the
    Euclidean disk of radius 2^K about the origin. The radius column
    carries K itself (the log2 radius), matching how the region
    oscillates on dyadic scales.
    """
    pts = []
    for K in exponents:
        if float(K) != int(K):
            raise DomainError(f"annulus exponents must be integers, got {K!r}")
        pts.append(CurvePoint(float(K), annulus_fraction_euclid(int(K)), 0.0, 0))
    return DensityCurve(center=ORIGIN, points=tuple(pts), method="closed-form")


class EuclidDiskLattice:
    """Unit-spacing integer lattice of Euclidean disks of radius 1/2."""

    def __init__(self, radius: float = 0.5, spacing: float = 1.0):
        if not (0.0 < radius <= spacing / 2.0):
            raise DomainError(
                f"radius {radius} must lie in (0, spacing/2] for a packing"
            )
        self.radius = radius
        self.spacing = spacing

    def covers_xy(self, xs, ys):
        xs = np.asarray(xs, dtype=float) / self.spacing
        ys = np.asarray(ys, dtype=float) / self.spacing
        dx = xs - np.round(xs)
        dy = ys - np.round(ys)
        r = self.radius / self.spacing
        return dx * dx + dy * dy <= r * r

    def density(self) -> float:
        return math.pi * self.radius**2 / self.spacing**2


def euclid_window_density(packing, side: float, plan: SamplePlan) -> AreaEstimate:
    """Covered fraction of the axis-aligned square of the given side at the
    origin, under a Euclidean packing. Converges as the side grows."""
    if not (side > 0.0) or not math.isfinite(side):
        raise DomainError(f"window side must be positive, got {side}")
    rng = np.random.Generator(np.random.Philox(plan.seed))
    xs = (rng.random(plan.n) - 0.5) * side
    ys = (rng.random(plan.n) - 0.5) * side
    cov = np.asarray(packing.covers_xy(xs, ys), dtype=bool)
    frac = float(np.mean(cov))
    se = math.sqrt(frac * (1.0 - frac) / plan.n)
    return AreaEstimate(frac, se, plan.n, "mc")


def mass_transport_check(
    packing,
    window: BallSpec,
    plan: SamplePlan,
    boundary_tol: float = 1e-9,
) -> float:
    """Mean Dirichlet-cell density over area-uniform points of the window.

    Each sampled point is charged the covered fraction of the cell it
    lands in. Points within boundary_tol of a cell wall (equidistant
    from their two nearest sites) are resampled so the charge is well
    defined. For packings whose cells tile with one density this mean
    reproduces that density regardless of the window.
    """
    spacing = 2.0 * packing.disk_radius
    sites = packing.centers_in_ball(
        BallSpec(window.center, window.radius + 2.0 * spacing)
    )
    if len(sites) < 2:
        raise DomainError("window holds too few packing centers")
    sx = np.array([s.x for s in sites])
    sy = np.array([s.y for s in sites])
    tree = cKDTree(np.column_stack([sx, sy]))

    xs, ys = sample_ball_uniform(window, plan)
    rng = np.random.Generator(np.random.Philox(plan.seed + 977))
    owner = np.empty(plan.n, dtype=np.int64)
    for k in range(plan.n):
        while True:
            j, gap = _nearest_site(tree, sx, sy, float(xs[k]), float(ys[k]), spacing)
            if gap >= boundary_tol:
                owner[k] = j
                break
            nx, ny = _ball_points(window, rng, 1)
            xs[k], ys[k] = float(nx[0]), float(ny[0])

    values = np.empty(plan.n)
    cache: dict[int, float] = {}
    for k in range(plan.n):
        j = int(owner[k])
        if j not in cache:
            cell = packing_cell(packing, sites[j])
            cache[j] = tile_density(packing, cell, plan).fraction
        values[k] = cache[j]
    return float(np.mean(values))


def _nearest_site(tree, sx, sy, x, y, rho0):
    """Index of the hyperbolically nearest site and the margin to the
    second nearest, via Euclidean disk queries of growing radius."""
    rho = rho0
    while True:
        idx = tree.query_ball_point([x, y * math.cosh(rho)], y * math.sinh(rho))
        if len(idx) >= 2:
            break
        rho *= 1.5
        if rho > 50.0:
            raise DomainError("could not locate two sites near a sample point")
    idx = np.asarray(idx)
    d = np.arccosh(np.maximum(cosh_distance_xy(x, y, sx[idx], sy[idx]), 1.0))
    order = np.argsort(d)
    return int(idx[order[0]]), float(d[order[1]] - d[order[0]])
