"""Packing constructors for the upper half-plane.

A packing is a collection of closed disks with pairwise disjoint
interiors. This module builds the studied families: the horocyclic
stripe model, the Boroczky disk packing with its tile-dependent density,
the tight {3,m} packings whose disks sit on the vertices of the {3,m}
triangulation, and the horoball brick tiles used to exhibit the density
ambiguity of the Boroczky packing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DedupCollisionError, DomainError, RangeError, SaturationError
from .hgeom import (
    ORIGIN,
    BallSpec,
    GeodesicPolygon,
    HDisk,
    HPoint,
    Isometry,
    apply,
    ball_area,
    distance,
    polygon_area,
)
from .regions import Region, SamplePlan, StripeRegion, quad_black_fraction


# --------------------------------------------------------------------------
# base type


class Packing:
    """Closed disks with pairwise disjoint interiors."""

    label = "packing"
    fundamental_domain = None

    def bodies_in_ball(self, ball: BallSpec) -> list[HDisk]:
        """All disks whose closure meets the closed ball."""
        raise NotImplementedError

    def covers(self, p: HPoint) -> bool:
        ball = BallSpec(p, 1e-9)
        return any(d.contains(p) for d in self.bodies_in_ball(ball))

    def covers_xy(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        out = np.empty(xs.shape, dtype=bool)
        fx, fy, fo = xs.ravel(), ys.ravel(), out.ravel()
        for i in range(fx.size):
            fo[i] = self.covers(HPoint(fx[i], fy[i]))
        return out


def pairwise_min_gap(disks) -> float:
    """Smallest (center distance - radius sum) over disk pairs; inf if < 2 disks.

    A packing window is admissible when this is >= -1e-9: interiors are
    pairwise disjoint up to roundoff, tangencies land at exactly zero.
    """
    n = len(disks)
    if n < 2:
        return math.inf
    xs = np.array([d.center.x for d in disks])
    ys = np.exp(np.array([d.center.log_y for d in disks]))
    rad = np.array([d.radius for d in disks])
    best = math.inf
    chunk = max(1, int(4.0e6 // max(n, 1)))
    for i0 in range(0, n, chunk):
        i1 = min(i0 + chunk, n)
        dx = xs[i0:i1, None] - xs[None, :]
        dy = ys[i0:i1, None] - ys[None, :]
        cd = 1.0 + (dx * dx + dy * dy) / (2.0 * ys[i0:i1, None] * ys[None, :])
        d = np.arccosh(np.maximum(cd, 1.0))
        gap = d - (rad[i0:i1, None] + rad[None, :])
        rows = np.arange(i0, i1)
        gap[rows - i0, rows] = np.inf
        best = min(best, float(gap.min()))
    return best


def disjointness_audit(packing: Packing, windows) -> float:
    """Min pairwise gap over every window's bodies (inf if all windows trivial)."""
    gaps = [pairwise_min_gap(packing.bodies_in_ball(w)) for w in windows]
    return min(gaps, default=math.inf)


# --------------------------------------------------------------------------
# stripe model


def stripe_contains(p: HPoint, W: float) -> bool:
    """True iff p lies in a black stripe of width W.

    Stripes are bounded by the horocycles y_j = e^{(j+1/2) W}; the stripe
    with index j = floor(log(y)/W - 1/2) is black when j is odd, which
    puts the base point (0, 1) in the black stripe j = -1. Intervals are
    half-open from below: a point exactly on y_j belongs to stripe j.
    """
    if not (W > 0.0) or not math.isfinite(W):
        raise DomainError(f"stripe width must be positive and finite, got {W}")
    return math.floor(p.log_y / W - 0.5) % 2 != 0


def halfspace_contains(p: HPoint) -> bool:
    """True iff p lies in the closed half-plane x >= 0."""
    return p.x >= 0.0


class StripeModel(Region):
    """Alternating black/white stripes between equidistant horocycles.

    Consecutive horocycles y_j = e^{(j+1/2) W} are at hyperbolic distance
    exactly W. The model behaves as the indicator region of the black
    union; the covered fraction of any ball is available in closed form
    through one-dimensional quadrature.
    """

    def __init__(self, W: float):
        if not (W > 0.0) or not math.isfinite(W):
            raise DomainError(f"stripe width must be positive and finite, got {W}")
        self.W = float(W)
        self.label = f"stripe(W={self.W:g})"
        self._region = StripeRegion(self.W)

    def region(self) -> StripeRegion:
        return self._region

    def horocycle_point(self, j: int) -> HPoint:
        """The point (0, y_j) on the j-th bounding horocycle."""
        return HPoint.from_log(0.0, (j + 0.5) * self.W)

    def critical_radius(self, N: int) -> float:
        """The oscillation radius (N + 1/2) W about the base point."""
        return (N + 0.5) * self.W

    def black_fraction(self, R: float, center: HPoint = ORIGIN) -> float:
        return quad_black_fraction(self.W, R, center_log_y=center.log_y)

    def contains(self, p: HPoint) -> bool:
        return self._region.contains(p)

    def covers_xy(self, xs, ys):
        return self._region.covers_xy(xs, ys)

    def exact_area_in_ball(self, ball: BallSpec) -> float:
        return self._region.exact_area_in_ball(ball)


# --------------------------------------------------------------------------
# Boroczky packing

_WITHIN_ROW = math.acosh(1.5)


def boroczky_max_radius() -> float:
    """Largest admissible disk radius arccosh(3/2)/2.

    Adjacent centers within a row are at distance arccosh(3/2); distinct
    rows are at least distance 2 apart, so the within-row spacing is the
    binding constraint and this radius realizes within-row tangency.
    """
    return 0.5 * _WITHIN_ROW


class BoroczkyPacking(Packing):
    """Equal disks about the centers (e^{2j+1/2}(k+1/2), e^{2j+1/2}).

    Row j sits at height e^{2j+1/2}; within a row the spacing equals the
    height. The center set is invariant under the dilation
    (x, y) -> (e^2 x, e^2 y), which shifts j by one, and under the
    x-translation by one spacing, which shifts k. Coverage queries are
    O(1): only the row j = floor(log(y)/2) can cover a point, and only
    the nearest few columns.
    """

    _DISK_CAP = 2_000_000

    def __init__(self, disk_radius: float | None = None):
        rho_max = boroczky_max_radius()
        if disk_radius is None:
            disk_radius = rho_max
        if not (disk_radius > 0.0) or not math.isfinite(disk_radius):
            raise DomainError(f"disk radius must be positive, got {disk_radius}")
        if disk_radius > rho_max + 1e-12:
            raise SaturationError(
                f"disk radius {disk_radius:.12g} exceeds the saturation bound "
                f"{rho_max:.12g} set by within-row tangency",
                maximum=rho_max,
            )
        self.disk_radius = float(disk_radius)
        self.label = f"boroczky(rho={self.disk_radius:.6g})"

    def center(self, j: int, k: int) -> HPoint:
        a = 2.0 * j + 0.5
        if abs(a) > 700.0:
            raise RangeError(f"row {j} lies beyond representable heights")
        x = (k + 0.5) * math.exp(a)
        if not math.isfinite(x):
            raise RangeError(f"center ({j}, {k}) overflows the x coordinate")
        return HPoint.from_log(x, a)

    def covers(self, p: HPoint) -> bool:
        L = p.log_y
        j = math.floor(L / 2.0)
        a = 2.0 * j + 0.5
        v = math.exp(L - a)
        u = (p.x * math.exp(-0.5 * a)) * math.exp(-0.5 * a)
        if not math.isfinite(u):
            return False
        ch = math.cosh(self.disk_radius)
        k = round(u - 0.5)
        for kk in (k - 1, k, k + 1):
            du = u - (kk + 0.5)
            if 1.0 + (du * du + (v - 1.0) ** 2) / (2.0 * v) <= ch:
                return True
        return False

    def covers_xy(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        L = np.log(ys)
        j = np.floor(L / 2.0)
        a = 2.0 * j + 0.5
        v = np.exp(L - a)
        scale = np.exp(-0.5 * a)
        u = (xs * scale) * scale
        ch = math.cosh(self.disk_radius)
        k0 = np.floor(u)  # candidate columns k0-1, k0, k0+1 bracket round(u-1/2)
        out = np.zeros(xs.shape, dtype=bool)
        vv = (v - 1.0) ** 2
        with np.errstate(invalid="ignore"):
            for dk in (-1.0, 0.0, 1.0):
                du = u - (k0 + dk + 0.5)
                out |= 1.0 + (du * du + vv) / (2.0 * v) <= ch
        return out

    def bodies_in_ball(self, ball: BallSpec) -> list[HDisk]:
        """All disks whose Euclidean circle meets the ball's Euclidean circle.

        Equivalently, disks whose hyperbolic center is within
        ball.radius + disk_radius of the ball center. Raises RangeError if
        the window would enumerate more than two million disks (deep
        windows grow exponentially) or run off representable coordinates.
        """
        rho = self.disk_radius
        reach = ball.radius + rho
        L0 = ball.center.log_y
        half_scale = math.exp(-0.5 * L0)
        xhat = (ball.center.x * half_scale) * half_scale
        if not math.isfinite(xhat):
            raise RangeError("ball center coordinates overflow the window math")
        C = math.cosh(reach)
        j_lo = math.ceil((L0 - reach - 0.5) / 2.0)
        j_hi = math.floor((L0 + reach - 0.5) / 2.0)
        cap = self._DISK_CAP
        log_cap = math.log(cap + 1.0)
        out: list[HDisk] = []
        for j in range(j_lo, j_hi + 1):
            t = 2.0 * j + 0.5 - L0
            if 0.5 * (reach - t) > log_cap:
                raise RangeError(
                    f"window of radius {ball.radius:g} would enumerate more "
                    f"than {cap} disks; use a smaller window"
                )
            inv = math.exp(-t)
            disc = 2.0 * (C - 1.0) * inv - (1.0 - inv) ** 2
            if disc < 0.0:
                continue
            half_k = math.sqrt(disc)
            base = xhat * inv
            if not math.isfinite(base):
                continue
            k_lo = math.ceil(base - half_k - 0.5)
            k_hi = math.floor(base + half_k - 0.5)
            if k_hi < k_lo:
                continue
            if len(out) + (k_hi - k_lo + 1) > cap:
                raise RangeError(
                    f"window of radius {ball.radius:g} would enumerate more "
                    f"than {cap} disks; use a smaller window"
                )
            a = 2.0 * j + 0.5
            if abs(a) > 700.0:
                raise RangeError(f"row {j} lies beyond representable heights")
            ea = math.exp(a)
            for k in range(k_lo, k_hi + 1):
                x = (k + 0.5) * ea
                if not math.isfinite(x):
                    raise RangeError(f"center ({j}, {k}) overflows the x coordinate")
                out.append(HDisk(HPoint.from_log(x, a), rho))
        return out


def boroczky_disks_in_ball(ball: BallSpec, disk_radius: float) -> list[HDisk]:
    """Disks of the Boroczky packing meeting the ball; see BoroczkyPacking."""
    return BoroczkyPacking(disk_radius).bodies_in_ball(ball)


# --------------------------------------------------------------------------
# tight {3,m} packings


def _check_m(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise DomainError(f"m must be an integer, got {m!r}")
    if m < 7:
        raise DomainError(f"m must be at least 7 (hyperbolic regime), got {m}")
    return int(m)


def tight_radius(m: int) -> float:
    """Disk radius r_m making the side-2r_m equilateral triangle tile with angles 2pi/m.

    r_m = arccosh(cot(pi/m) cot(2pi/m)) / 2, equivalently
    cosh(r_m) = 1/(2 sin(pi/m)); r_m grows without bound in m.
    """
    m = _check_m(m)
    c = 1.0 / (math.tan(math.pi / m) * math.tan(2.0 * math.pi / m))
    return 0.5 * math.acosh(c)


def tight_density_formula(m: int) -> float:
    """Covered fraction of the {3,m} triangle: (3 csc(pi/m) - 6)/(m - 6)."""
    m = _check_m(m)
    return (3.0 / math.sin(math.pi / m) - 6.0) / (m - 6.0)


@dataclass(frozen=True)
class FundamentalDomain:
    """A tiling domain carrying the inventory of disk sectors inside it."""

    polygon: GeodesicPolygon
    sectors: tuple  # (disk center, disk radius, angular fraction) triples

    def area(self) -> float:
        return polygon_area(self.polygon)

    def covered_area(self) -> float:
        return sum(f * ball_area(r) for _, r, f in self.sectors)


_BAND_H = 0.5
_KEY_SHIFT = np.int64(1) << np.int64(41)


def _cell_keys(x, log_y, db=0, dc=0):
    """Spatial hash key per point: y-band of height 1/2, x-cells scaled to the band."""
    band = np.floor(log_y / _BAND_H).astype(np.int64) + np.int64(db)
    width = _BAND_H * np.exp(band * _BAND_H)
    cell = np.floor(x / width).astype(np.int64) + np.int64(dc)
    return band * _KEY_SHIFT + cell


def _local_dist(a, b):
    """Hyperbolic distance of nearby points: |a-b| over the geometric mean height."""
    return np.abs(a - b) / np.sqrt(a.imag * b.imag)


class TightPacking(Packing):
    """Disks of radius r_m about the vertices of the {3,m} triangulation.

    Vertices are produced by breadth-first search from the seed (0, 1):
    the m neighbors of a vertex are the rotations of one known neighbor
    about it by multiples of 2pi/m. Generation is lazy and grows to cover
    the largest window requested; queries go through a KD-tree over the
    Euclidean forms of the coverage disks. Window radii are capped at
    MAX_WINDOW_RADIUS because the vertex count grows like 6 cosh(R).
    """

    MAX_WINDOW_RADIUS = 20.0

    def __init__(self, m: int, *, tol: ToleranceConfig = DEFAULT_TOLERANCES):
        self.m = _check_m(m)
        self.disk_radius = tight_radius(self.m)
        self.label = f"tight(m={self.m})"
        self._tol = tol
        self._z = np.empty(0, dtype=complex)
        self._skey = np.empty(0, dtype=np.int64)
        self._sorder = np.empty(0, dtype=np.intp)
        self._pend_w = np.empty(0, dtype=complex)
        self._pend_p = np.empty(0, dtype=complex)
        self._cap = -1.0
        self._tree = None
        self._fd = None

    # -- generation --------------------------------------------------------

    def ensure_radius(self, cap: float) -> None:
        """Generate all vertices within hyperbolic distance cap of the seed."""
        if cap <= self._cap:
            return
        self._generate(cap)

    def _generate(self, cap: float) -> None:
        # Growth resumes: candidates beyond the cap wait as (vertex,
        # known-neighbor) pairs in the pending frontier, so raising the
        # cap never re-walks shells that are already generated.
        m = self.m
        step = 2.0 * self.disk_radius
        cosh_cap = math.cosh(cap)
        rot = np.exp(2j * math.pi * np.arange(m) / m)
        if self._cap < 0.0:
            self._z = np.array([1j], dtype=complex)
            self._resort()
            frontier_w = np.array([1j], dtype=complex)
            frontier_p = np.array([1j * math.exp(step)], dtype=complex)
        else:
            cand, par = self._pend_w, self._pend_p
            y = cand.imag
            cd = 1.0 + (cand.real**2 + (y - 1.0) ** 2) / (2.0 * y)
            keep = cd <= cosh_cap
            self._pend_w, self._pend_p = cand[~keep], par[~keep]
            cand, par = cand[keep], par[keep]
            new = self._dedup(cand)
            frontier_w, frontier_p = cand[new], par[new]
            if frontier_w.size:
                self._z = np.concatenate([self._z, frontier_w])
                self._resort()
        while frontier_w.size:
            W, P = frontier_w, frontier_p
            t = (P - W) / (P - W.conj())
            n = W.size
            cand = np.empty(m * n, dtype=complex)
            par = np.empty(m * n, dtype=complex)
            for k in range(m):
                tk = rot[k] * t
                cand[k * n:(k + 1) * n] = (W - W.conj() * tk) / (1.0 - tk)
                par[k * n:(k + 1) * n] = W
            x, y = cand.real, cand.imag
            cd = 1.0 + (x * x + (y - 1.0) ** 2) / (2.0 * y)
            keep = cd <= cosh_cap
            self._pend_w = np.concatenate([self._pend_w, cand[~keep]])
            self._pend_p = np.concatenate([self._pend_p, par[~keep]])
            cand, par = cand[keep], par[keep]
            new = self._dedup(cand)
            frontier_w, frontier_p = cand[new], par[new]
            if frontier_w.size:
                self._z = np.concatenate([self._z, frontier_w])
                self._resort()
        self._cap = cap
        pts = np.column_stack([self._z.real, self._z.imag])
        self._tree = cKDTree(pts)

    def _resort(self) -> None:
        key = _cell_keys(self._z.real, np.log(self._z.imag))
        self._sorder = np.argsort(key, kind="stable")
        self._skey = key[self._sorder]

    def _dedup(self, cand) -> np.ndarray:
        """Boolean mask of candidates that are genuinely new vertices.

        Duplicates (within dedup_radius of an accepted or existing vertex)
        are dropped; distances inside the ambiguity zone raise
        DedupCollisionError because they cannot be classified safely.
        """
        merge_r = self._tol.dedup_radius
        ambig_r = self._tol.dedup_ambiguity
        n = cand.size
        drop = np.zeros(n, dtype=bool)
        if n == 0:
            return ~drop
        x, ly = cand.real, np.log(cand.imag)
        key = _cell_keys(x, ly)

        # phase 1: merge candidates sharing a cell (first occurrence wins)
        order = np.argsort(key, kind="stable")
        skey = key[order]
        starts = np.empty(n, dtype=bool)
        starts[0] = True
        starts[1:] = skey[1:] != skey[:-1]
        rep_sorted = np.maximum.accumulate(np.where(starts, np.arange(n), 0))
        rep = order[rep_sorted]
        dup = order != rep
        if dup.any():
            dd = _local_dist(cand[order[dup]], cand[rep[dup]])
            if ((dd > merge_r) & (dd <= ambig_r)).any():
                worst = float(dd[(dd > merge_r) & (dd <= ambig_r)].min())
                raise DedupCollisionError(
                    f"vertex candidates {worst:.3e} apart fall in the dedup "
                    f"ambiguity zone ({merge_r:g}, {ambig_r:g}]"
                )
            merged = order[dup][dd <= merge_r]
            drop[merged] = True

        # phase 2: merge duplicates straddling a cell boundary
        surv = np.flatnonzero(~drop)
        if surv.size:
            sorder = np.argsort(key[surv], kind="stable")
            ssorted = key[surv][sorder]
            for db in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    if db == 0 and dc == 0:
                        continue
                    probe = _cell_keys(x[surv], ly[surv], db, dc)
                    pos = np.searchsorted(ssorted, probe)
                    ok = pos < ssorted.size
                    ok[ok] = ssorted[pos[ok]] == probe[ok]
                    if not ok.any():
                        continue
                    me = surv[ok]
                    other = surv[sorder[pos[ok]]]
                    dd = _local_dist(cand[me], cand[other])
                    zone = (dd > merge_r) & (dd <= ambig_r)
                    if zone.any():
                        raise DedupCollisionError(
                            f"vertex candidates {float(dd[zone].min()):.3e} apart "
                            f"fall in the dedup ambiguity zone"
                        )
                    close = dd <= merge_r
                    if close.any():
                        loser = np.where(
                            key[me[close]] > key[other[close]],
                            me[close],
                            other[close],
                        )
                        drop[loser] = True

        # phase 3: drop candidates matching an existing vertex
        surv = np.flatnonzero(~drop)
        if surv.size and self._skey.size:
            for db in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    probe = _cell_keys(x[surv], ly[surv], db, dc)
                    pos = np.searchsorted(self._skey, probe)
                    ok = pos < self._skey.size
                    ok[ok] = self._skey[pos[ok]] == probe[ok]
                    if not ok.any():
                        continue
                    me = surv[ok]
                    other = self._z[self._sorder[pos[ok]]]
                    dd = _local_dist(cand[me], other)
                    zone = (dd > merge_r) & (dd <= ambig_r)
                    if zone.any():
                        raise DedupCollisionError(
                            f"vertex candidates {float(dd[zone].min()):.3e} apart "
                            f"fall in the dedup ambiguity zone"
                        )
                    drop[me[dd <= merge_r]] = True
        return ~drop

    # -- queries -------------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return int(self._z.size)

    def vertices(self) -> np.ndarray:
        """Generated vertices as a complex array (BFS discovery order)."""
        return self._z.copy()

    def _require_window(self, implied_radius: float) -> None:
        if implied_radius > self.MAX_WINDOW_RADIUS + 2.0 * self.disk_radius + 1e-9:
            raise DomainError(
                f"window of radius {implied_radius:g} exceeds the supported "
                f"maximum {self.MAX_WINDOW_RADIUS:g}"
            )

    def centers_in_ball(self, ball: BallSpec) -> list[HPoint]:
        """Vertices lying in the closed ball, in BFS discovery order."""
        if ball.radius > self.MAX_WINDOW_RADIUS:
            raise DomainError(
                f"window radius {ball.radius:g} exceeds the supported "
                f"maximum {self.MAX_WINDOW_RADIUS:g}"
            )
        return self._centers(ball)

    def _centers(self, ball: BallSpec) -> list[HPoint]:
        need = distance(ORIGIN, ball.center) + ball.radius
        self._require_window(need)
        self.ensure_radius(need + 1e-9)
        cy = ball.center.y
        center = [ball.center.x, cy * math.cosh(ball.radius)]
        idx = self._tree.query_ball_point(center, cy * math.sinh(ball.radius))
        out = []
        for i in sorted(idx):
            z = self._z[i]
            out.append(HPoint(float(z.real), float(z.imag)))
        return out

    def bodies_in_ball(self, ball: BallSpec) -> list[HDisk]:
        if ball.radius > self.MAX_WINDOW_RADIUS:
            raise DomainError(
                f"window radius {ball.radius:g} exceeds the supported "
                f"maximum {self.MAX_WINDOW_RADIUS:g}"
            )
        grown = BallSpec(ball.center, ball.radius + self.disk_radius)
        return [HDisk(c, self.disk_radius) for c in self._centers(grown)]

    def covers(self, p: HPoint) -> bool:
        out = self.covers_xy(np.array([p.x]), np.array([p.y]))
        return bool(out[0])

    def covers_xy(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.size == 0:
            return np.zeros(xs.shape, dtype=bool)
        r = self.disk_radius
        fx, fy = xs.ravel(), ys.ravel()
        cd = 1.0 + (fx * fx + (fy - 1.0) ** 2) / (2.0 * fy)
        need = float(np.arccosh(max(1.0, cd.max()))) + r
        self._require_window(need)
        self.ensure_radius(need + 1e-9)
        pts = np.column_stack([fx, fy * math.cosh(r)])
        rad = fy * math.sinh(r)
        counts = self._tree.query_ball_point(pts, rad, return_length=True)
        return (np.asarray(counts) > 0).reshape(xs.shape)

    @property
    def fundamental_domain(self) -> FundamentalDomain:
        """The {3,m} face triangle with its three 1/m disk sectors."""
        if self._fd is None:
            r = self.disk_radius
            v0 = ORIGIN
            v1 = HPoint.from_log(0.0, 2.0 * r)
            v2 = apply(Isometry.rotation(2.0 * math.pi / self.m, v0), v1)
            poly = GeodesicPolygon([v0, v1, v2])
            frac = 1.0 / self.m
            self._fd = FundamentalDomain(
                polygon=poly,
                sectors=((v0, r, frac), (v1, r, frac), (v2, r, frac)),
            )
        return self._fd


def tight_centers_in_ball(m: int, ball: BallSpec) -> list[HPoint]:
    """Vertices of the {3,m} triangulation inside the ball; see TightPacking."""
    return TightPacking(m).centers_in_ball(ball)


# --------------------------------------------------------------------------
# transformed packings


class TransformedPacking(Packing):
    """The image g P of a packing under an isometry g."""

    def __init__(self, g: Isometry, base: Packing):
        self.g = g
        self.g_inv = g.inverse()
        self.base = base
        self.label = f"moved({base.label})"
        self.disk_radius = getattr(base, "disk_radius", None)

    def covers(self, p: HPoint) -> bool:
        return self.base.covers(apply(self.g_inv, p))

    def covers_xy(self, xs, ys):
        bx, by = self.g_inv.apply_xy(xs, ys)
        return self.base.covers_xy(bx, by)

    def bodies_in_ball(self, ball: BallSpec) -> list[HDisk]:
        pulled = BallSpec(apply(self.g_inv, ball.center), ball.radius)
        return [
            HDisk(apply(self.g, d.center), d.radius)
            for d in self.base.bodies_in_ball(pulled)
        ]


# --------------------------------------------------------------------------
# brick tiles


@dataclass(frozen=True)
class BrickTile:
    """The brick {s <= y < e^2 s, w s k <= x < w s (k+1)} with s = e^{2j+offset}.

    Bricks of a fixed (family_offset, width_param) family tile the plane;
    all bricks are isometric with hyperbolic area w (1 - e^{-2}). The
    boundary convention is half-open from below in both coordinates so
    the family is an exact partition.
    """

    j: int = 0
    k: int = 0
    family_offset: float = 0.0
    width_param: float = math.exp(0.5)

    def __post_init__(self):
        if not (0.0 <= self.family_offset < 2.0):
            raise DomainError(
                f"family offset must lie in [0, 2), got {self.family_offset}"
            )
        if not (self.width_param > 0.0) or not math.isfinite(self.width_param):
            raise DomainError(f"width parameter must be positive, got {self.width_param}")
        if abs(self.log_s) > 690.0:
            raise RangeError(f"brick level {self.j} is beyond representable heights")

    @property
    def log_s(self) -> float:
        return 2.0 * self.j + self.family_offset

    @property
    def s(self) -> float:
        return math.exp(self.log_s)

    @property
    def x_bounds(self) -> tuple[float, float]:
        ws = self.width_param * self.s
        return (ws * self.k, ws * (self.k + 1))

    @property
    def y_bounds(self) -> tuple[float, float]:
        return (self.s, math.exp(self.log_s + 2.0))

    def area(self) -> float:
        """Closed-form hyperbolic area, independent of j and k."""
        return self.width_param * (1.0 - math.exp(-2.0))

    @classmethod
    def containing(cls, p: HPoint, family_offset: float = 0.0,
                   width_param: float = math.exp(0.5)) -> "BrickTile":
        """The unique family brick whose half-open box contains p."""
        j = math.floor((p.log_y - family_offset) / 2.0)
        s = math.exp(2.0 * j + family_offset)
        k = math.floor(p.x / (width_param * s))
        return cls(j=j, k=k, family_offset=family_offset, width_param=width_param)


class BrickRegion(Region):
    """Indicator region of one brick, with quadrature ball overlap."""

    def __init__(self, tile: BrickTile):
        self.tile = tile

    def contains(self, p: HPoint) -> bool:
        t = self.tile
        if not (t.log_s <= p.log_y < t.log_s + 2.0):
            return False
        xa, xb = t.x_bounds
        return xa <= p.x < xb

    def covers_xy(self, xs, ys):
        t = self.tile
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        xa, xb = t.x_bounds
        ya, yb = t.y_bounds
        return (ys >= ya) & (ys < yb) & (xs >= xa) & (xs < xb)

    def exact_area_in_ball(self, ball: BallSpec) -> float:
        """Adaptive quadrature of the brick/ball overlap in log-height."""
        from scipy.integrate import quad

        t = self.tile
        eb = ball.euclid_form()
        top = eb.k + eb.r
        bottom = eb.k_minus_r
        y_lo = max(t.y_bounds[0], bottom)
        y_hi = min(t.y_bounds[1], top)
        if y_lo >= y_hi:
            return 0.0
        xa, xb = t.x_bounds

        def integrand(u):
            y = math.exp(u)
            c2 = (top - y) * (y - bottom)
            if c2 <= 0.0:
                return 0.0
            c = math.sqrt(c2)
            lo = max(xa, eb.h - c)
            hi = min(xb, eb.h + c)
            if hi <= lo:
                return 0.0
            return (hi - lo) / y

        val, _ = quad(
            integrand,
            math.log(y_lo),
            math.log(y_hi),
            epsabs=1e-13,
            epsrel=DEFAULT_TOLERANCES.quad_rel,
            limit=400,
        )
        return val

    def sample_uniform(self, plan: SamplePlan):
        """Area-uniform sample of the brick: x uniform, 1/y^2 in height."""
        t = self.tile
        rng = np.random.Generator(np.random.Philox(plan.seed))
        u = rng.random(plan.n)
        v = rng.random(plan.n)
        if plan.strata:
            u = (np.arange(plan.n) % plan.strata + u) / plan.strata
        ys = t.s / (1.0 - u * (1.0 - math.exp(-2.0)))
        xa, xb = t.x_bounds
        xs = xa + v * (xb - xa)
        return xs, ys

    def area(self) -> float:
        return self.tile.area()


def brick_region(tile: BrickTile) -> BrickRegion:
    """Indicator region of the brick; see BrickRegion."""
    return BrickRegion(tile)
