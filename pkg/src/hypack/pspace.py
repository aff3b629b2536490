"""A metric on packings via truncated covered sets.

A packing is truncated to levels k = 1..k_max: deterministic sample
nets of its covered set intersected with the ball of radius k about the
standard origin. The distance between two packings is the largest over
levels of the Hausdorff distance between same-level nets, scaled by
1/k. Small distance means the packings nearly agree on a large ball,
which is the topology in which density results are stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hgeom import ORIGIN, BallSpec, cosh_distance_xy
from .regions import SamplePlan  # noqa: F401  (re-exported for callers)

# Net spacing h yields a covering radius of about 0.72 h in the body
# interiors and at worst about 1.25 h where bodies meet the level
# boundary, so h <= 0.04 keeps every covered point within 0.05 of a net
# point.
MAX_NET_SPACING = 0.04
MIN_LEVEL_POINTS = 64


@dataclass(frozen=True)
class TruncatedPacking:
    """Per-level sample nets of a packing's covered set.

    levels[k-1] is an (n_k, 2) array of half-plane points sampling the
    covered set within distance k of the origin; empty arrays mark
    levels the packing does not reach.
    """

    k_max: int
    levels: tuple

    def __post_init__(self):
        if self.k_max < 1:
            raise DomainError(f"k_max must be >= 1, got {self.k_max}")
        if len(self.levels) != self.k_max:
            raise DomainError(
                f"expected {self.k_max} levels, got {len(self.levels)}"
            )
        for k, pts in enumerate(self.levels, start=1):
            if pts.ndim != 2 or (pts.size and pts.shape[1] != 2):
                raise DomainError("levels must be (n, 2) coordinate arrays")
            if 0 < len(pts) < MIN_LEVEL_POINTS * k:
                raise DomainError(
                    f"level {k} holds only {len(pts)} points; a nonempty "
                    f"level needs at least {MIN_LEVEL_POINTS * k}"
                )


def _disk_net(cx, cy, rho, spacing):
    """Deterministic polar net of the disk of radius rho about (cx, cy)."""
    rings = [0.0]
    steps = int(math.ceil(rho / spacing))
    # the outermost ring sits a hair inside the boundary so the net stays
    # within the closed disk under roundoff
    edge = max(rho - 1e-9, 0.0)
    rings.extend(min(i * spacing, edge) for i in range(1, steps + 1))
    xs_all, ys_all = [], []
    for i, r in enumerate(rings):
        if r == 0.0:
            xs_all.append(np.array([cx]))
            ys_all.append(np.array([cy]))
            continue
        n_ang = max(3, int(math.ceil(2.0 * math.pi * math.sinh(r) / spacing)))
        theta = 2.0 * math.pi * (np.arange(n_ang) + 0.5 * (i % 2)) / n_ang
        t = math.tanh(0.5 * r)
        a = t * np.cos(theta)
        b = t * np.sin(theta)
        den = (1.0 - a) ** 2 + b**2
        xs_all.append(cx + cy * (-2.0 * b / den))
        ys_all.append(cy * (1.0 - a * a - b * b) / den)
    return np.concatenate(xs_all), np.concatenate(ys_all)


def _boundary_ring(k, spacing):
    """Points along the level-k ball boundary at net spacing."""
    n = max(8, int(math.ceil(2.0 * math.pi * math.sinh(k) / spacing)))
    theta = 2.0 * math.pi * np.arange(n) / n
    t = math.tanh(0.5 * k)
    a = t * np.cos(theta)
    b = t * np.sin(theta)
    den = (1.0 - a) ** 2 + b**2
    return -2.0 * b / den, (1.0 - a * a - b * b) / den


def _level_net(target, k, spacing):
    """Net of the covered set within distance k of the origin."""
    cosh_k = math.cosh(k)
    xs_parts, ys_parts = [], []

    bodies = None
    bodies_fn = getattr(target, "bodies_in_ball", None)
    rho = getattr(target, "disk_radius", None)
    if bodies_fn is not None and rho is not None:
        try:
            bodies = bodies_fn(BallSpec(ORIGIN, k + 2.0 * rho))
        except (AttributeError, NotImplementedError):
            bodies = None

    if bodies is not None:
        for disk in bodies:
            xs, ys = _disk_net(disk.center.x, disk.center.y, disk.radius, spacing)
            keep = cosh_distance_xy(xs, ys, 0.0, 1.0) <= cosh_k * (1.0 + 1e-12)
            xs_parts.append(xs[keep])
            ys_parts.append(ys[keep])
    else:
        xs, ys = _disk_net(0.0, 1.0, float(k), spacing)
        keep = np.asarray(target.covers_xy(xs, ys), dtype=bool)
        xs_parts.append(xs[keep])
        ys_parts.append(ys[keep])

    bx, by = _boundary_ring(k, spacing)
    keep = np.asarray(target.covers_xy(bx, by), dtype=bool)
    xs_parts.append(bx[keep])
    ys_parts.append(by[keep])

    xs = np.concatenate(xs_parts)
    ys = np.concatenate(ys_parts)
    return np.column_stack([xs, ys])


def truncate(target, k_max: int = 8, spacing: float = 0.03) -> TruncatedPacking:
    """Deterministic truncation of a packing or region to k_max levels.

    Disk packings get per-body polar nets; regions get a polar net of
    each level ball filtered by coverage. Level boundaries carry their
    own covered arcs so clipped bodies stay within the net bound. A
    nonempty level too thin to reach its minimum point count is refined
    at halved spacing.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    if not (0.0 < spacing <= MAX_NET_SPACING):
        raise DomainError(
            f"net spacing must lie in (0, {MAX_NET_SPACING}], got {spacing}"
        )
    levels = []
    for k in range(1, k_max + 1):
        h = spacing
        pts = _level_net(target, k, h)
        refinements = 0
        while 0 < len(pts) < MIN_LEVEL_POINTS * k:
            h *= 0.5
            refinements += 1
            if refinements > 8:
                raise DomainError(
                    f"could not populate level {k} to {MIN_LEVEL_POINTS * k} "
                    f"points even at spacing {h:g}"
                )
            pts = _level_net(target, k, h)
        levels.append(pts)
    return TruncatedPacking(k_max=k_max, levels=tuple(levels))


def _directed_hausdorff(a, c, chunk=256):
    worst = 0.0
    for s in range(0, len(a), chunk):
        blk = a[s : s + chunk]
        cd = cosh_distance_xy(blk[:, 0, None], blk[:, 1, None],
                              c[None, :, 0], c[None, :, 1])
        nearest = np.maximum(cd.min(axis=1), 1.0)
        worst = max(worst, float(np.arccosh(nearest).max()))
    return worst


def hausdorff_distance(a, c) -> float:
    """Hausdorff distance between two finite half-plane point sets."""
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if a.size == 0 or c.size == 0:
        raise DomainError("hausdorff distance of an empty set is undefined")
    return max(_directed_hausdorff(a, c), _directed_hausdorff(c, a))


@dataclass(frozen=True)
class PackingDistance:
    """Scaled-Hausdorff distance with the level attaining the maximum."""

    value: float
    argmax_level: int
    per_level: tuple

    def __float__(self):
        return self.value


def packing_distance(t1: TruncatedPacking, t2: TruncatedPacking) -> PackingDistance:
    """max over k of (1/k) x Hausdorff distance between level-k nets.

    A level where exactly one side is empty contributes the diameter
    bound 2k, i.e. a scaled value of 2; two empty sides contribute 0.
    """
    if t1.k_max != t2.k_max:
        raise DomainError(
            f"truncation levels differ: {t1.k_max} vs {t2.k_max}"
        )
    per_level = []
    for k in range(1, t1.k_max + 1):
        a, c = t1.levels[k - 1], t2.levels[k - 1]
        if len(a) == 0 and len(c) == 0:
            per_level.append(0.0)
        elif len(a) == 0 or len(c) == 0:
            per_level.append(2.0)
        else:
            per_level.append(hausdorff_distance(a, c) / k)
    value = max(per_level)
    argmax_level = 1 + int(np.argmax(per_level))
    return PackingDistance(value=value, argmax_level=argmax_level,
                           per_level=tuple(per_level))
