"""Dirichlet-Voronoi cells of disk packings and cell-relative densities.

A cell is the set of points at least as close to its site as to any
other site. Cells are built geometrically: candidate vertices are the
pairwise intersections of perpendicular bisectors from the site to its
neighbors, validated by the nearest-site test, ordered by angle about
the site, and assembled into a geodesic polygon. Cells that fail to
close raise UnboundedCellError; nothing is silently truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DomainError, UnboundedCellError
from .hgeom import (
    BallSpec,
    GeodesicPolygon,
    HPoint,
    ball_area,
    cosh_distance_xy,
    distance,
    geodesic_intersection,
    perpendicular_bisector,
    polygon_area,
)
from .regions import PolygonRegion, SamplePlan, sample_ball_uniform


@dataclass(frozen=True)
class VoronoiCell:
    """One bounded Dirichlet cell: site, polygon, and the sites sharing an edge."""

    site: HPoint
    polygon: GeodesicPolygon
    neighbor_sites: tuple

    def region(self) -> PolygonRegion:
        return PolygonRegion(self.polygon)

    def area(self) -> float:
        return polygon_area(self.polygon)

    def inscribed_radius_bound(self) -> float:
        """Half the distance to the nearest edge-sharing site."""
        return min(distance(self.site, s) for s in self.neighbor_sites) / 2.0


def _fan_closed(site: HPoint, vx, vy) -> bool:
    """True when the directions to (vx, vy) about the site leave no gap >= pi."""
    z = vx + 1j * vy
    p = complex(site.x, site.y)
    ang = np.sort(np.angle((z - p) / (z - p.conjugate())))
    gaps = np.diff(np.concatenate([ang, ang[:1] + 2.0 * math.pi]))
    return bool(gaps.max() < math.pi)


def dirichlet_cell(
    sites,
    i: int,
    search_radius: float | None = None,
    *,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VoronoiCell:
    """Voronoi cell of sites[i] among the given sites.

    Bisectors are intersected pairwise in the Euclidean representation of
    geodesics; a candidate vertex is kept iff the site is among its
    nearest sites within tol.cell_vertex_tol. The default search radius
    is three times the distance to the nearest other site.
    """
    n = len(sites)
    if not (0 <= i < n):
        raise DomainError(f"site index {i} out of range for {n} sites")
    site = sites[i]
    if n < 2:
        raise UnboundedCellError("a single site has an unbounded cell")
    others = [(j, s) for j, s in enumerate(sites) if j != i]
    dists = [distance(site, s) for _, s in others]
    dmin = min(dists)
    if dmin <= tol.dedup_radius:
        raise DomainError("sites must be pairwise distinct")
    if search_radius is None:
        search_radius = 3.0 * dmin
    near_sorted = sorted(
        ((d, s) for (_, s), d in zip(others, dists) if d <= search_radius),
        key=lambda t: t[0],
    )
    near_d = [d for d, _ in near_sorted]
    near = [s for _, s in near_sorted]
    sx = np.array([s.x for s in sites])
    sy = np.array([s.y for s in sites])

    # Bisector pairs are tried nearest-first. A left-out site farther
    # than twice the provisional circumradius cannot cut the provisional
    # cell, so once that holds (and the provisional vertex fan closes,
    # max gap < pi) the subset already defines the true cell; otherwise
    # the subset doubles, ending at the full near set. Returned vertices
    # are always re-accepted against all sites.
    m_try = min(16, len(near))
    accepted: list = []
    while True:
        sub = near[:m_try]
        bis = [perpendicular_bisector(site, s) for s in sub]
        cands = []
        pairs = []
        for a in range(m_try):
            for b in range(a + 1, m_try):
                v = geodesic_intersection(bis[a], bis[b])
                if v is not None:
                    cands.append(v)
                    pairs.append({a, b})
        full = m_try == len(near)
        if not cands:
            if full:
                break
            m_try = min(2 * m_try, len(near))
            continue
        vx = np.array([v.x for v in cands])
        vy = np.array([v.y for v in cands])
        d_site = np.arccosh(
            np.maximum(cosh_distance_xy(vx, vy, site.x, site.y), 1.0)
        )
        if not full:
            bx = np.array([s.x for s in sub])
            by = np.array([s.y for s in sub])
            d_sub = np.arccosh(np.maximum(
                cosh_distance_xy(vx[:, None], vy[:, None],
                                 bx[None, :], by[None, :]), 1.0))
            sub_keep = d_site <= d_sub.min(axis=1) + tol.cell_vertex_tol
            if not np.any(sub_keep) or not _fan_closed(
                site, vx[sub_keep], vy[sub_keep]
            ):
                m_try = min(2 * m_try, len(near))
                continue
            r_sub = float(d_site[sub_keep].max())
            if near_d[m_try] <= 2.0 * r_sub + 2.0 * tol.cell_vertex_tol:
                m_try = min(2 * m_try, len(near))
                continue
        d_all = np.arccosh(np.maximum(
            cosh_distance_xy(vx[:, None], vy[:, None],
                             sx[None, :], sy[None, :]), 1.0))
        keep = d_all[:, i] <= d_all.min(axis=1) + tol.cell_vertex_tol
        accepted = [(v, p) for v, p, k in zip(cands, pairs, keep) if k]
        break

    merged: list[list] = []
    for v, pair in accepted:
        for entry in merged:
            if distance(entry[0], v) <= tol.cell_vertex_tol:
                entry[1] |= pair
                break
        else:
            merged.append([v, set(pair)])

    if len(merged) < 3:
        raise UnboundedCellError(
            f"cell of site {i} has {len(merged)} vertices within search "
            f"radius {search_radius:g}: unbounded or under-sampled"
        )

    z = np.array([complex(v.x, v.y) for v, _ in merged])
    p = complex(site.x, site.y)
    w = (z - p) / (z - p.conjugate())
    ang = np.angle(w)
    order = np.argsort(ang, kind="stable")
    sorted_ang = ang[order]
    gaps = np.diff(np.concatenate([sorted_ang, sorted_ang[:1] + 2.0 * math.pi]))
    if float(gaps.max()) > math.pi:
        raise UnboundedCellError(
            f"cell of site {i} is open over an angular gap of "
            f"{float(gaps.max()):.3f} rad within search radius {search_radius:g}"
        )

    counts: dict[int, int] = {}
    for _, pair in merged:
        for a in pair:
            counts[a] = counts.get(a, 0) + 1
    neighbors = tuple(sub[a] for a in sorted(counts) if counts[a] >= 2)
    vertices = [merged[k][0] for k in order]
    return VoronoiCell(site=site, polygon=GeodesicPolygon(vertices),
                       neighbor_sites=neighbors)


def packing_cell(
    packing,
    site: HPoint,
    search_radius: float | None = None,
    *,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VoronoiCell:
    """Dirichlet cell of one disk center of a packing.

    The site list is the packing's center set in a window just larger
    than the search radius; the given site must coincide with one of the
    centers.
    """
    spacing = 2.0 * packing.disk_radius
    sr = 3.0 * spacing if search_radius is None else search_radius
    window = BallSpec(site, sr + spacing)
    sites = [d.center for d in packing.bodies_in_ball(window)]
    if not sites:
        raise DomainError("no packing centers near the requested site")
    ds = [distance(s, site) for s in sites]
    idx = int(np.argmin(ds))
    if ds[idx] > 1e-9:
        raise DomainError(
            f"point ({site.x:g}, {site.y:g}) is not a center of the packing"
        )
    return dirichlet_cell(sites, idx, sr, tol=tol)


def cell_relative_density(cell: VoronoiCell, rho: float) -> float:
    """ball_area(rho) / cell area, for a disk that fits inside the cell."""
    if not (rho > 0.0) or not math.isfinite(rho):
        raise DomainError(f"disk radius must be positive, got {rho}")
    bound = cell.inscribed_radius_bound()
    if rho > bound + 1e-12:
        raise DomainError(
            f"disk radius {rho:g} exceeds the inscribed bound {bound:g} "
            f"of the cell"
        )
    return ball_area(rho) / cell.area()


def partition_audit(cells, window: BallSpec, plan: SamplePlan) -> float:
    """Fraction of area-uniform window samples lying in exactly one cell."""
    xs, ys = sample_ball_uniform(window, plan)
    counts = np.zeros(xs.shape, dtype=np.int64)
    for c in cells:
        counts += PolygonRegion(c.polygon).covers_xy(xs, ys).astype(np.int64)
    return float(np.mean(counts == 1))
