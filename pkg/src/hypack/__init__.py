"""hypack: hyperbolic half-plane packings, coverage densities, and the packing-space metric."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    RangeError,
    SaturationError,
    UnsupportedOperationError,
    DedupCollisionError,
    UnboundedCellError,
)
from .config import ToleranceConfig, DEFAULT_TOLERANCES
from .hgeom import (
    HPoint,
    ORIGIN,
    Isometry,
    make_isometry,
    apply,
    distance,
    HDisk,
    BallSpec,
    EuclidCircle,
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
from .regions import (
    SamplePlan,
    AreaEstimate,
    Region,
    FullPlane,
    EmptyRegion,
    DiskRegion,
    HalfSpaceRegion,
    PolygonRegion,
    StripeRegion,
    AnnulusRegionEuclid,
    sample_ball_uniform,
    mc_area_fraction,
    quad_stripe_area,
    stripe_index_range,
    quad_black_fraction,
    annulus_fraction_euclid,
    annulus_fraction_euclid_brute,
)
from .packings import (
    Packing,
    StripeModel,
    BoroczkyPacking,
    TightPacking,
    TransformedPacking,
    FundamentalDomain,
    BrickTile,
    BrickRegion,
    brick_region,
    stripe_contains,
    halfspace_contains,
    boroczky_max_radius,
    boroczky_disks_in_ball,
    tight_radius,
    tight_density_formula,
    tight_centers_in_ball,
    pairwise_min_gap,
    disjointness_audit,
)
from .voronoi import (
    VoronoiCell,
    dirichlet_cell,
    packing_cell,
    cell_relative_density,
    partition_audit,
)
from .density import (
    CurvePoint,
    DensityCurve,
    OscillationReport,
    EuclidDiskLattice,
    density_curve,
    f_R_average,
    oscillation_report,
    halfspace_density_limit,
    fundamental_domain_density,
    tile_density,
    annulus_density_curve,
    euclid_window_density,
    mass_transport_check,
)
from .pspace import (
    TruncatedPacking,
    PackingDistance,
    truncate,
    hausdorff_distance,
    packing_distance,
)
from .svg import render_packing, render_region, render_curve
from .verify import CriterionResult, run_criteria, format_report

__all__ = [
    "DomainError",
    "RangeError",
    "SaturationError",
    "UnsupportedOperationError",
    "DedupCollisionError",
    "UnboundedCellError",
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "HPoint",
    "ORIGIN",
    "Isometry",
    "make_isometry",
    "apply",
    "distance",
    "HDisk",
    "BallSpec",
    "EuclidCircle",
    "disk_euclidean_form",
    "disk_from_euclidean",
    "ball_area",
    "angle_of_parallelism",
    "Geodesic",
    "geodesic_through",
    "point_along",
    "arc_coordinate",
    "midpoint",
    "signed_distance",
    "perpendicular_bisector",
    "GeodesicPolygon",
    "polygon_area",
    "SamplePlan",
    "AreaEstimate",
    "Region",
    "FullPlane",
    "EmptyRegion",
    "DiskRegion",
    "HalfSpaceRegion",
    "PolygonRegion",
    "StripeRegion",
    "AnnulusRegionEuclid",
    "sample_ball_uniform",
    "mc_area_fraction",
    "quad_stripe_area",
    "stripe_index_range",
    "quad_black_fraction",
    "annulus_fraction_euclid",
    "annulus_fraction_euclid_brute",
    "Packing",
    "StripeModel",
    "BoroczkyPacking",
    "TightPacking",
    "TransformedPacking",
    "FundamentalDomain",
    "BrickTile",
    "BrickRegion",
    "brick_region",
    "stripe_contains",
    "halfspace_contains",
    "boroczky_max_radius",
    "boroczky_disks_in_ball",
    "tight_radius",
    "tight_density_formula",
    "tight_centers_in_ball",
    "pairwise_min_gap",
    "disjointness_audit",
    "VoronoiCell",
    "dirichlet_cell",
    "packing_cell",
    "cell_relative_density",
    "partition_audit",
    "CurvePoint",
    "DensityCurve",
    "OscillationReport",
    "EuclidDiskLattice",
    "density_curve",
    "f_R_average",
    "oscillation_report",
    "halfspace_density_limit",
    "fundamental_domain_density",
    "tile_density",
    "annulus_density_curve",
    "euclid_window_density",
    "mass_transport_check",
    "TruncatedPacking",
    "PackingDistance",
    "truncate",
    "hausdorff_distance",
    "packing_distance",
    "render_packing",
    "render_region",
    "render_curve",
    "CriterionResult",
    "run_criteria",
    "format_report",
]
