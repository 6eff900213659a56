"""Exact-arithmetic knot constructions inside Menger-sponge prefractals."""

from .geometry import Cube, Point2, Point3, frac, point3
from .ternary import (
    AxisSegment,
    TernaryExpansion,
    cantor_endpoints,
    expansions,
    first_violation,
    in_cantor,
    in_cantor_stage,
    in_carpet2,
    in_carpet2_stage,
    in_carpet_face,
    in_carpet_face_stage,
    in_sponge,
    in_sponge_stage,
    membership,
    membership_stage,
    satisfying_expansions,
    segment_in_stage,
    stage_profile,
    ternary_digits,
)
from .oracle import oracle_profile, subdivision_oracle
from .polyline import ClosedPolyline3, closed_polyline
from .grid import GridDiagram, PlanarDiagram, catalog, catalog_names, to_planar, validate
from .invariants import (
    KnotDiagram,
    NonGenericProjection,
    determinant,
    determinant_minor,
    diagram_from_grid,
    is_simple,
    project,
    project_generic,
    tricolorings,
)
from .embed import (
    EmbeddingReport,
    embed_grid,
    embed_into_box,
    embed_into_cube,
    stage_for,
    verify_containment,
)
from .squareflake import SquareflakeStage, replaced_count, squareflake
from .wildknot import (
    Approximant,
    KnotAssignment,
    LedgerEntry,
    SpliceSite,
    approximant,
    clearance,
    flat_unknot,
    neighborhood_census,
    sites,
    splice,
    wild_set_plan,
)
from .necklace import (
    Necklace,
    Pearl,
    invert_pearl,
    invert_point,
    iterate,
    limit_point,
    make_necklace,
    pearl_inside,
    pearls_disjoint,
    summand_ledger,
)

__all__ = [
    "Approximant",
    "AxisSegment",
    "ClosedPolyline3",
    "Cube",
    "EmbeddingReport",
    "GridDiagram",
    "KnotAssignment",
    "KnotDiagram",
    "LedgerEntry",
    "Necklace",
    "NonGenericProjection",
    "Pearl",
    "PlanarDiagram",
    "Point2",
    "Point3",
    "SpliceSite",
    "SquareflakeStage",
    "TernaryExpansion",
    "approximant",
    "cantor_endpoints",
    "catalog",
    "catalog_names",
    "clearance",
    "closed_polyline",
    "determinant",
    "determinant_minor",
    "diagram_from_grid",
    "embed_grid",
    "embed_into_box",
    "embed_into_cube",
    "expansions",
    "first_violation",
    "flat_unknot",
    "frac",
    "in_cantor",
    "in_cantor_stage",
    "in_carpet2",
    "in_carpet2_stage",
    "in_carpet_face",
    "in_carpet_face_stage",
    "in_sponge",
    "in_sponge_stage",
    "invert_pearl",
    "invert_point",
    "is_simple",
    "iterate",
    "limit_point",
    "make_necklace",
    "membership",
    "membership_stage",
    "neighborhood_census",
    "oracle_profile",
    "pearl_inside",
    "pearls_disjoint",
    "point3",
    "project",
    "project_generic",
    "replaced_count",
    "satisfying_expansions",
    "segment_in_stage",
    "sites",
    "splice",
    "squareflake",
    "stage_for",
    "stage_profile",
    "subdivision_oracle",
    "summand_ledger",
    "ternary_digits",
    "to_planar",
    "tricolorings",
    "validate",
    "verify_containment",
    "wild_set_plan",
]
