"""Exact tilt and Bridgeland wall computations for Chern characters on P^3."""

from .chern import (
    ChernCharacter,
    ChernTruncated,
    as_rational,
    chern_classes,
    euler_characteristic,
    format_rational,
    grr_plane_pushforward,
    grr_plane_restrict,
    hom_line_bundles_dim,
    in_grothendieck_lattice,
    kronecker_moduli_dim,
    line_bundle_ch,
    structure_sheaf_ch,
    twist,
    untwist,
    validate_integrality,
)
from .tilt import (
    INF,
    HyperbolaCurve,
    NumericallyTrivialError,
    TiltPoint,
    WallCurve,
    WallKind,
    bmt_expression,
    bmt_region,
    hyperbola,
    mu_slope,
    nu_slope,
    numerical_wall,
    q_tilt,
    vertical_wall,
)
from .wallfinder import (
    WallCandidate,
    WallFinderError,
    WallReport,
    brute_force_walls,
    enumerate_walls_on_line,
    largest_wall_bound,
    scan_all_walls,
    smallest_wall,
)
from .bridgeland import (
    BridgelandPoint,
    DegenerateHitError,
    PathCrossing,
    QuarticWallFunction,
    bridgeland_wall_function,
    hyperbola_offset_path,
    lambda_slope,
    q_bridgeland,
    trace_path_crossings,
    z_bridgeland,
)

__version__ = "0.1.0"
