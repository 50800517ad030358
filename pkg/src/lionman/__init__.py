"""Geodesic spaces, hyperbolicity diagnostics, rays, and the pursuit game."""

from .errors import (
    ConfigError,
    DegenerateInputError,
    GeometryError,
    InsufficientCurveError,
    InsufficientDataError,
    InvalidAlphaError,
    InvalidInputError,
    InvalidPointError,
    PromotionPreconditionError,
    SpaceMismatchError,
    StrategyFaultError,
    ThresholdNotMetError,
    UnsupportedSpaceError,
)
from .spaces import (
    Ball,
    EuclideanSpace,
    HyperbolicPlane,
    L2BoxSpace,
    Point,
    PointSampler,
    RAY_EDGE,
    RTreeSpace,
    Segment,
    SubtreeDomain,
    WholeSpace,
    boxpoint,
    domain_contains,
    edge_point,
    epoint,
    hpoint,
    load_space_config,
    random_tree,
    ray_tree,
    tripod,
    vertex_point,
)
from .curves import (
    Curve,
    DirectionalityReport,
    QGReport,
    RayApprox,
    check_directional_curve,
    check_directional_sequence,
    check_quasi_geodesic,
    extract_ray_from_directional_sequence,
    extract_ray_from_quasi_geodesic,
    geodesic_segment_curve,
    hyperbolic_tube_curve,
    l2_example_curve,
    load_curve,
    promote_constants,
    save_curve,
    tree_ray_curve,
    verify_promotion,
    zigzag_quasi_geodesic,
)
from .hyperbolicity import (
    ComparisonTriangle,
    GromovCriterionReport,
    SlimnessReport,
    alexandrov_angle,
    alexandrov_angle_by_halving,
    cat_defect,
    check_gromov_criterion,
    comparison_angle,
    estimate_delta,
    estimate_quasi_slim_M,
    gromov_product,
    slim_defect,
)
from .game import (
    DirectionalStrategy,
    GameConfig,
    GreedyStrategy,
    Outcome,
    RandomStrategy,
    StationaryStrategy,
    StepRecord,
    Transcript,
    classify_outcome,
    lion_step,
    load_transcript,
    man_directional_strategy,
    man_greedy_strategy,
    run_game,
    save_transcript,
    write_dist_csv,
)
from .analysis import (
    BetaSequence,
    CaptureAudit,
    EquivalenceReport,
    beta_angles,
    beta_threshold,
    curve_from_transcript,
    equivalence_report,
    rtree_capture_audit,
    verify_mans_win_curve,
    write_audit_csv,
    write_beta_csv,
)

__version__ = "0.1.0"
