"""Exact formal balls, Egli-Milner chains and Hausdorff quasi-metrics."""

from .ballset import (
    BallSet,
    PointSet,
    as_balls,
    em,
    em_lower,
    em_upper,
    em_weak,
    gap,
    h_q,
    hausdorff,
    hausdorff_minus,
    hausdorff_plus,
    shift,
)
from .errors import (
    DefinitionError,
    HyperballError,
    InvalidPointError,
    OracleContractError,
    PreconditionError,
    SpaceMismatchError,
    UncertifiedChainError,
)
from .formal_ball import FormalBall, below, interpolant, iota, pseudoscott_basic_member, q_dist, way
from .hyperspace import (
    FinitePoints,
    NetOracle,
    Report,
    convergent_sequence,
    hd_compact,
    phi,
    recover_compact,
    standard_representation,
    verify_isometry,
    verify_order_correspondence,
    vietoris_box_member,
    vietoris_diamond_member,
)
from .omega_plotkin import (
    CertifiedDistance,
    ChainPrefix,
    TriState,
    ascending_selection,
    bicauchy_at_depth,
    bicauchy_index,
    certify,
    chain_equiv_at_depth,
    chain_leq_at_depth,
    d_truncated,
    iplus_points,
    rbar,
    validate_chain,
    way_below_at_depth,
    yhat_truncated,
)
from .qspace import (
    AxiomReport,
    FiniteMatrix,
    SorgenfreyUnit,
    Space,
    Word,
    Words,
    ball_contains,
    check_cauchy,
    conjugate_dist,
    dist,
    finite_element_residual,
    load_space,
    parse_rational,
    sym_dist,
    verify_axioms,
    yoneda_residual,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BallSet",
    "CertifiedDistance",
    "ChainPrefix",
    "DefinitionError",
    "FiniteMatrix",
    "FinitePoints",
    "FormalBall",
    "HyperballError",
    "InvalidPointError",
    "NetOracle",
    "OracleContractError",
    "PointSet",
    "PreconditionError",
    "Report",
    "SorgenfreyUnit",
    "Space",
    "SpaceMismatchError",
    "TriState",
    "UncertifiedChainError",
    "Word",
    "Words",
    "as_balls",
    "ascending_selection",
    "ball_contains",
    "below",
    "bicauchy_at_depth",
    "bicauchy_index",
    "certify",
    "chain_equiv_at_depth",
    "chain_leq_at_depth",
    "check_cauchy",
    "conjugate_dist",
    "convergent_sequence",
    "d_truncated",
    "dist",
    "em",
    "em_lower",
    "em_upper",
    "em_weak",
    "finite_element_residual",
    "gap",
    "h_q",
    "hausdorff",
    "hausdorff_minus",
    "hausdorff_plus",
    "hd_compact",
    "interpolant",
    "iota",
    "iplus_points",
    "load_space",
    "parse_rational",
    "phi",
    "pseudoscott_basic_member",
    "q_dist",
    "rbar",
    "recover_compact",
    "shift",
    "standard_representation",
    "sym_dist",
    "validate_chain",
    "verify_axioms",
    "verify_isometry",
    "verify_order_correspondence",
    "vietoris_box_member",
    "vietoris_diamond_member",
    "way",
    "way_below_at_depth",
    "yhat_truncated",
    "yoneda_residual",
]
