"""Compact sets, their standard representations, and embedding checks.

A compact set ``K`` is sent to the chain ``F_n = {(x, 1/n) : x in N_1 ∪ ... ∪ N_n}``
where ``N_i`` is a finite ``1/(2 i^2)``-net of ``K``. For a finite ``K`` every
net is ``K`` itself. The verification routines compare what the chain side
says (order, truncated ``D``, recovered points) with what the set side says
(``H_d``, inclusion, closure) and report agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, Union

from .ballset import BallSet, PointSet, check_pointset, hausdorff, pointset_from_json, pointset_to_json
from .errors import DefinitionError, OracleContractError, PreconditionError
from .formal_ball import FormalBall
from .omega_plotkin import (
    ChainPrefix,
    TriState,
    certify,
    chain_leq_at_depth,
    d_truncated,
    iplus_points,
)
from .qspace import Point, SorgenfreyUnit, Space, format_rational


@dataclass
class Report:
    """Outcome of one verification: a verdict plus named exact quantities."""

    check: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class FinitePoints:
    points: PointSet

    def __init__(self, points: Union[PointSet, Iterable[Point]]):
        if not isinstance(points, PointSet):
            points = PointSet(points)
        object.__setattr__(self, "points", points)


@dataclass(frozen=True)
class NetOracle:
    """A compact set known through finite nets.

    Contract: ``net(eps)`` is a finite subset of the set such that every member
    ``k`` has net points ``x, x'`` with ``d(x, k) < eps`` and ``d(k, x') < eps``.
    ``sample`` is a finite subset used to spot-check that contract.
    """

    name: str
    net: Callable[[Fraction], PointSet] = field(compare=False)
    sample: PointSet = field(compare=False)


CompactSet = Union[FinitePoints, NetOracle]


def _net(K: CompactSet, eps: Fraction) -> PointSet:
    if isinstance(K, FinitePoints):
        return K.points
    return K.net(eps)


def check_net(space: Space, K: NetOracle, eps: Fraction) -> PointSet:
    """Evaluate ``K.net(eps)`` and spot-check it against ``K.sample``."""
    net = check_pointset(space, K.net(eps))
    for s in K.sample:
        if not any(space.distance(x, s) < eps for x in net):
            raise OracleContractError(f"{K.name}: no net point within {eps} before sample point {s}")
        if not any(space.distance(s, x) < eps for x in net):
            raise OracleContractError(f"{K.name}: no net point within {eps} after sample point {s}")
    return net


def standard_representation(space: Space, K: CompactSet, depth: int) -> ChainPrefix:
    """The first ``depth`` sets of the standard representation of ``K``."""
    if depth < 1:
        raise PreconditionError("depth must be at least 1")
    centres: dict = {}
    sets = []
    for n in range(1, depth + 1):
        eps = Fraction(1, 2 * n * n)
        net = check_pointset(space, K.points) if isinstance(K, FinitePoints) else check_net(space, K, eps)
        centres.update(dict.fromkeys(net))
        r = Fraction(1, n)
        sets.append(BallSet(FormalBall(x, r) for x in centres))
    return certify(space, ChainPrefix(tuple(sets)), vanishing=True)


phi = standard_representation


def _require_finite(*sets: CompactSet) -> None:
    for K in sets:
        if not isinstance(K, FinitePoints):
            raise PreconditionError("this operation needs a finite point set, not a net oracle")


def hd_compact(space: Space, K: CompactSet, L: CompactSet) -> Fraction:
    _require_finite(K, L)
    return hausdorff(space, K.points, L.points)


def verify_isometry(space: Space, K: CompactSet, L: CompactSet, depth: int) -> Report:
    """Compare ``H_d(K, L)`` with the truncated ``D(phi(K), phi(L))``.

    Passes when the two differ by at most the certificate's error radius. For
    net oracles ``H_d`` is only known to within the net resolution ``eps`` of
    the nets at ``1/(2 depth^2)``, and ``eps`` is added to the allowance.
    """
    dc = d_truncated(space, phi(space, K, depth), phi(space, L, depth))
    if isinstance(K, FinitePoints) and isinstance(L, FinitePoints):
        h = hausdorff(space, K.points, L.points)
        slack = Fraction(0)
    else:
        slack = Fraction(1, 2 * depth * depth)
        h = hausdorff(space, _net(K, slack), _net(L, slack))
    gap = abs(h - dc.value)
    allowance = dc.error_radius + slack
    return Report(
        check="isometry",
        passed=dc.valid and gap <= allowance,
        details={
            "hausdorff": h,
            "d_value": dc.value,
            "error_radius": dc.error_radius,
            "net_resolution": slack,
            "gap": gap,
            "margin": allowance - gap,
            "depth": depth,
        },
    )


def closure_contains(space: Space, L: PointSet, x: Point) -> bool:
    """``x`` is in the ``tau_d``-closure of finite ``L`` iff ``min_l d(x, l) = 0``."""
    return min(space.distance(x, l) for l in L) == 0


def verify_order_correspondence(space: Space, K: CompactSet, L: CompactSet, depth: int) -> Report:
    """Check that chain order, ``H_d = 0`` and ``L ⊆ K ⊆ cl(L)`` agree.

    Expected at adequate depth (``depth >= 2``): (a) implies (b), (b) iff (c),
    and for finite sets (b) implies (a).
    """
    _require_finite(K, L)
    leq = chain_leq_at_depth(space, phi(space, K, depth), phi(space, L, depth))
    a = leq is TriState.ESTABLISHED
    h = hd_compact(space, K, L)
    b = h == 0
    kp, lp = K.points, L.points
    c = all(y in kp for y in lp) and all(closure_contains(space, lp, x) for x in kp)
    passed = (not a or b) and (b == c) and (not b or a)
    return Report(
        check="order",
        passed=passed,
        details={
            "chain_leq": leq.value,
            "a": a,
            "b": b,
            "c": c,
            "hausdorff": h,
            # (a) forces H_d < 1/(depth-1), and at depth 1 nothing can be resolved
            "adequate_depth": depth >= 2 and (b or h * (depth - 1) >= 1),
            "depth": depth,
        },
    )


def recover_compact(space: Space, K: CompactSet, universe: PointSet, depth: int) -> Report:
    """Recover ``K`` from its depth-``depth`` representation inside ``universe``."""
    _require_finite(K)
    check_pointset(space, universe)
    if not all(k in universe for k in K.points):
        raise PreconditionError("the universe must contain every point of K")
    found = iplus_points(space, phi(space, K, depth), universe)
    extra = [x for x in found if x not in K.points]
    missing = [k for k in K.points if k not in found]
    return Report(
        check="recover",
        passed=not extra and not missing,
        details={
            "recovered": list(found),
            "extra": extra,
            "missing": missing,
            # extra points are points within 1/depth of K; a deeper chain drops them
            "depth_insufficient": bool(extra) and not missing,
            "depth": depth,
        },
    )


def vietoris_diamond_member(space: Space, K: CompactSet, center: Point, radius: Fraction) -> bool:
    """``K`` meets the open ball of the given centre and radius."""
    _require_finite(K)
    if radius <= 0:
        raise PreconditionError("ball radius must be positive")
    space.check(center)
    return any(space.distance(center, k) < radius for k in K.points)


def vietoris_box_member(space: Space, K: CompactSet, balls: Sequence[tuple[Point, Fraction]]) -> bool:
    """``K`` lies inside the union of the given open balls."""
    _require_finite(K)
    if not balls:
        raise PreconditionError("need at least one ball")
    for c, r in balls:
        space.check(c)
        if r <= 0:
            raise PreconditionError("ball radius must be positive")
    return all(any(space.distance(c, k) < r for c, r in balls) for k in K.points)


# --------------------------------------------------------------------------
# Built-in net oracles


def convergent_sequence(limit: Fraction, scale: Fraction, sample_size: int = 48) -> NetOracle:
    """``{limit} ∪ {limit + scale/n : n >= 1}`` in the Sorgenfrey unit interval.

    The sequence decreases to its limit, so it converges in the lower-limit
    topology and the set is compact.
    """
    limit, scale = Fraction(limit), Fraction(scale)
    if not (0 <= limit and scale > 0 and limit + scale <= 1):
        raise ValueError("sequence must stay inside [0, 1]")

    def net(eps: Fraction) -> PointSet:
        top = int(scale / eps) + 1  # scale/top < eps
        return PointSet([limit] + [limit + scale / m for m in range(1, top + 1)])

    sample = PointSet([limit] + [limit + scale / n for n in range(1, sample_size + 1)])
    return NetOracle(f"sequence({limit},{scale})", net, sample)


BUILTIN_ORACLES: dict[str, tuple[type, Callable[[], NetOracle]]] = {
    "harmonic": (SorgenfreyUnit, lambda: convergent_sequence(Fraction(0), Fraction(1))),
    "half_harmonic": (SorgenfreyUnit, lambda: convergent_sequence(Fraction(1, 2), Fraction(1, 2))),
}


def compact_from_json(space: Space, obj: Any) -> CompactSet:
    """``{"finite": [...]}``, ``{"oracle": "builtin:<name>", "sample": [...]}``,
    or a bare point array as shorthand for a finite set."""
    if isinstance(obj, list):
        return FinitePoints(pointset_from_json(space, obj))
    if isinstance(obj, dict) and "finite" in obj:
        return FinitePoints(pointset_from_json(space, obj["finite"]))
    if isinstance(obj, dict) and "oracle" in obj:
        ref = obj["oracle"]
        if not isinstance(ref, str) or not ref.startswith("builtin:"):
            raise DefinitionError(f"oracle reference must be 'builtin:<name>', got {ref!r}")
        name = ref[len("builtin:") :]
        if name not in BUILTIN_ORACLES:
            raise DefinitionError(f"unknown built-in oracle {name!r}")
        space_type, make = BUILTIN_ORACLES[name]
        if not isinstance(space, space_type):
            raise DefinitionError(f"oracle {name!r} lives in a {space_type.kind} space")
        oracle = make()
        if "sample" in obj:
            oracle = NetOracle(oracle.name, oracle.net, pointset_from_json(space, obj["sample"]))
        return oracle
    raise DefinitionError("a compact set must be {'finite': [...]} or {'oracle': ..., 'sample': [...]}")


def compact_to_json(space: Space, K: CompactSet) -> dict:
    if isinstance(K, FinitePoints):
        return {"finite": pointset_to_json(space, K.points)}
    return {"oracle": K.name, "sample": pointset_to_json(space, K.sample)}


def report_details_json(space: Space, report: Report) -> dict:
    """Serialise report details: rationals as strings, points in space format."""

    def enc(v: Any) -> Any:
        if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
            return v
        if isinstance(v, Fraction):
            return format_rational(v)
        if isinstance(v, (list, tuple)):
            return [enc_point(x) for x in v]
        return str(v)

    def enc_point(p: Any) -> Any:
        return space.format_point(p) if space.contains(p) else enc(p)

    return {k: enc(v) for k, v in report.details.items()}
