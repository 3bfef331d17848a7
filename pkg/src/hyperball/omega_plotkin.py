"""Finite truncations of Egli-Milner ω-chains of ball sets.

An element of the ω-Plotkin domain is an equivalence class of infinite
``≺``-ascending chains ``F_1 ≺ F_2 ≺ ...`` of finite ball sets. Here we only
ever hold a finite prefix of such a chain, so every order statement is
returned as a :class:`TriState` verdict about what the prefix already shows,
and the quasi-metric ``D`` is returned together with a truncation error
radius.

Resolution of a prefix
    ``F ≺ G`` forces ``max_radius(F) > max_radius(G)``. A set whose largest
    radius is at most ``rbar(C)`` can therefore never be witnessed inside
    the prefix ``C``; its witness, if any, lies beyond the observed depth.
    The ``*_at_depth`` relations only quantify over sets the other prefix can
    resolve, and report ``UNKNOWN`` when there are none.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .ballset import (
    BallSet,
    PointSet,
    _em,
    _h_q,
    ballset_from_json,
    ballset_to_json,
    check_ballset,
    check_pointset,
)
from .errors import DefinitionError, UncertifiedChainError
from .formal_ball import FormalBall, _below, check_ball
from .qspace import Space, _inf_sup, _sup_inf, format_rational


class TriState(enum.Enum):
    ESTABLISHED = "Established"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ChainPrefix:
    """``(F_1, ..., F_N)``; ``certified`` is set only by :func:`certify`.

    ``vanishing`` records that the full chain is known to have radii tending to
    zero (true for standard representations); the truncation error bound of
    :func:`d_truncated` is only claimed under that flag.
    """

    sets: tuple[BallSet, ...]
    certified: bool = False
    vanishing: bool = False

    @property
    def depth(self) -> int:
        return len(self.sets)

    def truncate(self, depth: int) -> "ChainPrefix":
        if not 1 <= depth <= self.depth:
            raise ValueError(f"cannot truncate depth {self.depth} prefix to {depth}")
        return ChainPrefix(self.sets[:depth], self.certified, self.vanishing)


@dataclass(frozen=True)
class CertifiedDistance:
    value: Fraction
    error_radius: Fraction
    valid: bool
    depths: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "error_radius": format_rational(self.error_radius),
            "valid": self.valid,
            "depths": list(self.depths),
        }


def _first_broken_link(space: Space, sets: Sequence[BallSet]) -> int | None:
    for i in range(len(sets) - 1):
        if not _em(space, sets[i], sets[i + 1]):
            return i
    return None


def validate_chain(space: Space, prefix: ChainPrefix) -> bool:
    """Whether every consecutive pair of the prefix is an Egli-Milner step."""
    if not prefix.sets:
        return False
    for F in prefix.sets:
        check_ballset(space, F)
    return _first_broken_link(space, prefix.sets) is None


def certify(space: Space, prefix: ChainPrefix | Sequence[BallSet], vanishing: bool | None = None) -> ChainPrefix:
    """Return a certified copy of ``prefix``, or raise naming the broken link."""
    if not isinstance(prefix, ChainPrefix):
        prefix = ChainPrefix(tuple(prefix))
    if not prefix.sets:
        raise UncertifiedChainError("a chain prefix needs at least one set")
    for F in prefix.sets:
        check_ballset(space, F)
    broken = _first_broken_link(space, prefix.sets)
    if broken is not None:
        raise UncertifiedChainError(
            f"sets {broken + 1} and {broken + 2} are not Egli-Milner related", broken
        )
    flag = prefix.vanishing if vanishing is None else vanishing
    return ChainPrefix(prefix.sets, certified=True, vanishing=flag)


def _require(*chains: ChainPrefix) -> None:
    for c in chains:
        if not isinstance(c, ChainPrefix) or not c.certified:
            raise UncertifiedChainError("operation requires a certified chain prefix")


def rbar(prefix: ChainPrefix) -> Fraction:
    """Smallest ``max_radius`` seen along the prefix (an upper estimate of the
    chain's limiting radius)."""
    _require(prefix)
    return min(F.max_radius for F in prefix.sets)


def _leq(space: Space, C1: ChainPrefix, C2: ChainPrefix) -> TriState:
    horizon = rbar(C2)
    pending = [F for F in C1.sets if F.max_radius > horizon]
    if not pending:
        return TriState.UNKNOWN
    witness = None
    for F in reversed(pending):
        # a witness for a later set also serves every earlier one, try it first
        if witness is not None and _em(space, F, witness):
            continue
        witness = next((G for G in reversed(C2.sets) if _em(space, F, G)), None)
        if witness is None:
            return TriState.UNKNOWN
    return TriState.ESTABLISHED


def chain_leq_at_depth(space: Space, C1: ChainPrefix, C2: ChainPrefix) -> TriState:
    """``∀n ∃m F_n ≺ G_m`` over the sets of ``C1`` that ``C2`` can resolve.

    Never ``REFUTED``: a missing witness may appear further along ``C2``.
    """
    _require(C1, C2)
    return _leq(space, C1, C2)


def chain_equiv_at_depth(space: Space, C1: ChainPrefix, C2: ChainPrefix) -> TriState:
    _require(C1, C2)
    if _leq(space, C1, C2) is TriState.ESTABLISHED and _leq(space, C2, C1) is TriState.ESTABLISHED:
        return TriState.ESTABLISHED
    return TriState.UNKNOWN


def way_below_at_depth(space: Space, C1: ChainPrefix, C2: ChainPrefix) -> TriState:
    """``∃m ∀n F_n ≺ G_m`` over the whole of ``C1``'s prefix."""
    _require(C1, C2)
    last = C1.sets[-1]
    for G in reversed(C2.sets):
        if _em(space, last, G) and all(_em(space, F, G) for F in C1.sets[:-1]):
            return TriState.ESTABLISHED
    return TriState.UNKNOWN


def iplus_points(space: Space, prefix: ChainPrefix, universe: PointSet) -> tuple:
    """Points ``x`` of ``universe`` with ``(x, 0)`` in the upper set of every
    ``F_n``; may be empty."""
    _require(prefix)
    check_pointset(space, universe)
    return tuple(
        x
        for x in universe
        if all(any(space.distance(b.point, x) <= b.radius for b in F) for F in prefix.sets)
    )


def ascending_selection(space: Space, prefix: ChainPrefix, target: FormalBall) -> list[FormalBall] | None:
    """A path ``a_n ∈ F_n`` with ``a_n ⊑ a_{n+1}`` and ``a_N ⊑ target``, or
    ``None`` when the layered graph has no such path."""
    _require(prefix)
    check_ball(space, target)
    sets = prefix.sets
    alive = [[a for a in sets[-1] if _below(space, a, target)]]
    for F in reversed(sets[:-1]):
        nxt = alive[-1]
        alive.append([a for a in F if any(_below(space, a, b) for b in nxt)])
    alive.reverse()
    if not alive[0]:
        return None
    path = [alive[0][0]]
    for layer in alive[1:]:
        path.append(next(b for b in layer if _below(space, path[-1], b)))
    assert all(_below(space, a, b) for a, b in zip(path, path[1:] + [target]))
    return path


def _d_full(space: Space, C1: ChainPrefix, C2: ChainPrefix) -> Fraction:
    """``max_n min_m H_q(F_n, G_m)`` with exact pruning."""
    best: Fraction | None = None
    for F in reversed(C1.sets):
        row: Fraction | None = None
        for G in reversed(C2.sets):
            h = _h_q(space, F, G)
            if row is None or h < row:
                row = h
            if row == 0 or (best is not None and row <= best):
                break  # this row can no longer raise the outer max
        if best is None or row > best:
            best = row
    return best


def d_truncated(space: Space, C1: ChainPrefix, C2: ChainPrefix, exhaustive: bool = True) -> CertifiedDistance:
    """Depth-truncated ``D(C1, C2) = sup_n inf_m H_q(F_n, G_m)``.

    ``error_radius = rbar(C1) + 2 rbar(C2)`` and the certificate is ``valid``
    only when both prefixes carry the ``vanishing`` flag.

    With ``exhaustive=False`` the value is read off the last pair,
    ``H_q(F_N, G_M)``. For certified chains this is the same number: along a
    chain ``H_q(F_n, F_n') = 0`` for ``n < n'``, so by the triangle inequality
    ``H_q(F_n, G)`` is nondecreasing in ``n`` and ``H_q(F, G_m)`` nonincreasing
    in ``m``.
    """
    _require(C1, C2)
    if exhaustive:
        value = _d_full(space, C1, C2)
    else:
        value = _h_q(space, C1.sets[-1], C2.sets[-1])
    return CertifiedDistance(
        value=value,
        error_radius=rbar(C1) + 2 * rbar(C2),
        valid=C1.vanishing and C2.vanishing,
        depths=(C1.depth, C2.depth),
    )


def yhat_truncated(space: Space, s1: Sequence[BallSet], s2: Sequence[BallSet]) -> Fraction:
    """``inf_n sup_{k>=n} sup_m inf_{p>=m} H_q(x_k, y_p)`` on finite prefixes."""
    if not s1 or not s2:
        raise ValueError("both sequences must be nonempty")
    for F in (*s1, *s2):
        check_ballset(space, F)
    inner = [_sup_inf([_h_q(space, x, y) for y in s2]) for x in s1]
    return _inf_sup(inner)


def bicauchy_index(space: Space, prefix: ChainPrefix, epsilon: Fraction) -> int:
    """Smallest 1-based ``N`` such that ``H_q(F_m, F_n) < epsilon`` for all
    ``m, n >= N`` in the prefix (in both orders)."""
    _require(prefix)
    sets = prefix.sets
    N = len(sets)
    # grow the tail backwards while it stays epsilon-close in both directions
    while N > 1:
        cand = sets[N - 2]
        if all(_h_q(space, cand, G) < epsilon and _h_q(space, G, cand) < epsilon for G in sets[N - 1 :]):
            N -= 1
        else:
            break
    return N


def bicauchy_at_depth(space: Space, prefix: ChainPrefix, epsilon: Fraction) -> bool:
    """Whether the epsilon-close tail covers at least the back half of the prefix.

    A one-set tail is always epsilon-close, so the tail has to start no later
    than index ``ceil(depth / 2)`` to count as evidence.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return bicauchy_index(space, prefix, epsilon) <= (prefix.depth + 1) // 2


def chain_to_json(space: Space, prefix: ChainPrefix) -> dict:
    doc = {"sets": [ballset_to_json(space, F) for F in prefix.sets], "certified": prefix.certified}
    if prefix.vanishing:
        doc["radius_vanishing"] = True
    return doc


def chain_from_json(space: Space, obj: Any) -> ChainPrefix:
    """Parse a chain document. A ``certified: true`` claim is re-checked."""
    if not isinstance(obj, dict) or not isinstance(obj.get("sets"), list) or not obj["sets"]:
        raise DefinitionError("a chain must be an object with a nonempty 'sets' array")
    sets = tuple(ballset_from_json(space, F) for F in obj["sets"])
    prefix = ChainPrefix(sets, vanishing=bool(obj.get("radius_vanishing", False)))
    if obj.get("certified", False):
        prefix = certify(space, prefix)
    return prefix
