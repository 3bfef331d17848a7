"""Finite sets of formal balls and of points.

Egli-Milner relations, radius shifts, the slack ``gap(F, G)`` of a strict
Egli-Milner step, and the one-sided and full Hausdorff quasi-distances. The
Hausdorff template is generic in the underlying distance and is used twice:
with ``d`` on point sets and with ``q`` on ball sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Callable, Iterable, Sequence, TypeVar

from .errors import DefinitionError, PreconditionError
from .formal_ball import FormalBall, _below, _q, _way, ball_from_json, ball_to_json, check_ball
from .qspace import Point, Space

T = TypeVar("T")


@dataclass(frozen=True, init=False)
class BallSet:
    """A nonempty finite set of formal balls, stored in a canonical order."""

    balls: tuple[FormalBall, ...]

    def __init__(self, balls: Iterable[FormalBall]):
        unique = {b: None for b in balls}
        if not unique:
            raise PreconditionError("a BallSet must be nonempty")
        ordered = tuple(sorted(unique, key=lambda b: (str(b.point), b.radius)))
        object.__setattr__(self, "balls", ordered)

    def __iter__(self):
        return iter(self.balls)

    def __len__(self) -> int:
        return len(self.balls)

    @cached_property
    def max_radius(self) -> Fraction:
        return max(b.radius for b in self.balls)

    @cached_property
    def uniform_radius(self) -> Fraction | None:
        """The common radius if every ball has the same one, else ``None``."""
        first = self.balls[0].radius
        return first if all(b.radius == first for b in self.balls) else None

    @cached_property
    def centres(self) -> tuple:
        return tuple(dict.fromkeys(b.point for b in self.balls))


@dataclass(frozen=True, init=False)
class PointSet:
    """A nonempty finite set of points."""

    points: tuple

    def __init__(self, points: Iterable[Point]):
        unique = dict.fromkeys(points)
        if not unique:
            raise PreconditionError("a PointSet must be nonempty")
        object.__setattr__(self, "points", tuple(sorted(unique, key=str)))

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self.points


def check_ballset(space: Space, F: BallSet) -> BallSet:
    if not isinstance(F, BallSet):
        raise PreconditionError(f"expected a BallSet, got {type(F).__name__}")
    for b in F:
        check_ball(space, b)
    return F


def check_pointset(space: Space, A: PointSet) -> PointSet:
    if not isinstance(A, PointSet):
        raise PreconditionError(f"expected a PointSet, got {type(A).__name__}")
    for p in A:
        space.check(p)
    return A


def as_balls(A: PointSet) -> BallSet:
    """Radius-zero copy of a point set, for comparing balls against points."""
    return BallSet(FormalBall(p, Fraction(0)) for p in A)


def ballset_to_json(space: Space, F: BallSet) -> list:
    return [ball_to_json(space, b) for b in F]


def ballset_from_json(space: Space, obj: Any) -> BallSet:
    if not isinstance(obj, list) or not obj:
        raise DefinitionError("a ball set must be a nonempty JSON array")
    return BallSet(ball_from_json(space, b) for b in obj)


def pointset_to_json(space: Space, A: PointSet) -> list:
    return [space.format_point(p) for p in A]


def pointset_from_json(space: Space, obj: Any) -> PointSet:
    if not isinstance(obj, list) or not obj:
        raise DefinitionError("a point set must be a nonempty JSON array")
    return PointSet(space.parse_point(p) for p in obj)


# --------------------------------------------------------------------------
# Egli-Milner


def _em_upper(space: Space, F: BallSet, G: BallSet) -> bool:
    return all(any(_way(space, f, g) for f in F) for g in G)


def _em_lower(space: Space, F: BallSet, G: BallSet) -> bool:
    return all(any(_way(space, f, g) for g in G) for f in F)


def _em(space: Space, F: BallSet, G: BallSet) -> bool:
    # the radius test is a cheap necessary condition: F ≺ G forces rF > rG
    if F.max_radius <= G.max_radius:
        return False
    return _em_lower(space, F, G) and _em_upper(space, F, G)


def _em_weak(space: Space, F: BallSet, G: BallSet) -> bool:
    """Non-strict Egli-Milner order built from ``⊑``."""
    return all(any(_below(space, f, g) for f in F) for g in G) and all(
        any(_below(space, f, g) for g in G) for f in F
    )


def em_upper(space: Space, F: BallSet, G: BallSet) -> bool:
    """Every ``g`` in ``G`` has some ``f`` in ``F`` with ``f ≺ g``."""
    return _em_upper(space, check_ballset(space, F), check_ballset(space, G))


def em_lower(space: Space, F: BallSet, G: BallSet) -> bool:
    """Every ``f`` in ``F`` has some ``g`` in ``G`` with ``f ≺ g``."""
    return _em_lower(space, check_ballset(space, F), check_ballset(space, G))


def em(space: Space, F: BallSet, G: BallSet) -> bool:
    return _em(space, check_ballset(space, F), check_ballset(space, G))


def em_weak(space: Space, F: BallSet, G: BallSet) -> bool:
    return _em_weak(space, check_ballset(space, F), check_ballset(space, G))


def shift(F: BallSet, epsilon: Fraction) -> BallSet:
    """``F + epsilon``: every radius increased by ``epsilon``."""
    if epsilon < 0:
        raise PreconditionError("shift amount must be nonnegative")
    return BallSet(b.shifted(epsilon) for b in F)


def gap(space: Space, F: BallSet, G: BallSet) -> Fraction:
    """Smallest slack ``(r - s) - d(x, y)`` over the pairs with ``(x, r) ≺ (y, s)``.

    Requires ``F ≺ G``; the result is then strictly positive.
    """
    check_ballset(space, F)
    check_ballset(space, G)
    if not _em(space, F, G):
        raise PreconditionError("gap requires F ≺ G in the Egli-Milner order")
    return min(
        (f.radius - g.radius) - space.distance(f.point, g.point)
        for f in F
        for g in G
        if _way(space, f, g)
    )


# --------------------------------------------------------------------------
# Hausdorff template


def directed_minus(distance: Callable[[T, T], Fraction], A: Sequence[T], B: Sequence[T]) -> Fraction:
    """``max_{a in A} min_{b in B} distance(a, b)``."""
    return max(min(distance(a, b) for b in B) for a in A)


def directed_plus(distance: Callable[[T, T], Fraction], A: Sequence[T], B: Sequence[T]) -> Fraction:
    """``max_{b in B} min_{a in A} distance(a, b)``."""
    return max(min(distance(a, b) for a in A) for b in B)


def hausdorff_generic(distance: Callable[[T, T], Fraction], A: Sequence[T], B: Sequence[T]) -> Fraction:
    """Both one-sided terms from a single pass over the distance table."""
    table = [[distance(a, b) for b in B] for a in A]
    minus = max(min(row) for row in table)
    plus = max(min(table[i][j] for i in range(len(A))) for j in range(len(B)))
    return max(minus, plus)


def hausdorff_minus(space: Space, A: PointSet, B: PointSet) -> Fraction:
    check_pointset(space, A)
    check_pointset(space, B)
    return directed_minus(space.distance, A.points, B.points)


def hausdorff_plus(space: Space, A: PointSet, B: PointSet) -> Fraction:
    check_pointset(space, A)
    check_pointset(space, B)
    return directed_plus(space.distance, A.points, B.points)


def hausdorff(space: Space, A: PointSet, B: PointSet) -> Fraction:
    """``H_d(A, B)``, the max of the two one-sided quasi-distances."""
    check_pointset(space, A)
    check_pointset(space, B)
    return hausdorff_generic(space.distance, A.points, B.points)


@lru_cache(maxsize=4096)
def _hd_cached(space: Space, A: tuple, B: tuple) -> Fraction:
    return hausdorff_generic(space.distance, A, B)


def _h_q(space: Space, F: BallSet, G: BallSet) -> Fraction:
    r, s = F.uniform_radius, G.uniform_radius
    if r is not None and s is not None:
        # with both radii fixed, q is nondecreasing in d and commutes with the sup-inf
        diff = s - r
        return max(_hd_cached(space, F.centres, G.centres), abs(diff)) + diff
    return hausdorff_generic(lambda a, b: _q(space, a, b), F.balls, G.balls)


def h_q(space: Space, F: BallSet, G: BallSet) -> Fraction:
    """``H_q(F, G)``: the Hausdorff construction over ``q`` on formal balls."""
    return _h_q(space, check_ballset(space, F), check_ballset(space, G))
