"""Formal balls ``(x, r)`` over a quasi-metric space.

``(x, r) ⊑ (y, s)`` iff ``d(x, y) <= r - s`` and the strict auxiliary relation
``(x, r) ≺ (y, s)`` iff ``d(x, y) < r - s``. Points are identified with
radius-zero balls through :func:`iota`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .errors import DefinitionError, PreconditionError, SpaceMismatchError
from .qspace import Point, Space, format_rational, parse_rational


@dataclass(frozen=True)
class FormalBall:
    point: Point
    radius: Fraction

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise PreconditionError(f"radius must be nonnegative, got {self.radius}")
        if not isinstance(self.radius, Fraction):
            object.__setattr__(self, "radius", Fraction(self.radius))

    def shifted(self, epsilon: Fraction) -> "FormalBall":
        return FormalBall(self.point, self.radius + epsilon)

    def __str__(self) -> str:
        return f"{self.point}@{self.radius}"


def check_ball(space: Space, a: FormalBall) -> FormalBall:
    if not isinstance(a, FormalBall):
        raise SpaceMismatchError(f"expected a FormalBall, got {a!r}")
    if not space.contains(a.point):
        raise SpaceMismatchError(f"ball {a} does not live in {space.kind}")
    return a


def ball_to_json(space: Space, a: FormalBall) -> dict:
    return {"point": space.format_point(a.point), "radius": format_rational(a.radius)}


def ball_from_json(space: Space, obj: Any) -> FormalBall:
    """Accept ``{"point": ..., "radius": "num/den"}`` or the shorthand ``"point@radius"``."""
    if isinstance(obj, str):
        point, sep, radius = obj.rpartition("@")
        if not sep:
            raise DefinitionError(f"ball shorthand must be 'point@radius', got {obj!r}")
        return FormalBall(space.parse_point(point), parse_rational(radius))
    if isinstance(obj, dict) and set(obj) == {"point", "radius"}:
        return FormalBall(space.parse_point(obj["point"]), parse_rational(obj["radius"]))
    raise DefinitionError(f"not a formal ball: {obj!r}")


# Unchecked kernels, shared with the set-level modules.

def _below(space: Space, a: FormalBall, b: FormalBall) -> bool:
    return space.distance(a.point, b.point) <= a.radius - b.radius


def _way(space: Space, a: FormalBall, b: FormalBall) -> bool:
    return space.distance(a.point, b.point) < a.radius - b.radius


def _q(space: Space, a: FormalBall, b: FormalBall) -> Fraction:
    diff = b.radius - a.radius
    return max(space.distance(a.point, b.point), abs(diff)) + diff


def below(space: Space, a: FormalBall, b: FormalBall) -> bool:
    """The information order ``a ⊑ b``."""
    return _below(space, check_ball(space, a), check_ball(space, b))


def way(space: Space, a: FormalBall, b: FormalBall) -> bool:
    """The auxiliary relation ``a ≺ b``."""
    return _way(space, check_ball(space, a), check_ball(space, b))


def iota(x: Point) -> FormalBall:
    return FormalBall(x, Fraction(0))


def q_dist(space: Space, a: FormalBall, b: FormalBall) -> Fraction:
    """``max(d(x, y), |r - s|) + (s - r)``; zero exactly when ``a ⊑ b``."""
    return _q(space, check_ball(space, a), check_ball(space, b))


def interpolant(space: Space, lower: Iterable[FormalBall], upper: FormalBall) -> FormalBall:
    """A ball ``c`` with ``m ≺ c`` for every ``m`` in ``lower`` and ``c ≺ upper``.

    Uses ``c = (upper.point, upper.radius + slack / 2)`` where ``slack`` is the
    smallest margin ``m.radius - upper.radius - d(m.point, upper.point)``.
    """
    check_ball(space, upper)
    lower = [check_ball(space, m) for m in lower]
    if not lower:
        raise PreconditionError("interpolant needs at least one lower ball")
    slack = min(m.radius - upper.radius - space.distance(m.point, upper.point) for m in lower)
    if slack <= 0:
        raise PreconditionError("some lower ball is not way-below the upper ball")
    c = FormalBall(upper.point, upper.radius + slack / 2)
    if not (all(_way(space, m, c) for m in lower) and _way(space, c, upper)):
        raise AssertionError("interpolant postcondition failed")  # pragma: no cover
    return c


def pseudoscott_basic_member(space: Space, base: FormalBall, b: FormalBall) -> bool:
    """Whether ``b`` lies in the basic open set ``{c : base ≺ c}``."""
    return way(space, base, b)
