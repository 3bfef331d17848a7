"""Quasi-metric spaces with exact rational distances.

Three carriers are built in:

* ``SorgenfreyUnit`` -- rationals in [0, 1] with ``d(x, y) = y - x`` when
  ``x <= y`` and ``1`` otherwise (the lower-limit topology).
* ``Words`` -- finite and eventually periodic infinite words over a finite
  alphabet, with ``d(x, y) = 2**-len(x) - 2**-len(y)`` when ``x`` is a prefix of
  ``y`` and ``1`` otherwise.
* ``FiniteMatrix`` -- named points with an explicit distance matrix.

Every distance is a :class:`fractions.Fraction`; nothing here rounds.
"""

from __future__ import annotations

import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from .errors import DefinitionError, InvalidPointError, PreconditionError

Point = Hashable

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: Any) -> Fraction:
    """Parse ``"num/den"``, ``"n"``, an int or a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise DefinitionError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise DefinitionError(f"rationals must be written as num/den, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DefinitionError(f"not a rational: {value!r}") from exc
    raise DefinitionError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


# --------------------------------------------------------------------------
# Words


@dataclass(frozen=True)
class Word:
    """A finite word, or the infinite word ``prefix + cycle + cycle + ...``.

    An empty ``cycle`` means the word is finite. The representation is
    canonicalised on construction (primitive cycle, shortest prefix) so that
    equality of infinite words is structural.
    """

    prefix: str = ""
    cycle: str = ""

    def __post_init__(self) -> None:
        if not self.cycle:
            return
        cycle = self.cycle
        n = len(cycle)
        for p in range(1, n + 1):
            if n % p == 0 and cycle[:p] * (n // p) == cycle:
                cycle = cycle[:p]
                break
        prefix = self.prefix
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """``"ab"`` is finite; ``"ab(c)"`` is ``abccc...``."""
        if not isinstance(text, str):
            raise DefinitionError(f"a word must be a string, got {text!r}")
        if text.endswith(")"):
            head, sep, cycle = text[:-1].partition("(")
            if not sep or not cycle or set("()") & set(cycle) or ")" in head:
                raise DefinitionError(f"malformed infinite word: {text!r}")
            return cls(head, cycle)
        if "(" in text or ")" in text:
            raise DefinitionError(f"malformed word: {text!r}")
        return cls(text)

    @property
    def infinite(self) -> bool:
        return bool(self.cycle)

    @property
    def length(self) -> int | None:
        """Length, or ``None`` for an infinite word."""
        return None if self.cycle else len(self.prefix)

    def letters(self) -> str:
        return self.prefix + self.cycle

    def take(self, n: int) -> str:
        if not self.cycle:
            return self.prefix[:n]
        out = self.prefix
        while len(out) < n:
            out += self.cycle
        return out[:n]

    def is_prefix_of(self, other: "Word") -> bool:
        if self.infinite:
            return self == other
        n = len(self.prefix)
        if not other.infinite and len(other.prefix) < n:
            return False
        return other.take(n) == self.prefix

    def weight(self) -> Fraction:
        """``2**-length``, with the convention ``2**-inf = 0``."""
        if self.cycle:
            return ZERO
        return Fraction(1, 2 ** len(self.prefix))

    def __str__(self) -> str:
        return f"{self.prefix}({self.cycle})" if self.cycle else self.prefix


# --------------------------------------------------------------------------
# Spaces


class Space(ABC):
    """A quasi-metric space with a declared upper bound on distances."""

    kind: str

    @property
    @abstractmethod
    def bound(self) -> Fraction: ...

    @abstractmethod
    def contains(self, p: Point) -> bool: ...

    @abstractmethod
    def distance(self, x: Point, y: Point) -> Fraction:
        """Unchecked distance; callers validate points first."""

    @abstractmethod
    def parse_point(self, obj: Any) -> Point: ...

    @abstractmethod
    def format_point(self, p: Point) -> Any: ...

    @abstractmethod
    def to_json(self) -> dict: ...

    @abstractmethod
    def default_sample(self) -> list: ...

    @abstractmethod
    def random_point(self, rng: random.Random) -> Point: ...

    def check(self, p: Point) -> Point:
        if not self.contains(p):
            raise InvalidPointError(f"{p!r} is not a point of {self.kind}")
        return p

    def point_key(self, p: Point) -> str:
        return str(p)


@dataclass(frozen=True)
class SorgenfreyUnit(Space):
    """Sorgenfrey quasi-metric restricted to ``[0, 1] ∩ Q``."""

    sample: tuple = field(default=(), compare=False)
    kind = "sorgenfrey_unit"

    @property
    def bound(self) -> Fraction:
        return ONE

    def contains(self, p: Point) -> bool:
        return isinstance(p, (Fraction, int)) and not isinstance(p, bool) and 0 <= p <= 1

    def distance(self, x: Point, y: Point) -> Fraction:
        return Fraction(y - x) if x <= y else ONE

    def parse_point(self, obj: Any) -> Fraction:
        p = parse_rational(obj)
        if not 0 <= p <= 1:
            raise InvalidPointError(f"{obj!r} is outside [0, 1]")
        return p

    def format_point(self, p: Point) -> str:
        return format_rational(p)

    def to_json(self) -> dict:
        return {"kind": self.kind}

    def default_sample(self) -> list:
        if self.sample:
            return list(self.sample)
        return [Fraction(k, 12) for k in range(13)]

    def random_point(self, rng: random.Random, max_den: int = 64) -> Fraction:
        den = rng.randint(1, max_den)
        return Fraction(rng.randint(0, den), den)


@dataclass(frozen=True)
class Words(Space):
    """Finite and eventually periodic infinite words under the prefix quasi-metric."""

    alphabet: tuple[str, ...] = ("a", "b")
    max_len: int = 16
    sample: tuple = field(default=(), compare=False)
    kind = "words"

    def __post_init__(self) -> None:
        if not self.alphabet or any(len(a) != 1 for a in self.alphabet):
            raise DefinitionError("alphabet must be a nonempty list of single characters")
        if len(set(self.alphabet)) != len(self.alphabet) or set(self.alphabet) & set("()"):
            raise DefinitionError("alphabet letters must be distinct and not parentheses")
        if self.max_len < 0:
            raise DefinitionError("max_len must be nonnegative")

    @property
    def bound(self) -> Fraction:
        return ONE

    def contains(self, p: Point) -> bool:
        if not isinstance(p, Word):
            return False
        letters = p.letters()
        return len(letters) <= self.max_len and all(c in self.alphabet for c in letters)

    def distance(self, x: Word, y: Word) -> Fraction:
        if x.is_prefix_of(y):
            return x.weight() - y.weight()
        return ONE

    def parse_point(self, obj: Any) -> Word:
        w = Word.parse(obj)
        if not self.contains(w):
            raise InvalidPointError(f"{obj!r} is not a word of this space")
        return w

    def format_point(self, p: Word) -> str:
        return str(p)

    def to_json(self) -> dict:
        return {"kind": self.kind, "alphabet": list(self.alphabet), "max_len": self.max_len}

    def all_finite_words(self, max_len: int | None = None) -> list[Word]:
        top = self.max_len if max_len is None else min(max_len, self.max_len)
        out = []
        for n in range(top + 1):
            out.extend(Word("".join(t)) for t in product(self.alphabet, repeat=n))
        return out

    def default_sample(self) -> list:
        if self.sample:
            return list(self.sample)
        sample = self.all_finite_words(3)
        if self.max_len >= 1:
            sample.extend(Word("", a) for a in self.alphabet)
        return sample

    def random_point(self, rng: random.Random) -> Word:
        n = rng.randint(0, self.max_len)
        letters = "".join(rng.choice(self.alphabet) for _ in range(n))
        if n and rng.random() < 0.2:
            cut = rng.randint(0, n - 1)
            return Word(letters[:cut], letters[cut:])
        return Word(letters)


@dataclass(frozen=True)
class FiniteMatrix(Space):
    """Named points with an explicit (possibly asymmetric) distance matrix."""

    points: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    declared_bound: Fraction | None = None
    sample: tuple = field(default=(), compare=False)
    kind = "finite_matrix"

    def __post_init__(self) -> None:
        n = len(self.points)
        if n == 0:
            raise DefinitionError("a finite space needs at least one point")
        if len(set(self.points)) != n:
            raise DefinitionError("point names must be distinct")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise DefinitionError("distance matrix must be square and match the point list")
        if any(v < 0 for row in self.matrix for v in row):
            raise DefinitionError("distances must be nonnegative")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})
        # spaces key the Hausdorff cache; hashing the full matrix on every lookup dominates
        object.__setattr__(self, "_hash", hash((self.points, self.matrix, self.declared_bound)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def from_rows(cls, points: Sequence[str], rows: Sequence[Sequence[Any]], **kw) -> "FiniteMatrix":
        matrix = tuple(tuple(parse_rational(v) for v in row) for row in rows)
        return cls(tuple(points), matrix, **kw)

    @property
    def bound(self) -> Fraction:
        if self.declared_bound is not None:
            return self.declared_bound
        return max(v for row in self.matrix for v in row)

    def contains(self, p: Point) -> bool:
        return isinstance(p, str) and p in self._index

    def distance(self, x: str, y: str) -> Fraction:
        return self.matrix[self._index[x]][self._index[y]]

    def parse_point(self, obj: Any) -> str:
        if not self.contains(obj):
            raise InvalidPointError(f"{obj!r} is not a point of this finite space")
        return obj

    def format_point(self, p: str) -> str:
        return p

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "points": list(self.points),
            "matrix": [[format_rational(v) for v in row] for row in self.matrix],
        }
        if self.declared_bound is not None:
            doc["bound"] = format_rational(self.declared_bound)
        return doc

    def default_sample(self) -> list:
        return list(self.sample) if self.sample else list(self.points)

    def random_point(self, rng: random.Random) -> str:
        return rng.choice(self.points)


def load_space(doc: dict) -> Space:
    """Build a space from its JSON definition document."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DefinitionError("space definition must be an object with a 'kind'")
    kind = doc["kind"]
    if kind == "sorgenfrey_unit":
        space: Space = SorgenfreyUnit()
    elif kind == "words":
        alphabet = doc.get("alphabet", ["a", "b"])
        max_len = doc.get("max_len", 16)
        if not isinstance(alphabet, list) or not isinstance(max_len, int) or isinstance(max_len, bool):
            raise DefinitionError("words space needs a list 'alphabet' and an integer 'max_len'")
        space = Words(tuple(alphabet), max_len)
    elif kind == "finite_matrix":
        points, rows = doc.get("points"), doc.get("matrix")
        if not isinstance(points, list) or not isinstance(rows, list):
            raise DefinitionError("finite_matrix needs 'points' and 'matrix' lists")
        if not all(isinstance(p, str) for p in points) or not all(isinstance(r, list) for r in rows):
            raise DefinitionError("finite_matrix points must be strings and rows lists")
        bound = parse_rational(doc["bound"]) if "bound" in doc else None
        space = FiniteMatrix.from_rows(points, rows, declared_bound=bound)
    else:
        raise DefinitionError(f"unknown space kind {kind!r}")
    if "sample" in doc:
        if not isinstance(doc["sample"], list) or not doc["sample"]:
            raise DefinitionError("'sample' must be a nonempty list of points")
        sample = tuple(space.parse_point(p) for p in doc["sample"])
        object.__setattr__(space, "sample", sample)
    return space


# --------------------------------------------------------------------------
# Distances


def dist(space: Space, x: Point, y: Point) -> Fraction:
    return space.distance(space.check(x), space.check(y))


def conjugate_dist(space: Space, x: Point, y: Point) -> Fraction:
    return dist(space, y, x)


def sym_dist(space: Space, x: Point, y: Point) -> Fraction:
    """The symmetrisation ``max(d(x, y), d(y, x))``, a metric."""
    return max(dist(space, x, y), dist(space, y, x))


def ball_contains(space: Space, center: Point, radius: Fraction, y: Point) -> bool:
    """Membership in the open ball ``{y : d(center, y) < radius}``."""
    if radius <= 0:
        raise PreconditionError("ball radius must be positive")
    return dist(space, center, y) < radius


# --------------------------------------------------------------------------
# Axiom checking


@dataclass
class AxiomReport:
    """Violations of the quasi-metric axioms found on a finite sample.

    ``triangle`` holds ``(x, y, z, d(x,z), d(x,y) + d(y,z))`` tuples;
    ``separation`` pairs with ``d(x,y) = d(y,x) = 0``; ``t1`` pairs with
    ``d(x,y) = 0`` (a weaker space can pass separation and fail here).
    """

    sample_size: int
    triangle: list = field(default_factory=list)
    separation: list = field(default_factory=list)
    t1: list = field(default_factory=list)
    self_distance: list = field(default_factory=list)
    over_bound: list = field(default_factory=list)

    @property
    def is_quasi_metric(self) -> bool:
        return not (self.triangle or self.separation or self.self_distance)

    @property
    def is_t1(self) -> bool:
        return self.is_quasi_metric and not self.t1

    @property
    def passed(self) -> bool:
        return self.is_t1 and not self.over_bound

    def violation_count(self) -> int:
        return sum(map(len, (self.triangle, self.separation, self.t1, self.self_distance, self.over_bound)))


def _scaled_matrix(values: list[list[Fraction]]) -> np.ndarray:
    """Scale a rational matrix to a common denominator; exact integer entries."""
    den = 1
    for row in values:
        for v in row:
            den = math.lcm(den, v.denominator)
    ints = [[v.numerator * (den // v.denominator) for v in row] for row in values]
    top = max((abs(v) for row in ints for v in row), default=0)
    # int64 headroom for a sum of two entries
    dtype = np.int64 if top < 2**61 else object
    return np.array(ints, dtype=dtype)


def verify_axioms(space: Space, sample: Iterable[Point]) -> AxiomReport:
    """Check the quasi-metric and T1 axioms on every pair and triple of ``sample``."""
    pts = []
    seen = set()
    for p in sample:
        space.check(p)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if not pts:
        raise PreconditionError("sample must be nonempty")
    n = len(pts)
    values = [[space.distance(x, y) for y in pts] for x in pts]
    report = AxiomReport(sample_size=n)
    bound = space.bound
    for i in range(n):
        if values[i][i] != 0:
            report.self_distance.append((pts[i], values[i][i]))
        for j in range(n):
            if values[i][j] > bound:
                report.over_bound.append((pts[i], pts[j], values[i][j]))
            if i != j and values[i][j] == 0:
                report.t1.append((pts[i], pts[j]))
                if i < j and values[j][i] == 0:
                    report.separation.append((pts[i], pts[j]))
    m = _scaled_matrix(values)
    for j in range(n):
        bad = m > (m[:, j : j + 1] + m[j : j + 1, :])
        for i, k in zip(*np.nonzero(bad)):
            i, k = int(i), int(k)
            report.triangle.append((pts[i], pts[j], pts[k], values[i][k], values[i][j] + values[j][k]))
    return report


# --------------------------------------------------------------------------
# Sequences


def check_cauchy(space: Space, prefix: Sequence[Point], epsilon: Fraction, from_index: int) -> bool:
    """``d(x_n, x_m) < epsilon`` for all ``from_index <= n <= m <= len(prefix)`` (1-based)."""
    if not prefix:
        raise PreconditionError("sequence prefix must be nonempty")
    if not 1 <= from_index <= len(prefix):
        raise PreconditionError(f"from_index {from_index} outside 1..{len(prefix)}")
    tail = [space.check(x) for x in prefix[from_index - 1 :]]
    return all(
        space.distance(tail[a], tail[b]) < epsilon
        for a in range(len(tail))
        for b in range(a, len(tail))
    )


def _inf_sup(values: list[Fraction]) -> Fraction:
    """``min_n max_{m >= n} values[m]``."""
    best = None
    running = None
    for v in reversed(values):
        running = v if running is None else max(running, v)
        best = running if best is None else min(best, running)
    return best


def _sup_inf(values: list[Fraction]) -> Fraction:
    """``max_n min_{m >= n} values[m]``."""
    best = None
    running = None
    for v in reversed(values):
        running = v if running is None else min(running, v)
        best = running if best is None else max(best, running)
    return best


def yoneda_residual(space: Space, prefix: Sequence[Point], candidate: Point, probes: Sequence[Point]) -> Fraction:
    """Largest discrepancy, over the probes, between ``d(candidate, y)`` and the
    inf-sup of ``d(x_m, y)`` along the prefix. Zero means the candidate is
    consistent with being the Yoneda limit at this depth."""
    if not prefix or not probes:
        raise PreconditionError("prefix and probes must be nonempty")
    xs = [space.check(x) for x in prefix]
    space.check(candidate)
    residual = ZERO
    for y in probes:
        space.check(y)
        limit_side = _inf_sup([space.distance(x, y) for x in xs])
        residual = max(residual, abs(space.distance(candidate, y) - limit_side))
    return residual


def finite_element_residual(space: Space, e: Point, prefix: Sequence[Point], limit: Point) -> Fraction:
    """``|d(e, limit) - sup_n inf_{m >= n} d(e, x_m)|`` on the prefix."""
    if not prefix:
        raise PreconditionError("prefix must be nonempty")
    xs = [space.check(x) for x in prefix]
    space.check(e)
    space.check(limit)
    return abs(space.distance(e, limit) - _sup_inf([space.distance(e, x) for x in xs]))
