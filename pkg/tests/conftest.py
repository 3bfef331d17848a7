from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hyperball import BallSet, FormalBall, SorgenfreyUnit, Word, Words
from oracles import random_matrix_space

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


SORG = SorgenfreyUnit()
WORDS = Words(("a", "b"), 6)
MATRIX = random_matrix_space(random.Random(7), 6)


@pytest.fixture
def sorg():
    return SORG


@pytest.fixture
def words():
    return WORDS


rationals01 = st.builds(
    lambda den, k: Fraction(k % (den + 1), den),
    st.integers(1, 24),
    st.integers(0, 10_000),
)
radii = st.builds(lambda den, k: Fraction(k, den), st.integers(1, 24), st.integers(0, 48))
finite_words = st.text(alphabet="ab", max_size=6).map(Word)
infinite_words = st.tuples(st.text(alphabet="ab", max_size=3), st.text(alphabet="ab", min_size=1, max_size=3)).map(
    lambda t: Word(*t)
)
word_points = st.one_of(finite_words, infinite_words)
matrix_points = st.sampled_from(MATRIX.points)

SPACES = {"sorgenfrey": (SORG, rationals01), "words": (WORDS, word_points), "matrix": (MATRIX, matrix_points)}


def balls(points):
    return st.builds(FormalBall, points, radii)


def ballsets(points, max_size=4):
    return st.lists(balls(points), min_size=1, max_size=max_size).map(BallSet)


@st.composite
def space_and(draw, make):
    """Draw a space name, then values built from that space's point strategy."""
    name = draw(st.sampled_from(sorted(SPACES)))
    space, points = SPACES[name]
    return space, draw(make(points))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
