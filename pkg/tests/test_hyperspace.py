from __future__ import annotations

import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

import gen
from conftest import SORG, SPACES, WORDS
from hyperball import (
    BallSet,
    DefinitionError,
    FinitePoints,
    FormalBall,
    NetOracle,
    OracleContractError,
    PointSet,
    PreconditionError,
    TriState,
    certify,
    chain_equiv_at_depth,
    convergent_sequence,
    d_truncated,
    em,
    gap,
    hd_compact,
    iplus_points,
    phi,
    recover_compact,
    shift,
    standard_representation,
    sym_dist,
    validate_chain,
    verify_isometry,
    verify_order_correspondence,
    vietoris_box_member,
    vietoris_diamond_member,
    way_below_at_depth,
)
from hyperball.hyperspace import compact_from_json, compact_to_json
from oracles import distance_for, hausdorff as hd_oracle

B = FormalBall


def K(*xs):
    return FinitePoints([Fr(x) for x in xs])


class TestStandardRepresentation:
    def test_singleton(self):
        C = standard_representation(SORG, K(0), 3)
        assert C.sets == tuple(BallSet([B(Fr(0), r)]) for r in (Fr(1), Fr(1, 2), Fr(1, 3)))
        assert C.certified and C.vanishing

    def test_pair(self):
        C = standard_representation(SORG, K(0, 1), 2)
        assert C.sets == (
            BallSet([B(Fr(0), Fr(1)), B(Fr(1), Fr(1))]),
            BallSet([B(Fr(0), Fr(1, 2)), B(Fr(1), Fr(1, 2))]),
        )
        assert em(SORG, *C.sets)

    def test_phi_is_alias(self):
        assert phi(SORG, K(0), 3) == standard_representation(SORG, K(0), 3)

    def test_depth_precondition(self):
        with pytest.raises(PreconditionError):
            phi(SORG, K(0), 0)

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False), st.integers(1, 10))
    def test_always_validates(self, name, rng, depth):
        space = SPACES[name][0]
        C = phi(space, FinitePoints(gen.pool(space, rng, rng.randint(1, 5))), depth)
        assert validate_chain(space, C)

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False), st.integers(1, 8))
    def test_every_point_has_a_centred_ball(self, name, rng, depth):
        space = SPACES[name][0]
        pts = gen.pool(space, rng, 4)
        C = phi(space, FinitePoints(pts), depth)
        for n, F in enumerate(C.sets, start=1):
            for x in pts:
                assert any(sym_dist(space, b.point, x) == 0 and b.radius == Fr(1, n) for b in F)


class TestEquivalence:
    def test_depths_5_and_9(self):
        assert chain_equiv_at_depth(SORG, phi(SORG, K(0, "1/2"), 5), phi(SORG, K(0, "1/2"), 9)) is TriState.ESTABLISHED

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False), st.integers(2, 8), st.integers(1, 4))
    def test_well_defined(self, name, rng, n, extra):
        # at n = 1 the shorter chain's only set has radius 1, which nothing in the longer one exceeds
        space = SPACES[name][0]
        A = FinitePoints(gen.pool(space, rng, 4))
        v = chain_equiv_at_depth(space, phi(space, A, n), phi(space, A, n + extra))
        assert v is TriState.ESTABLISHED

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False))
    def test_distinct_sets_not_equivalent_at_adequate_depth(self, name, rng):
        space = SPACES[name][0]
        a, b = gen.pool(space, rng, 3), gen.pool(space, rng, 3)
        A, Bs = FinitePoints(a), FinitePoints(b)
        if A == Bs:
            return
        h = min(hd_compact(space, A, Bs), hd_compact(space, Bs, A))
        depth = math.floor(1 / h) + 3
        assert chain_equiv_at_depth(space, phi(space, A, depth), phi(space, Bs, depth)) is TriState.UNKNOWN


class TestHausdorffOfCompacta:
    def test_examples(self):
        assert hd_compact(SORG, K(0, 1), K("1/2")) == 1
        assert hd_compact(SORG, K(0, "1/3"), K(0, "1/3")) == 0
        assert hd_compact(SORG, K(0), K(1)) == 1

    def test_oracle_rejected(self):
        with pytest.raises(PreconditionError):
            hd_compact(SORG, convergent_sequence(0, 1), K(0))


class TestIsometry:
    def test_singletons(self):
        rep = verify_isometry(SORG, K(0), K(1), 50)
        assert rep.passed and rep.details["hausdorff"] == 1
        assert Fr(24, 25) <= rep.details["d_value"] <= 1

    def test_same_set(self):
        rep = verify_isometry(SORG, K(0, "1/5"), K(0, "1/5"), 50)
        assert rep.passed and rep.details["hausdorff"] == 0 and rep.details["d_value"] == 0

    def test_pair_vs_midpoint(self):
        rep = verify_isometry(SORG, K(0, 1), K("1/2"), 50)
        assert rep.passed and rep.details["hausdorff"] == 1
        deep = [d_truncated(SORG, phi(SORG, K(0, 1), n), phi(SORG, K("1/2"), n)).value for n in (50, 100, 200)]
        assert deep == [1, 1, 1]

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False), st.sampled_from([2, 5, 12]))
    def test_property(self, name, rng, depth):
        space = SPACES[name][0]
        A = FinitePoints(gen.pool(space, rng, rng.randint(1, 4)))
        Bs = FinitePoints(gen.pool(space, rng, rng.randint(1, 4)))
        rep = verify_isometry(space, A, Bs, depth)
        assert rep.passed
        assert rep.details["hausdorff"] == hd_oracle(distance_for(space), list(A.points), list(Bs.points))
        assert rep.details["margin"] >= 0


class TestOrderCorrespondence:
    def test_equal(self):
        rep = verify_order_correspondence(SORG, K(0, "1/2"), K(0, "1/2"), 10)
        assert rep.passed and rep.details["a"] and rep.details["b"] and rep.details["c"]

    def test_far_singletons(self):
        rep = verify_order_correspondence(SORG, K(0), K(1), 10)
        assert rep.passed and not (rep.details["a"] or rep.details["b"] or rep.details["c"])

    def test_superset(self):
        rep = verify_order_correspondence(SORG, K(0, "1/2"), K(0), 10)
        assert rep.passed
        assert rep.details["chain_leq"] != "Established"
        assert not rep.details["b"] and not rep.details["c"]
        assert rep.details["hausdorff"] == 1  # d(1/2, 0) = 1

    def test_shallow_depth_can_disagree(self):
        rep = verify_order_correspondence(SORG, K("1/2"), K("9/16"), 2)
        assert rep.details["a"] and not rep.details["b"]
        assert not rep.passed and not rep.details["adequate_depth"]

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False))
    def test_property_at_adequate_depth(self, name, rng):
        space = SPACES[name][0]
        pts = gen.pool(space, rng, 4)
        A = FinitePoints(pts[: rng.randint(1, 4)])
        Bs = FinitePoints(rng.sample(pts, rng.randint(1, 4)))
        h = hd_compact(space, A, Bs)
        depth = 3 if h == 0 else math.floor(1 / h) + 2
        rep = verify_order_correspondence(space, A, Bs, depth)
        assert rep.details["adequate_depth"] and rep.passed

    def test_depth_one_is_inadequate(self):
        rep = verify_order_correspondence(SORG, K(0), K(0), 1)
        assert rep.details["chain_leq"] == "Unknown" and not rep.details["adequate_depth"]

    def test_oracle_rejected(self):
        with pytest.raises(PreconditionError):
            verify_order_correspondence(SORG, convergent_sequence(0, 1), K(0), 3)


class TestRecovery:
    def test_examples(self):
        assert recover_compact(SORG, K(0), PointSet([Fr(0), Fr(1, 2), Fr(1)]), 10).passed
        U = PointSet([Fr(0), Fr(1, 3), Fr(1)])
        for depth in (1, 4):
            assert recover_compact(SORG, FinitePoints(U), U, depth).passed

    def test_depth_insufficient(self):
        U = PointSet([Fr(0), Fr(1, 100)])
        rep = recover_compact(SORG, K(0), U, 10)
        assert not rep.passed and rep.details["depth_insufficient"] and rep.details["extra"] == [Fr(1, 100)]
        assert not recover_compact(SORG, K(0), U, 100).passed
        assert recover_compact(SORG, K(0), U, 101).passed

    def test_universe_must_contain_K(self):
        with pytest.raises(PreconditionError):
            recover_compact(SORG, K(0, 1), PointSet([Fr(0)]), 3)

    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False))
    def test_injectivity_evidence(self, name, rng):
        space = SPACES[name][0]
        a, b = gen.pool(space, rng, 3), gen.pool(space, rng, 3)
        A, Bs = FinitePoints(a), FinitePoints(b)
        universe = PointSet(a + b)
        d = distance_for(space)
        outside = [(k, y) for k in A.points for y in universe if y not in A.points]
        gaps = [d(k, y) for k, y in outside]
        depth = math.floor(1 / min(gaps)) + 1 if gaps else 1
        found = iplus_points(space, phi(space, A, depth), universe)
        assert found == A.points.points
        if A != Bs:
            assert found != Bs.points.points


class TestVietoris:
    def test_diamond(self):
        assert vietoris_diamond_member(SORG, K(0, 1), Fr(0), Fr(1, 2))
        assert vietoris_diamond_member(SORG, K("1/3", "2/3"), Fr(1, 3), Fr(100))
        assert not vietoris_diamond_member(SORG, K(1), Fr(0), Fr(1, 2))
        with pytest.raises(PreconditionError):
            vietoris_diamond_member(SORG, K(1), Fr(0), Fr(0))

    def test_box(self):
        assert vietoris_box_member(SORG, K(0, 1), [(Fr(0), Fr(1, 2)), (Fr(1), Fr(1, 2))])
        assert vietoris_box_member(SORG, K(0, "1/2"), [(Fr(0), Fr(2))])
        assert not vietoris_box_member(SORG, K(0, 1), [(Fr(0), Fr(1, 2))])
        with pytest.raises(PreconditionError):
            vietoris_box_member(SORG, K(0), [])


class TestEmbeddingEvidence:
    @given(st.sampled_from(sorted(SPACES)), st.randoms(use_true_random=False), st.integers(1, 6))
    def test_shift_chain_way_below_nearby_sets(self, name, rng, N):
        space = SPACES[name][0]
        A = FinitePoints(gen.pool(space, rng, 3))
        C = phi(space, A, N + 1)
        F, F_next = C.sets[N - 1], C.sets[N]
        delta = gap(space, F, F_next)
        # radii decrease towards delta/2, so the shift chain is itself ascending
        shifts = certify(space, [shift(F_next, delta / 2 + delta / (2 * k)) for k in range(1, 6)])
        for L in (A, FinitePoints(gen.pool(space, rng, 3))):
            if hd_compact(space, A, L) < delta / 2:
                v = way_below_at_depth(space, shifts, phi(space, L, 4 * (N + 1)))
                assert v is TriState.ESTABLISHED


class TestNetOracle:
    def test_harmonic_representation(self):
        H = convergent_sequence(0, 1)
        C = phi(SORG, H, 4)
        assert C.certified and C.vanishing
        top = C.sets[-1]
        assert top.max_radius == Fr(1, 4) and len(top) == 34  # {0} and 1/m for m <= 33

    def test_isometry_with_oracles(self):
        H, half = convergent_sequence(0, 1), convergent_sequence(Fr(1, 2), Fr(1, 2))
        rep = verify_isometry(SORG, H, half, 6)
        assert rep.passed and rep.details["net_resolution"] == Fr(1, 72)
        assert verify_isometry(SORG, H, H, 5).passed
        assert verify_isometry(SORG, H, K(0), 5).passed

    def test_contract_violation(self):
        bad = NetOracle("bad", lambda eps: PointSet([Fr(1)]), PointSet([Fr(0), Fr(1)]))
        with pytest.raises(OracleContractError):
            phi(SORG, bad, 2)

    def test_json(self):
        H = compact_from_json(SORG, {"oracle": "builtin:harmonic", "sample": ["0", "1/3"]})
        assert isinstance(H, NetOracle) and list(H.sample) == [Fr(0), Fr(1, 3)]
        assert compact_from_json(SORG, {"finite": ["0", "1/2"]}) == K(0, "1/2")
        assert compact_from_json(SORG, ["0"]) == K(0)
        assert compact_to_json(SORG, K(0, "1/2")) == {"finite": ["0", "1/2"]}
        with pytest.raises(DefinitionError):
            compact_from_json(SORG, {"oracle": "builtin:nope"})
        with pytest.raises(DefinitionError):
            compact_from_json(WORDS, {"oracle": "builtin:harmonic"})
        with pytest.raises(DefinitionError):
            compact_from_json(SORG, {"oracle": "file:x"})
        with pytest.raises(DefinitionError):
            compact_from_json(SORG, {"points": []})
