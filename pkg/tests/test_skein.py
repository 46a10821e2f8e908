import random
from fractions import Fraction

import pytest

from skeincluster.laurent import LaurentPoly, NotDivisibleError, parse_poly
from skeincluster.skein import (
    UNLINK_TWO,
    components_from_value,
    skein_solve_base,
    skein_step,
    torus_chain,
    verify_correspondence,
    verify_skein_chain,
    w_transform,
)


def tp(text):
    return parse_poly(text, ("t",))


ONE = LaurentPoly.one(1)
ZERO = LaurentPoly.zero(1)


def random_jones_like(rng, terms=4):
    out = {}
    for _ in range(rng.randint(0, terms)):
        out[(rng.randint(-8, 8),)] = rng.randint(-6, 6)
    return LaurentPoly(1, out)


class TestWTransform:
    def test_plus_scalar_on_unknot(self):
        assert w_transform(ONE, "plus") == tp("-t^(1/2)-t^(-1/2)")

    def test_base_scalar_on_unknot(self):
        assert w_transform(ONE, "base") == tp("t^2-1")

    def test_zero(self):
        for role in ("plus", "minus", "base"):
            assert w_transform(ZERO, role) == ZERO

    def test_linearity(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b = random_jones_like(rng), random_jones_like(rng)
            for role in ("plus", "minus", "base"):
                assert w_transform(a + b, role) == w_transform(a, role) + w_transform(b, role)

    def test_unknown_role(self):
        with pytest.raises(ValueError):
            w_transform(ONE, "sideways")


class TestSkeinStep:
    def test_hopf_from_unlink(self):
        assert skein_step(UNLINK_TWO, ONE) == tp("-t^(5/2)-t^(1/2)")

    def test_trefoil_from_hopf(self):
        assert skein_step(ONE, tp("-t^(5/2)-t^(1/2)")) == tp("-t^4+t^3+t")

    def test_zero(self):
        assert skein_step(ZERO, ZERO) == ZERO

    def test_matches_closed_form(self):
        # closed form derived by clearing -(t+1)/sqrt(t) from the W relation:
        # V_minus = t^2 V_plus + sqrt(t)(t-1) V_base
        rng = random.Random(5)
        t2 = tp("t^2")
        shift = tp("t^(3/2)-t^(1/2)")
        for _ in range(200):
            v_plus, v_base = random_jones_like(rng), random_jones_like(rng)
            assert skein_step(v_plus, v_base) == t2 * v_plus + shift * v_base

    def test_raw_relation_holds(self):
        # the original skein relation (1/t) V_minus - t V_plus = (sqrt(t)-1/sqrt(t)) V_base
        rng = random.Random(7)
        t_inv = tp("t^-1")
        t = tp("t")
        bridge = tp("t^(1/2)-t^(-1/2)")
        for _ in range(200):
            v_plus, v_base = random_jones_like(rng), random_jones_like(rng)
            v_minus = skein_step(v_plus, v_base)
            assert t_inv * v_minus - t * v_plus == bridge * v_base


class TestSkeinSolveBase:
    def test_two_unknots(self):
        assert skein_solve_base(ONE, ONE) == tp("-t^(1/2)-t^(-1/2)")

    def test_recovers_unknot_between_unlink_and_hopf(self):
        assert skein_solve_base(UNLINK_TWO, tp("-t^(5/2)-t^(1/2)")) == ONE

    def test_zero(self):
        assert skein_solve_base(ZERO, ZERO) == ZERO

    def test_round_trip(self):
        rng = random.Random(11)
        for _ in range(200):
            v_plus, v_base = random_jones_like(rng), random_jones_like(rng)
            assert skein_solve_base(v_plus, skein_step(v_plus, v_base)) == v_base

    def test_not_divisible_for_non_neighbours(self):
        with pytest.raises(NotDivisibleError):
            skein_solve_base(ONE, ZERO)


class TestTorusChain:
    def test_first_values(self):
        chain = torus_chain(4)
        assert chain[0] == tp("-t^(1/2)-t^(-1/2)")
        assert chain[1] == ONE
        assert chain[2] == tp("-t^(5/2)-t^(1/2)")
        assert chain[3] == tp("-t^4+t^3+t")
        assert chain[4] == tp("-t^(11/2)+t^(9/2)-t^(7/2)-t^(3/2)")

    def test_length(self):
        assert len(torus_chain(6)) == 7

    def test_evaluations_at_one(self):
        chain = torus_chain(20)
        for n in range(21):
            expected = Fraction(1) if n % 2 else Fraction(-2)
            if n == 0:
                expected = Fraction(-2)
            assert chain[n].evaluate([1]) == expected

    def test_component_counts(self):
        chain = torus_chain(20)
        for n in range(21):
            assert components_from_value(chain[n]) == (1 if n % 2 else 2)

    def test_bad_length(self):
        with pytest.raises(ValueError):
            torus_chain(0)


class TestVerification:
    def test_chain_identity_small(self):
        report = verify_skein_chain(2)
        assert report.passed
        assert [c.check_id for c in report.checks] == ["triple.n1", "triple.n2"]

    def test_chain_identity_to_ten(self):
        report = verify_skein_chain(10)
        assert report.passed
        assert len(report.checks) == 10

    def test_correspondence(self):
        report = verify_correspondence()
        assert report.passed
        ids = [c.check_id for c in report.checks]
        assert "map.t2-to-2x" in ids
        assert "substitution.doubled" in ids
