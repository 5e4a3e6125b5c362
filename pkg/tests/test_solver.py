"""Lattice search tests.

The brute-force criterion search is the ground truth here.  On the pi/4
lattice it recovers every discrete tuple of the named families B-E with the
documented cardinalities, and additionally finds mixed-grid tuples (one
player phase pair on the quarter grid, the other on the half grid) that are
strictly closed under the parameter bijection modulo a global sign.  Those
hits are genuine solutions of the invariance criterion; they fall outside
the named families and are reported as UNCLASSIFIED.  Every hit is
independently validated end to end in test_unclassified_hits_are_genuine.
"""

from fractions import Fraction

import pytest

from ewlext import (
    ExactnessError,
    IDENTITY,
    IX,
    LatticeSpec,
    canonicalize,
    check_relations,
    criterion_holds,
    enumerate_discrete_solutions,
    search_solutions,
    verify_invariance_end_to_end,
)
from ewlext.solver import UNCLASSIFIED, classify_tuple
from conftest import random_rational_game

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def result_half_pi():
    return search_solutions(LatticeSpec.create(["1/2 pi"]))


@pytest.fixture(scope="module")
def result_third_pi():
    return search_solutions(LatticeSpec.create(["1/3 pi"]))


def _phase_tuples(result, label_prefix):
    return {
        (s.alpha1, s.beta1, s.alpha2, s.beta2)
        for s in result.solutions
        if s.label.startswith(label_prefix)
    }


def test_half_pi_recovers_named_families(result_half_pi):
    counts = result_half_pi.family_counts()
    assert counts["B"] == 64
    assert counts["C"] == 64
    assert counts["D"] == 32
    assert counts["E"] == 32
    assert _phase_tuples(result_half_pi, "B") == set(enumerate_discrete_solutions("B"))
    assert _phase_tuples(result_half_pi, "C") == set(enumerate_discrete_solutions("C"))
    assert _phase_tuples(result_half_pi, "D") == set(enumerate_discrete_solutions("D"))
    assert _phase_tuples(result_half_pi, "E") == set(enumerate_discrete_solutions("E"))


def test_third_pi_recovers_named_families(result_third_pi):
    counts = result_third_pi.family_counts()
    assert counts.get("B", 0) == 0  # B needs theta1 = pi/2
    assert counts["C"] == 64
    assert counts["D"] == 32
    assert counts["E"] == 32
    assert _phase_tuples(result_third_pi, "C") == set(enumerate_discrete_solutions("C"))


def test_unclassified_hits_are_genuine(result_third_pi, rng):
    # every extra hit must itself pass the end-to-end invariance check;
    # at interior generic theta they are exactly the mixed-grid tuples
    # strictly closed under the bijection modulo a global sign: one of
    # (alpha1, beta1) on the half-pi grid, the other on the odd-quarter
    # grid, and (alpha2, beta2) = (-beta1, pi - alpha1) up to a joint
    # pi-shift of both phases
    unc = [s for s in result_third_pi.solutions if s.label == UNCLASSIFIED]
    assert len(unc) == 64
    game = random_rational_game(rng)
    for s in unc:
        grids = sorted(v.denominator for v in (s.alpha1, s.beta1))
        assert grids == [1, 4] or grids == [2, 4]
        want = ((2 - s.beta1) % 2, (1 - s.alpha1) % 2)
        got = (s.alpha2, s.beta2)
        shifted = ((got[0] + 1) % 2, (got[1] + 1) % 2)
        assert want in (got, shifted)
    for s in rng.sample(unc, 8):
        u1 = canonicalize(s.theta1, s.alpha1, s.beta1)
        u2 = canonicalize(Fraction(2, 3), s.alpha2, s.beta2)
        rep = verify_invariance_end_to_end(game, [IDENTITY, IX, u1, u2])
        assert rep.all_isomorphic


def test_half_pi_extra_hits_are_genuine(result_half_pi, rng):
    # at theta = pi/2 there are 64 mixed-grid tuples as at generic theta,
    # plus 32 split-grid tuples whose images close on themselves: the full
    # products {0,pi}^2 x {pi/2,3pi/2}^2 and its mirror, with no cross
    # congruence between the players' phases
    unc = [s for s in result_half_pi.solutions if s.label == UNCLASSIFIED]
    assert len(unc) == 96
    split = {(s.alpha1, s.beta1, s.alpha2, s.beta2) for s in unc
             if all(v.denominator <= 2 for v in
                    (s.alpha1, s.beta1, s.alpha2, s.beta2))}
    p0 = (Fraction(0), Fraction(1))
    p12 = (HALF, 3 * HALF)
    want = {(a1, b1, a2, b2) for a1 in p0 for b1 in p0 for a2 in p12 for b2 in p12}
    want |= {(a1, b1, a2, b2) for a1 in p12 for b1 in p12 for a2 in p0 for b2 in p0}
    assert split == want
    game = random_rational_game(rng)
    for s in rng.sample(unc, 8):
        u1 = canonicalize(s.theta1, s.alpha1, s.beta1)
        u2 = canonicalize(HALF, s.alpha2, s.beta2)
        rep = verify_invariance_end_to_end(game, [IDENTITY, IX, u1, u2])
        assert rep.all_isomorphic


def test_quarter_grid_difference_cases_2_and_3_empty(result_half_pi):
    # within the all-quarter-grid category, the two mixed difference
    # scenarios (one difference = 0 mod pi, the other = pi/2 mod pi)
    # contribute no solutions
    for s in result_half_pi.solutions:
        phases = (s.alpha1, s.beta1, s.alpha2, s.beta2)
        if all(v.denominator == 4 for v in phases):
            d1 = (s.alpha2 - s.beta1) % 1    # 0 for case n*pi, 1/2 otherwise
            d2 = (s.alpha1 - s.beta2) % 1
            assert d1 == d2


def test_no_solutions_off_the_complementary_theta_surface():
    # theta2 = pi - theta1 is necessary: an equal-theta sweep finds nothing
    th = Fraction(1, 3)
    for a1 in range(8):
        for b1 in range(8):
            u1 = canonicalize(th, Fraction(a1, 4), Fraction(b1, 4))
            for a2 in range(8):
                for b2 in range(8):
                    u2 = canonicalize(th, Fraction(a2, 4), Fraction(b2, 4))
                    assert not criterion_holds([IDENTITY, IX, u1, u2]).holds


def test_theta_zero_slice_matches_congruence():
    result = search_solutions(LatticeSpec.create([0]))
    assert result.family_counts() == {"A": 1024}
    for s in result.solutions:
        assert s.label == "A1"
        assert (s.alpha1 + s.beta2) % 1 == 0
    # alpha2 and beta1 are unconstrained: all 64 combinations appear
    free = {(s.alpha2, s.beta1) for s in result.solutions}
    assert len(free) == 64


def test_theta_pi_slice_mirrors_theta_zero():
    result = search_solutions(LatticeSpec.create(["pi"]))
    assert result.family_counts() == {"A": 1024}
    for s in result.solutions:
        assert s.label == "A2"
        assert (s.alpha2 + s.beta1) % 1 == 0


def test_classify_tuple_examples():
    q = Fraction(1, 4)
    half_pi = canonicalize(HALF, 0, 0).theta
    third_pi = canonicalize(Fraction(1, 3), 0, 0).theta
    zero = canonicalize(0, 0, 0).theta
    assert classify_tuple(half_pi, q, q, q, q) == "B"
    assert classify_tuple(half_pi, q, q, 3 * q, 3 * q) == "C"
    assert classify_tuple(third_pi, q, q, q, q) == UNCLASSIFIED  # B needs pi/2
    assert classify_tuple(third_pi, Fraction(0), Fraction(0), Fraction(0),
                          Fraction(0)) == "D1"
    assert classify_tuple(third_pi, HALF, HALF, HALF, HALF) == "D2"
    assert classify_tuple(third_pi, Fraction(0), HALF, HALF, Fraction(0)) == "E1"
    assert classify_tuple(zero, q, 3 * q, HALF, 7 * q) == "A1"
    assert classify_tuple(zero, q, 3 * q, HALF, HALF) == UNCLASSIFIED


def test_exact_mode_rejects_eighth_step():
    spec = LatticeSpec.create(["1/2 pi"], "1/8")
    with pytest.raises(ExactnessError):
        search_solutions(spec, mode="exact")


def test_eighth_step_float_probe():
    # tiny probe of the stress lattice: restrict to one theta, then check
    # that the pi/4 sub-lattice solutions are all recovered
    spec = LatticeSpec.create(["1/2 pi"], "1/8")
    res = search_solutions(spec, mode="float")
    sub = {
        (s.alpha1, s.beta1, s.alpha2, s.beta2)
        for s in res.solutions
        if all(v.denominator <= 4 for v in (s.alpha1, s.beta1, s.alpha2, s.beta2))
    }
    assert set(enumerate_discrete_solutions("B")) <= sub
    assert set(enumerate_discrete_solutions("C")) <= sub


def test_check_relations_b_tuple():
    rels = check_relations("1/2 pi", "1/4 pi", "1/4 pi", "1/4 pi", "1/4 pi")
    assert all(r.satisfied for r in rels)
    assert len(rels) == 5


def test_check_relations_violation():
    rels = check_relations("1/2 pi", "1/4 pi", "0", "0", "1/4 pi")
    by_name = {r.name: r for r in rels}
    assert not by_name["sin(2*(alpha1 - beta1)) = 0"].satisfied
    assert by_name["sin(2*(alpha1 - beta1)) = 0"].lhs == pytest.approx(1.0)


def test_check_relations_boundary_degenerates():
    rels = check_relations("0", "1/4 pi", "0", "0", "3/4 pi")
    assert len(rels) == 2  # only the residual sin(2x) chain remains
    assert all(r.satisfied for r in rels)
    rels = check_relations("0", "1/4 pi", "0", "0", "1/4 pi")
    assert not all(r.satisfied for r in rels)


def test_csv_output_shape(result_third_pi):
    csv = result_third_pi.to_csv()
    lines = csv.strip().splitlines()
    assert lines[0] == "theta1,alpha1,beta1,alpha2,beta2,class"
    assert len(lines) == 1 + len(result_third_pi.solutions)
    assert lines[1].startswith("1/3 pi,")
