import math
from fractions import Fraction

import pytest

from rank2ex.crab import CRAB_LINES, G2, crab_lines_of, is_in_crab, to_plane
from rank2ex.falsify import LEMMAS, MUTATIONS, UnknownLemma, falsify, mutation_outcome, region
from rank2ex.root_system import Weight, norm_sq

HOLDING = ("pts20", "lmp", "plusrho", "crabdiff", "dichotomy", "baa", "aab", "mirrorfc", "aba", "triplet")


@pytest.mark.parametrize("lemma", HOLDING)
def test_no_counterexample(lemma):
    res = falsify(lemma)
    assert res.counterexample is None, res.to_dict()


def test_unknown_lemma():
    with pytest.raises(UnknownLemma):
        falsify("nope")


def test_bad_radius():
    with pytest.raises(ValueError):
        falsify("lmp", radius_sq=0)


def test_lmp_distance_bound():
    res = falsify("lmp")
    assert res.instances_checked > 0
    assert Fraction(res.details["max_same_line_distance_sq"]) == 27


def test_dichotomy_instances():
    res = falsify("dichotomy")
    assert res.instances_checked > 10000
    assert Fraction(res.details["max_off_line_dist_sq_branch1"]) <= 108


def test_baa_recorded_bound():
    res = falsify("baa")
    assert res.holds
    assert Fraction(res.details["max_dist_sq"]) <= 1764
    # the finer "within 21.1" bound fails at this radius; the witness is recorded
    assert res.details["beyond_21_1"] > 0
    b, a1, a2 = (Weight(*w) for w in res.details["first_beyond_21_1"])
    assert all(_exc(x, y) for x, y in ((0, b), (0, a1), (0, a2), (b, a1), (b, a2), (a1, a2)))
    assert crab_lines_of(a1) & crab_lines_of(a2)
    assert max(norm_sq(G2, w + (1, 1)) for w in (b, a1, a2)) > Fraction(211, 10) ** 2


def _exc(x, y):
    from rank2ex.exceptional import ext_vanishes
    x = (0, 0) if x == 0 else x
    return ext_vanishes(G2, x, y)


def test_mirrorfc_excludes_minus_rho():
    res = falsify("mirrorfc")
    assert res.details["excluded_neg_rho"] == 1


def test_trig_counterexample_rechecks():
    res = falsify("trig")
    assert res.counterexample is not None
    x, y = res.counterexample
    # independent floating-point check in the Euclidean picture
    px, py = to_plane(x), to_plane(y)
    c = to_plane((-1, -1))
    r = min(math.dist(px, c), math.dist(py, c))
    assert math.dist(px, py) < 2 * (2 - math.sqrt(3)) * r
    assert not (crab_lines_of(x) & crab_lines_of(y))
    # the sharp bound 2 sin(15 deg) R is respected by every scanned pair
    assert math.dist(px, py) >= 2 * math.sin(math.radians(15)) * r
    assert res.details["different_lines_within_sine_bound"] == 0


@pytest.mark.parametrize("lemma", list(LEMMAS))
def test_mutation_witness_or_inconclusive(lemma):
    res = falsify(lemma, mutated=True)
    assert res.mutation == MUTATIONS[lemma]
    outcome = "witness" if res.counterexample is not None else "inconclusive"
    assert outcome in ("witness", "inconclusive")
    if lemma in ("pts20", "lmp", "dichotomy", "aba", "triplet"):
        assert outcome == "witness"


def test_mutation_outcome_helper():
    assert mutation_outcome("lmp") == "witness"


def test_hypotheses_not_vacuous():
    for lemma in ("pts20", "lmp", "crabdiff", "dichotomy", "baa", "aab", "mirrorfc", "aba", "triplet"):
        assert falsify(lemma).instances_checked > 0, lemma


def test_plusrho_hypothesis_empty_in_region():
    # l and l + rho both in the crab only for the mirror 20 weights, all within 3 sqrt 3 of -rho
    res = falsify("plusrho")
    assert res.instances_checked == 0
    assert res.details["pairs_in_crab"] == 20


def test_parallel_matches_sequential():
    for lemma in ("lmp", "baa", "trig"):
        a = falsify(lemma, radius_sq=1600).to_dict(deterministic=True)
        b = falsify(lemma, radius_sq=1600, jobs=2).to_dict(deterministic=True)
        assert a == b


def test_region_contents():
    reg = region(Fraction(400))
    for p in reg.pts:
        assert is_in_crab(p) and norm_sq(G2, p + (1, 1)) <= 400
    for i, p in enumerate(reg.pts):
        assert reg.lines[i] == frozenset(k for k, l in enumerate(CRAB_LINES) if l.contains(p))
