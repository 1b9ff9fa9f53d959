import math

from hypothesis import given
from hypothesis import strategies as st

from rank2ex.crab import (
    CRAB_LINES,
    FAR_SQ,
    G2,
    MIRROR_SINGULAR_LINES,
    NEG_RHO,
    SINGULAR_LINES,
    Proximity,
    classify,
    crab_lines_of,
    crab_points,
    euclidean_basis,
    is_in_crab,
    line_angle,
    mirror_twenty_weights,
    non_far_crab_weights,
    parallel,
    to_plane,
    twenty_weights,
)
from rank2ex.root_system import Weight, is_singular, norm_sq


def _box(r):
    return [Weight(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]


def test_membership_examples():
    assert is_in_crab((-1, -1))
    assert not is_in_crab((0, 0))
    assert is_in_crab((-1, 1))


def test_crab_lines_of_examples():
    assert len(crab_lines_of(NEG_RHO)) == 6
    assert crab_lines_of((0, 0)) == frozenset()
    (line,) = crab_lines_of((0, -2))
    assert line.label == "3a1+a2" and line.functional == (1, 1)


def test_six_lines_through_centres():
    assert len(CRAB_LINES) == 6
    assert all(line.contains(NEG_RHO) for line in CRAB_LINES)
    assert all(line.contains((0, 0)) for line in SINGULAR_LINES)
    assert all(line.contains((-2, -2)) for line in MIRROR_SINGULAR_LINES)
    assert next(l for l in SINGULAR_LINES if l.functional == (1, 0)).contains((0, -2))


def test_twenty_weights():
    tw = twenty_weights()
    assert len(tw) == 20
    assert Weight(0, -2) in tw
    assert NEG_RHO not in tw
    for lam in tw:
        assert is_in_crab(lam)
        assert norm_sq(G2, lam) <= 27
        assert norm_sq(G2, lam + (1, 1)) <= 27


def test_twenty_weights_box_oracle():
    scan = {p for p in _box(12) if is_singular(G2, p) and is_singular(G2, p + (1, 1))}
    assert scan == twenty_weights()


def test_mirror_twenty_box_oracle():
    mirror = mirror_twenty_weights()
    scan = {p for p in _box(12) if is_in_crab(p) and is_in_crab(p + (1, 1))}
    assert scan == mirror
    assert Weight(-1, -3) in mirror
    assert Weight(0, 0) not in mirror
    assert len(mirror) == 20


def test_mirror_is_reflection_of_twenty():
    # l -> -2rho - l swaps singular lines with mirror singular lines and fixes the crab
    assert {Weight(-2 - p.a, -2 - p.b) for p in twenty_weights()} == mirror_twenty_weights()


def test_classify_examples():
    assert classify(NEG_RHO) is Proximity.NEAR
    assert classify((30, 0)) is Proximity.NEAR
    assert norm_sq(G2, (51, 1)) == 2757
    assert classify((50, 0)) is Proximity.FAR


def test_middle_band_exists():
    mids = [p for p in crab_points(FAR_SQ) if classify(p) is Proximity.MIDDLE]
    assert mids
    assert all(1764 < norm_sq(G2, p + (1, 1)) for p in mids)


def test_non_far_count_and_members():
    pts = non_far_crab_weights()
    assert len(pts) == 445
    assert pts == sorted(pts)
    assert NEG_RHO in pts
    assert Weight(0, 0) not in pts


def test_non_far_box_oracle():
    scan = [p for p in _box(110) if is_in_crab(p) and classify(p) is not Proximity.FAR]
    assert sorted(scan) == non_far_crab_weights()


def test_reflection_through_minus_rho_preserves_crab():
    for lam in non_far_crab_weights():
        assert is_in_crab(Weight(-2 - lam.a, -2 - lam.b))


def test_per_line_counts_symmetric():
    counts = {}
    for line in CRAB_LINES:
        n = sum(1 for p in non_far_crab_weights() if line.contains(p))
        counts.setdefault(G2.inner(line.root, line.root), set()).add(n)
    # one count per root length
    assert all(len(v) == 1 for v in counts.values())
    assert sorted(c for v in counts.values() for c in v) == [55, 95]


def test_classify_monotone_along_lines():
    order = [Proximity.NEAR, Proximity.MIDDLE, Proximity.FAR]
    for line in CRAB_LINES:
        d = line.direction
        for sign in (1, -1):
            seen = [order.index(classify(NEG_RHO + d * (sign * t))) for t in range(0, 120)]
            assert seen == sorted(seen)


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_line_walk_matches_scan(a, b):
    # a point is reported by crab_points iff it is in the crab and close enough
    p = Weight(a, b)
    listed = p in set(crab_points(900))
    assert listed == (is_in_crab(p) and norm_sq(G2, p + (1, 1)) <= 900)


def test_parallel_families():
    for line in CRAB_LINES:
        assert parallel(line, SINGULAR_LINES).functional == line.functional
        assert parallel(line, MIRROR_SINGULAR_LINES).root == line.root


def test_euclidean_embedding():
    (x1, y1), (x2, y2) = euclidean_basis()
    for i in range(2):
        for j in range(2):
            e = [(x1, y1), (x2, y2)]
            assert math.isclose(e[i][0] * e[j][0] + e[i][1] * e[j][1], float(G2.gram[i][j]))
    ax, ay = to_plane(G2.simple_roots[0])
    assert ax > 0 and abs(ay) < 1e-12
    bx, by = to_plane(G2.simple_roots[1])
    assert math.isclose(bx, -1.5) and math.isclose(by, math.sqrt(3) / 2)


def test_line_angles():
    angles = sorted(line_angle(l) for l in CRAB_LINES)
    assert angles == [0.0, 30.0, 60.0, 90.0, 120.0, 150.0]
    assert line_angle(next(l for l in CRAB_LINES if l.functional == (1, 1))) == 120.0
