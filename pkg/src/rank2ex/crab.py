"""G2 crab geometry: crab lines, singular lines, the 20 weights and proximity classes.

The crab is the set of weights l with l + rho singular. For each positive root
alpha there are three parallel lines sharing the functional alpha^vee:

    singular line         alpha^vee(l) = 0
    crab line             alpha^vee(l + rho) = 0
    mirror singular line  alpha^vee(l + 2 rho) = 0
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterator, List, Tuple, Union

from .algebra import QuadraticValue, compare_rational_vs_quadratic
from .root_system import RHO, Weight, build, is_singular, norm_sq

G2 = build("g2")

NEG_RHO = Weight(-1, -1)

# thresholds on ||l + rho||^2
NEAR_SQ = Fraction(42 * 42)
FAR_SQ = QuadraticValue(1791, 252, 3)  # (42 + 3*sqrt(3))^2
TWENTY_NORM_SQ = 27  # (3*sqrt(3))^2

Bound = Union[int, Fraction, QuadraticValue]


class Proximity(enum.Enum):
    NEAR = "near"
    MIDDLE = "middle"
    FAR = "far"


def _within(value: Fraction, bound: Bound) -> bool:
    if isinstance(bound, QuadraticValue):
        return compare_rational_vs_quadratic(value, bound) <= 0
    return value <= bound


def root_label(root) -> str:
    """Root written in simple roots, e.g. '3a1+2a2'."""
    (p, q), (r, s) = G2.cartan_rows
    det = p * s - q * r
    m = (root[0] * s - root[1] * r) // det
    n = (p * root[1] - q * root[0]) // det
    parts = []
    for c, name in ((m, "a1"), (n, "a2")):
        if c:
            parts.append(name if c == 1 else f"{c}{name}")
    return "+".join(parts)


@dataclass(frozen=True)
class Line:
    """Lattice line {l : u*(l.a + s.a) + v*(l.b + s.b) = 0} attached to a positive root."""

    root: Weight
    functional: Tuple[int, int]
    shift: Weight

    @property
    def label(self) -> str:
        return root_label(self.root)

    def value(self, lam) -> int:
        u, v = self.functional
        return u * (lam[0] + self.shift[0]) + v * (lam[1] + self.shift[1])

    def contains(self, lam) -> bool:
        return self.value(lam) == 0

    @property
    def direction(self) -> Weight:
        u, v = self.functional
        g = math.gcd(u, v)
        return Weight(v // g, -u // g)

    def base_point(self) -> Weight:
        """Some lattice point on the line."""
        u, v = self.functional
        c = -(u * self.shift[0] + v * self.shift[1])
        g, x, y = _ext_gcd(u, v)
        assert c % g == 0
        return Weight(x * (c // g), y * (c // g))

    def points_within(self, center, bound: Bound) -> List[Weight]:
        """Lattice points l on the line with ||l - center||^2 <= bound, in order along the line."""
        p, d = self.base_point(), self.direction
        off = p - center
        # ||off + t d||^2 = A t^2 + B t + C
        A = norm_sq(G2, d)
        B = 2 * G2.inner(off, d)
        t0 = math.floor(-B / (2 * A))
        pts = []
        t = t0
        while _within(norm_sq(G2, off + d * t), bound):
            pts.append(p + d * t)
            t -= 1
        pts.reverse()
        t = t0 + 1
        while _within(norm_sq(G2, off + d * t), bound):
            pts.append(p + d * t)
            t += 1
        return pts

    def intersect(self, other: "Line"):
        """Intersection point as a pair of Fractions, or None for parallel lines."""
        u1, v1 = self.functional
        u2, v2 = other.functional
        det = u1 * v2 - u2 * v1
        if det == 0:
            return None
        c1 = -(u1 * self.shift[0] + v1 * self.shift[1])
        c2 = -(u2 * other.shift[0] + v2 * other.shift[1])
        return Fraction(c1 * v2 - c2 * v1, det), Fraction(u1 * c2 - u2 * c1, det)

    def __repr__(self):
        return f"Line({self.label}, shift={self.shift})"


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _lines(shift) -> Tuple[Line, ...]:
    return tuple(Line(root, f, Weight(*shift)) for root, f in zip(G2.positive_roots, G2.coroot_functionals))


CRAB_LINES = _lines(RHO)
SINGULAR_LINES = _lines((0, 0))
MIRROR_SINGULAR_LINES = _lines((2, 2))


def crab_lines() -> Tuple[Line, ...]:
    return CRAB_LINES


def singular_lines() -> Tuple[Line, ...]:
    return SINGULAR_LINES


def mirror_singular_lines() -> Tuple[Line, ...]:
    return MIRROR_SINGULAR_LINES


def parallel(line: Line, family: Tuple[Line, ...]) -> Line:
    return next(x for x in family if x.root == line.root)


def is_in_crab(lam) -> bool:
    return is_singular(G2, (lam[0] + 1, lam[1] + 1))


def crab_lines_of(lam) -> FrozenSet[Line]:
    return frozenset(line for line in CRAB_LINES if line.contains(lam))


def singular_lines_of(lam) -> FrozenSet[Line]:
    return frozenset(line for line in SINGULAR_LINES if line.contains(lam))


def _lattice_intersections(family_a, family_b) -> FrozenSet[Weight]:
    out = set()
    for la in family_a:
        for lb in family_b:
            p = la.intersect(lb)
            if p is not None and p[0].denominator == 1 and p[1].denominator == 1:
                out.add(Weight(int(p[0]), int(p[1])))
    return frozenset(out)


@lru_cache(maxsize=None)
def twenty_weights() -> FrozenSet[Weight]:
    """Lattice weights l with l and l + rho both singular."""
    return _lattice_intersections(SINGULAR_LINES, CRAB_LINES)


@lru_cache(maxsize=None)
def mirror_twenty_weights() -> FrozenSet[Weight]:
    """Lattice weights m with m and m + rho both in the crab."""
    # m + rho in the crab  <=>  m on a mirror singular line
    return _lattice_intersections(CRAB_LINES, MIRROR_SINGULAR_LINES)


def classify(lam) -> Proximity:
    n = norm_sq(G2, (lam[0] + 1, lam[1] + 1))
    if n <= NEAR_SQ:
        return Proximity.NEAR
    if compare_rational_vs_quadratic(n, FAR_SQ) > 0:
        return Proximity.FAR
    return Proximity.MIDDLE


def is_far(lam) -> bool:
    return classify(lam) is Proximity.FAR


def crab_points(bound: Bound) -> List[Weight]:
    """Crab weights with ||l + rho||^2 <= bound, sorted by (a, b)."""
    pts = set()
    for line in CRAB_LINES:
        pts.update(line.points_within(NEG_RHO, bound))
    return sorted(pts)


@lru_cache(maxsize=None)
def _non_far() -> Tuple[Weight, ...]:
    return tuple(crab_points(FAR_SQ))


def non_far_crab_weights() -> List[Weight]:
    return list(_non_far())


def line_points(bound: Bound, family: Tuple[Line, ...] = CRAB_LINES, center=NEG_RHO) -> Iterator[Tuple[Line, List[Weight]]]:
    for line in family:
        yield line, line.points_within(center, bound)


# Euclidean picture: alpha_1 along the x-axis, used only for drawing and angle reports.

def euclidean_basis() -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Images of w1, w2 in the plane, with alpha_1 = 2 w1 - w2 on the positive x-axis."""
    g = G2.gram
    a1 = G2.cartan_rows[0]
    len_a1 = math.sqrt(float(G2.inner(a1, a1)))
    # x-coordinate: (w_i, alpha_1)/|alpha_1|; y from |w_i|^2 - x^2, sign fixed by orientation
    x1 = float(G2.inner((1, 0), a1)) / len_a1
    x2 = float(G2.inner((0, 1), a1)) / len_a1
    y1 = math.sqrt(max(float(g[0][0]) - x1 * x1, 0.0))
    # (w1, w2) = x1 x2 + y1 y2
    y2 = (float(g[0][1]) - x1 * x2) / y1 if y1 else math.sqrt(float(g[1][1]) - x2 * x2)
    return (x1, y1), (x2, y2)


def to_plane(lam) -> Tuple[float, float]:
    (x1, y1), (x2, y2) = euclidean_basis()
    return lam[0] * x1 + lam[1] * x2, lam[0] * y1 + lam[1] * y2


def line_angle(line: Line) -> float:
    """Angle of the line's direction with the horizontal, in degrees within [0, 180)."""
    x, y = to_plane(line.direction)
    return round(math.degrees(math.atan2(y, x)), 9) % 180.0
