"""Rank-2 root systems in fundamental-weight coordinates.

A weight ``(a, b)`` means ``a*w1 + b*w2``. The Gram matrix of the fundamental
weights carries every metric fact, so no Euclidean coordinates are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, NamedTuple, Sequence, Tuple

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

KINDS = ("a2", "a1xa1", "b2", "g2")


class Weight(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return Weight(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return Weight(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return Weight(-self.a, -self.b)

    def __mul__(self, k):  # type: ignore[override]
        return Weight(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __repr__(self):
        return f"({self.a},{self.b})"


RHO = Weight(1, 1)
ZERO = Weight(0, 0)

# row i = simple root alpha_i in w-coordinates
_CARTAN_ROWS = {
    "a2": ((2, -1), (-1, 2)),
    "a1xa1": ((2, 0), (0, 2)),
    "b2": ((2, -1), (-2, 2)),
    "g2": ((2, -1), (-3, 2)),
}

_GRAM = {
    "a2": ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3))),
    "a1xa1": ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2))),
    "b2": ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))),
    "g2": ((Fraction(1), Fraction(3, 2)), (Fraction(3, 2), Fraction(3))),
}

# coroot functionals (u, v) with alpha^vee(a, b) = u*a + v*b, in the order roots are listed
_COROOTS = {
    "a2": ((1, 0), (0, 1), (1, 1)),
    "a1xa1": ((1, 0), (0, 1)),
    "b2": ((1, 0), (0, 1), (1, 2), (1, 1)),
    "g2": ((1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)),
}

_NAMES = {"a2": "A2", "a1xa1": "A1xA1", "b2": "B2", "g2": "G2"}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    word: Tuple[int, ...]
    matrix: Matrix
    kind: str = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        return "[" + ", ".join(map(str, self.word)) + "]"


@dataclass(frozen=True)
class RootSystemData:
    kind: str
    cartan_rows: Matrix
    positive_roots: Tuple[Weight, ...]
    coroot_functionals: Tuple[Tuple[int, int], ...]
    gram: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    rho: Weight = RHO

    @property
    def name(self) -> str:
        return _NAMES[self.kind]

    @property
    def simple_roots(self) -> Tuple[Weight, Weight]:
        return Weight(*self.cartan_rows[0]), Weight(*self.cartan_rows[1])

    def coroot(self, root_index: int, lam) -> int:
        u, v = self.coroot_functionals[root_index]
        return u * lam[0] + v * lam[1]

    def inner(self, x, y) -> Fraction:
        g = self.gram
        return (x[0] * y[0] * g[0][0] + (x[0] * y[1] + x[1] * y[0]) * g[0][1]
                + x[1] * y[1] * g[1][1])

    def to_dict(self) -> dict:
        return {
            "type": self.kind,
            "cartan_rows": [list(r) for r in self.cartan_rows],
            "positive_roots": [list(r) for r in self.positive_roots],
            "coroot_functionals": [list(f) for f in self.coroot_functionals],
            "gram": [[str(x) for x in row] for row in self.gram],
            "rho": list(self.rho),
            "weyl_group": [list(w.word) for w in weyl_group(self)],
        }


def _positive_roots(kind: str) -> Tuple[Weight, ...]:
    """Close the simple roots under simple reflections; keep the positive ones
    (nonnegative simple-root coefficients), listed to match the coroot table."""
    rows = _CARTAN_ROWS[kind]
    a1, a2 = Weight(*rows[0]), Weight(*rows[1])
    roots = {a1, a2}
    frontier = [a1, a2]
    while frontier:
        nxt = []
        for r in frontier:
            for i, alpha in ((0, a1), (1, a2)):
                s = r - alpha * r[i]
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    # simple-root coefficients: solve r = m*a1 + n*a2
    det = a1[0] * a2[1] - a1[1] * a2[0]
    positive = []
    for r in roots:
        m = Fraction(r[0] * a2[1] - r[1] * a2[0], det)
        n = Fraction(a1[0] * r[1] - a1[1] * r[0], det)
        if m >= 0 and n >= 0:
            positive.append(r)
    gram = _GRAM[kind]

    def functional(r):
        rr = _inner(gram, r, r)
        return tuple(int(2 * _inner(gram, r, e) / rr) for e in ((1, 0), (0, 1)))

    by_functional = {functional(r): r for r in positive}
    return tuple(by_functional[f] for f in _COROOTS[kind])


def _inner(g, x, y) -> Fraction:
    return x[0] * y[0] * g[0][0] + (x[0] * y[1] + x[1] * y[0]) * g[0][1] + x[1] * y[1] * g[1][1]


@lru_cache(maxsize=None)
def build(kind: str) -> RootSystemData:
    kind = kind.lower()
    if kind not in _CARTAN_ROWS:
        raise RootSystemError(f"unsupported root system type {kind!r}; expected one of {', '.join(KINDS)}")
    rs = RootSystemData(
        kind=kind,
        cartan_rows=_CARTAN_ROWS[kind],
        positive_roots=_positive_roots(kind),
        coroot_functionals=_COROOTS[kind],
        gram=_GRAM[kind],
    )
    _self_check(rs)
    return rs


def _self_check(rs: RootSystemData) -> None:
    for i in range(2):
        for j in range(2):
            # alpha_i^vee(w_j) = delta_ij
            assert rs.coroot_functionals[i][j] == (i == j)
    for k, alpha in enumerate(rs.positive_roots):
        aa = rs.inner(alpha, alpha)
        for lam in product(range(-3, 4), repeat=2):
            val = 2 * rs.inner(alpha, lam) / aa
            assert val.denominator == 1 and val == rs.coroot(k, lam), (rs.kind, alpha, lam)


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


IDENTITY: Matrix = ((1, 0), (0, 1))


def simple_reflection_matrix(rs: RootSystemData, i: int) -> Matrix:
    """Matrix of s_i on column vectors (a, b); s_i(l) = l - l_i * alpha_i."""
    alpha = rs.cartan_rows[i - 1]
    cols = []
    for j in range(2):
        e = [0, 0]
        e[j] = 1
        coeff = e[i - 1]
        cols.append((e[0] - coeff * alpha[0], e[1] - coeff * alpha[1]))
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def word_matrix(rs: RootSystemData, word: Sequence[int]) -> Matrix:
    m = IDENTITY
    for i in word:
        m = _matmul(m, simple_reflection_matrix(rs, i))
    return m


def _order_key(word: Tuple[int, ...]):
    # matches the bracket lists [], [1], [2], [2,1], [1,2], [1,2,1], ...
    return (len(word), tuple(reversed(word)))


@lru_cache(maxsize=None)
def _weyl(kind: str) -> Tuple[WeylElement, ...]:
    rs = build(kind)
    seen: Dict[Matrix, Tuple[int, ...]] = {IDENTITY: ()}
    length = 0
    while True:
        length += 1
        new = False
        for word in product((1, 2), repeat=length):
            m = word_matrix(rs, word)
            if m not in seen:
                seen[m] = word
                new = True
        if not new:
            break
    elems = [WeylElement(word, m, kind) for m, word in seen.items()]
    elems.sort(key=lambda w: _order_key(w.word))
    return tuple(elems)


def weyl_group(rs: RootSystemData) -> List[WeylElement]:
    """All Weyl group elements with lexicographically least reduced words,
    in the order of the bracket lists ([], [1], [2], [2,1], [1,2], ...)."""
    return list(_weyl(rs.kind))


@lru_cache(maxsize=None)
def _length_table(kind: str) -> Dict[Matrix, int]:
    return {w.matrix: w.length for w in _weyl(kind)}


def element(rs: RootSystemData, word: Sequence[int]) -> WeylElement:
    """The Weyl element s_{i1}...s_{ik}, returned with its canonical word."""
    m = word_matrix(rs, word)
    for w in _weyl(rs.kind):
        if w.matrix == m:
            return w
    raise RootSystemError(f"word {list(word)} does not lie in W({rs.name})")  # pragma: no cover


def longest_element(rs: RootSystemData) -> WeylElement:
    return max(_weyl(rs.kind), key=lambda w: w.length)


def reflect(rs: RootSystemData, i: int, lam) -> Weight:
    if i not in (1, 2):
        raise RootSystemError(f"generator index must be 1 or 2, got {i}")
    alpha = rs.cartan_rows[i - 1]
    c = lam[i - 1]
    return Weight(lam[0] - c * alpha[0], lam[1] - c * alpha[1])


def apply(w: WeylElement, lam) -> Weight:
    m = w.matrix
    return Weight(m[0][0] * lam[0] + m[0][1] * lam[1], m[1][0] * lam[0] + m[1][1] * lam[1])


def inverse(w: WeylElement) -> WeylElement:
    (p, q), (r, s) = w.matrix
    det = p * s - q * r
    inv = ((s * det, -q * det), (-r * det, p * det))
    for x in _weyl(w.kind):
        if x.matrix == inv:
            return x
    raise RootSystemError("inverse not found")  # pragma: no cover


def is_singular(rs: RootSystemData, lam) -> bool:
    a, b = lam
    for u, v in rs.coroot_functionals:
        if u * a + v * b == 0:
            return True
    return False


def is_dominant(rs: RootSystemData, lam) -> bool:
    return lam[0] >= 0 and lam[1] >= 0


def norm_sq(rs: RootSystemData, lam) -> Fraction:
    return rs.inner(lam, lam)


def left_weak_leq(w: WeylElement, w2: WeylElement) -> bool:
    """w <= w2 in left weak order: w2 = u*w with l(u) + l(w) = l(w2)."""
    if w.kind != w2.kind:
        raise RootSystemError(f"elements from different root systems ({w.kind}, {w2.kind})")
    u = _matmul(w2.matrix, inverse(w).matrix)
    return _length_table(w.kind)[u] == w2.length - w.length
