"""Exact arithmetic: rationals, numbers of the form a + b*sqrt(q), Laurent polynomials.

Rationals are plain :class:`fractions.Fraction` values. Nothing in this module
touches floating point; square roots are never taken, only compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]

Exponent = Tuple[int, int]


def _sign(x: Number) -> int:
    return (x > 0) - (x < 0)


@total_ordering
@dataclass(frozen=True)
class QuadraticValue:
    """The real number ``a + b*sqrt(q)`` with rational ``a``, ``b`` and ``q >= 0``."""

    a: Fraction
    b: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q < 0:
            raise ValueError(f"radicand must be non-negative, got {self.q}")

    def sign(self) -> int:
        a, b, q = self.a, self.b, self.q
        if b == 0 or q == 0:
            return _sign(a)
        sa, sb = _sign(a), _sign(b)
        if sa >= 0 and sb >= 0:
            return 1
        if sa <= 0 and sb <= 0:
            return -1
        # opposite signs: compare a^2 with b^2 q
        d = a * a - b * b * q
        return sa * _sign(d)

    def squared(self) -> "QuadraticValue":
        return QuadraticValue(self.a * self.a + self.b * self.b * self.q, 2 * self.a * self.b, self.q)

    def _coerce(self, other) -> "QuadraticValue":
        if isinstance(other, QuadraticValue):
            if other.q != self.q and other.b != 0 and self.b != 0:
                raise ValueError("cannot combine values with different radicands")
            q = self.q if self.b != 0 else other.q
            return QuadraticValue(other.a, other.b, q)
        if isinstance(other, (int, Fraction)):
            return QuadraticValue(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        q = self.q if self.b != 0 else o.q
        return QuadraticValue(self.a + o.a, self.b + o.b, q)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticValue(self.a * other, self.b * other, self.q)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, (QuadraticValue, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __lt__(self, other):
        if not isinstance(other, (QuadraticValue, int, Fraction)):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        if self.b == 0 or self.q == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.q) ** 0.5

    def __str__(self):
        if self.b == 0 or self.q == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.q})"


def compare_rational_vs_quadratic(p: Number, t: QuadraticValue) -> int:
    """Sign of ``p - t``: -1 if p < t, 0 if equal, 1 if p > t."""
    return QuadraticValue(Fraction(p) - t.a, -t.b, t.q).sign()


class LaurentElement:
    """Sparse Laurent polynomial sum c * x^a * y^b with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[Tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, int] = {}
        for e, c in items:
            e = (int(e[0]), int(e[1]))
            acc[e] = acc.get(e, 0) + c
        self.terms: Dict[Exponent, int] = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, a: int, b: int, coeff: int = 1) -> "LaurentElement":
        return cls({(a, b): coeff})

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int]) -> "LaurentElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        """Sum of coefficients (every monomial sent to 1)."""
        return sum(self.terms.values())

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentElement._raw(out)

    def __neg__(self) -> "LaurentElement":
        return LaurentElement._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentElement") -> "LaurentElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentElement._raw({})
            return LaurentElement._raw({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentElement):
            return NotImplemented
        if len(other.terms) == 1:
            ((ea, eb), k), = other.terms.items()
            return LaurentElement._raw({(a + ea, b + eb): c * k for (a, b), c in self.terms.items()})
        if len(self.terms) == 1:
            return other * self
        out: Dict[Exponent, int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentElement._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def evaluate(self, x: Number, y: Number) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x**a * y**b for (a, b), c in self.terms.items()), Fraction(0))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentElement(0)"
        parts = [f"{c}*x^{a}*y^{b}" for (a, b), c in sorted(self.terms.items())]
        return "LaurentElement(" + " + ".join(parts) + ")"


def laurent_determinant(matrix: Sequence[Sequence[LaurentElement]]) -> LaurentElement:
    """Exact determinant by Laplace expansion along rows, memoised on column subsets.

    The minor on the last ``k`` rows and a given ``k``-subset of columns is
    computed once; there are ``2**n`` such minors. Entries that are single
    monomials (the common case for group-ring matrices) multiply by shifting.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return LaurentElement.monomial(0, 0)
    if n > 12:
        raise ValueError("laurent_determinant supports n <= 12")

    full = (1 << n) - 1
    # minors[mask] = det of rows [n - popcount(mask), n) x columns in mask
    minors: Dict[int, LaurentElement] = {0: LaurentElement.monomial(0, 0)}
    by_size = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        by_size[bin(mask).count("1")].append(mask)
    for k in range(1, n + 1):
        row = matrix[n - k]
        for mask in by_size[k]:
            acc: Dict[Exponent, int] = {}
            sign = 1
            # columns in increasing order; the sign alternates with position in the subset
            m = mask
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                entry = row[j]
                sub = minors.get(mask ^ low)
                if entry.terms and sub is not None and sub.terms:
                    _accumulate(acc, entry, sub, sign)
                sign = -sign
            minors[mask] = LaurentElement._raw({e: c for e, c in acc.items() if c})
        for mask in by_size[k - 1]:
            minors.pop(mask, None)
    return minors[full]


def _accumulate(acc: Dict[Exponent, int], entry: LaurentElement, sub: LaurentElement, sign: int) -> None:
    get = acc.get
    for (ea, eb), ec in entry.terms.items():
        k = sign * ec
        for (a, b), c in sub.terms.items():
            e = (a + ea, b + eb)
            acc[e] = get(e, 0) + k * c
