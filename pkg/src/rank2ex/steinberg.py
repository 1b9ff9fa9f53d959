"""Steinberg basis weights, basis substitutions in Z[Lambda], and K0 checks."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algebra import LaurentElement, laurent_determinant
from .root_system import (
    RHO,
    RootSystemData,
    Weight,
    WeylElement,
    apply,
    build,
    inverse,
    is_dominant,
    weyl_group,
)

log = logging.getLogger(__name__)

STEINBERG_BOX = 8


class SteinbergError(RuntimeError):
    pass


class SubstitutionError(ValueError):
    pass


class GroupRingElement:
    """Element of Z[Lambda]: a sparse map weight -> integer coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: Dict[Weight, int] = {}
        for w, c in items:
            w = Weight(*w)
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def exp(cls, lam) -> "GroupRingElement":
        return cls({Weight(*lam): 1})

    @classmethod
    def orbit_sum(cls, rs: RootSystemData, lam) -> "GroupRingElement":
        return cls({mu: 1 for mu in weyl_orbit(rs, lam)})

    def __add__(self, other):
        return GroupRingElement(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return GroupRingElement(list(self.terms.items()) + [(w, -c) for w, c in other.terms.items()])

    def __mul__(self, other):
        out: Dict[Weight, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def is_invariant(self, rs: RootSystemData) -> bool:
        for w in weyl_group(rs):
            moved = GroupRingElement({apply(w, lam): c for lam, c in self.terms.items()})
            if moved != self:
                return False
        return True

    def to_laurent(self) -> LaurentElement:
        return LaurentElement({(w.a, w.b): c for w, c in self.terms.items()})

    def __repr__(self):
        return " + ".join(f"{c}e^{w}" for w, c in sorted(self.terms.items())) or "0"


# -- Steinberg weights ------------------------------------------------------

def descent_roots(rs: RootSystemData, w: WeylElement) -> List[int]:
    """Indices of positive roots alpha with alpha^vee(w^{-1} rho) < 0."""
    mu = apply(inverse(w), RHO)
    return [k for k in range(len(rs.positive_roots)) if rs.coroot(k, mu) < 0]


def _in_cone(w: WeylElement, lam) -> bool:
    # lam in w^{-1} Lambda^+  <=>  w(lam) dominant
    x = apply(w, lam)
    return x[0] >= 0 and x[1] >= 0


def steinberg_weight(rs: RootSystemData, w: WeylElement, box: int = STEINBERG_BOX) -> Weight:
    """The vertex lambda_w of the shifted cone A_w, found by enumeration in a box."""
    desc = descent_roots(rs, w)
    region = [
        Weight(a, b)
        for a, b in product(range(-box, box + 1), repeat=2)
        if _in_cone(w, (a, b)) and all(rs.coroot(k, (a, b)) != 0 for k in desc)
    ]
    vertices = [m for m in region if all(_in_cone(w, mu - m) for mu in region)]
    if len(vertices) != 1:
        raise SteinbergError(f"box insufficient for {w!r} in {rs.name}: {len(vertices)} vertex candidates")
    m = vertices[0]
    winv = inverse(w)
    for omega in ((1, 0), (0, 1)):
        p = m + apply(winv, omega)
        if not (_in_cone(w, p) and all(rs.coroot(k, p) != 0 for k in desc)):
            raise SteinbergError(f"cone vertex check failed for {w!r} in {rs.name}")
    return m


def weyl_orbit(rs: RootSystemData, lam) -> FrozenSet[Weight]:
    return frozenset(apply(w, lam) for w in weyl_group(rs))


# -- basis states -------------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    remove: Weight
    add: Weight
    center: Weight
    orbit_of: Weight

    def to_dict(self) -> dict:
        return {"remove": list(self.remove), "add": list(self.add),
                "center": list(self.center), "orbit_of": list(self.orbit_of)}


@dataclass(frozen=True)
class BasisState:
    """Candidate basis {e^mu_w}: one weight per Weyl element, plus the substitution log."""

    elements: Tuple[WeylElement, ...]
    weights: Tuple[Weight, ...]
    log: Tuple[Substitution, ...] = ()

    def __post_init__(self):
        if len(self.elements) != len(self.weights):
            raise ValueError("one weight per Weyl element required")
        if len(set(self.weights)) != len(self.weights):
            raise ValueError("basis weights must be pairwise distinct")

    @property
    def weight_set(self) -> FrozenSet[Weight]:
        return frozenset(self.weights)

    def as_map(self) -> Dict[WeylElement, Weight]:
        return dict(zip(self.elements, self.weights))

    def reindexed(self, order: Sequence) -> "BasisState":
        """Same weights, reassigned to Weyl elements following ``order``."""
        order = tuple(Weight(*x) for x in order)
        if frozenset(order) != self.weight_set or len(order) != len(self.weights):
            raise ValueError("reindexing must permute the current weights")
        return BasisState(self.elements, order, self.log)

    def to_dict(self) -> dict:
        return {"weights": [list(x) for x in self.weights],
                "log": [s.to_dict() for s in self.log]}


def steinberg_basis(rs: RootSystemData) -> BasisState:
    elems = tuple(weyl_group(rs))
    return BasisState(elems, tuple(steinberg_weight(rs, w) for w in elems))


def mainproc_substitute(state: BasisState, lam, orbit: Iterable, remove, add,
                        orbit_of=None) -> BasisState:
    """Swap e^remove for e^add using the W-invariant orbit sum centred at lam.

    Valid when e^lam is in the basis, every lam + o (o in orbit) except add is
    in the basis, and add is not.
    """
    lam, remove, add = Weight(*lam), Weight(*remove), Weight(*add)
    orbit = frozenset(Weight(*o) for o in orbit)
    current = state.weight_set
    if len(orbit) < 2:
        raise SubstitutionError("orbit must have at least two elements")
    if lam not in current:
        raise SubstitutionError(f"centre {lam} is not a basis weight")
    shifted = {lam + o: o for o in orbit}
    if add not in shifted:
        raise SubstitutionError(f"{add} is not of the form {lam} + orbit element")
    if remove not in shifted:
        raise SubstitutionError(f"{remove} is not of the form {lam} + orbit element")
    if add in current:
        raise SubstitutionError(f"{add} is already in the basis")
    if remove == add:
        raise SubstitutionError("remove and add coincide")
    for s, o in shifted.items():
        if s != add and s not in current:
            raise SubstitutionError(f"orbit element {o}: {lam} + {o} = {s} is not in the basis")
    weights = tuple(add if x == remove else x for x in state.weights)
    if orbit_of is None:
        orbit_of = next(o for o in orbit if o[0] >= 0 and o[1] >= 0)
    entry = Substitution(remove, add, lam, Weight(*orbit_of))
    return BasisState(state.elements, weights, state.log + (entry,))


def _fundamental_orbits(rs: RootSystemData):
    return [(Weight(1, 0), weyl_orbit(rs, (1, 0))), (Weight(0, 1), weyl_orbit(rs, (0, 1)))]


def substitution_moves(rs: RootSystemData, weights: FrozenSet[Weight]):
    """All single substitutions available from a weight set, using orbits of w1, w2
    centred at basis weights. Yields (centre, orbit_of, orbit, remove, add)."""
    for omega, orbit in _fundamental_orbits(rs):
        for lam in sorted(weights):
            shifted = [lam + o for o in orbit]
            missing = [s for s in shifted if s not in weights]
            if len(missing) != 1:
                continue
            add = missing[0]
            for remove in sorted(shifted):
                if remove != add:
                    yield lam, omega, orbit, remove, add


def find_substitution_path(rs: RootSystemData, start: BasisState, target: Iterable,
                           max_depth: int = 6) -> BasisState:
    """Breadth-first search for a chain of substitutions reaching ``target``."""
    goal = frozenset(Weight(*x) for x in target)
    if start.weight_set == goal:
        return start
    parents: Dict[FrozenSet[Weight], Optional[tuple]] = {start.weight_set: None}
    queue = deque([(start.weight_set, 0)])
    found = None
    while queue and found is None:
        ws, depth = queue.popleft()
        if depth == max_depth:
            continue
        for lam, omega, orbit, remove, add in substitution_moves(rs, ws):
            nxt = (ws - {remove}) | {add}
            if nxt in parents:
                continue
            parents[nxt] = (ws, lam, omega, orbit, remove, add)
            if nxt == goal:
                found = nxt
                break
            queue.append((nxt, depth + 1))
    if found is None:
        raise SubstitutionError(f"no substitution chain of length <= {max_depth} reaches the target")
    steps = []
    node = found
    while parents[node] is not None:
        prev, *move = parents[node]
        steps.append(move)
        node = prev
    state = start
    for lam, omega, orbit, remove, add in reversed(steps):
        state = mainproc_substitute(state, lam, orbit, remove, add, orbit_of=omega)
    return state


# G2 script: (centre, orbit generator, remove, add)
G2_SCRIPT = (
    ((1, -1), (1, 0), (3, -2), (2, -2)),
    ((-2, 1), (1, 0), (-3, 2), (-4, 2)),
    ((-1, 0), (1, 0), (-2, 1), (-2, 0)),
    ((-1, 0), (0, 1), (-4, 2), (-4, 1)),
    ((-2, 0), (1, 0), (-4, 1), (-3, 0)),
)

B2_SCRIPT = (
    ((-1, 0), (1, 0), (-2, 1), (-2, 0)),
)


def run_script(rs: RootSystemData, state: BasisState, script) -> BasisState:
    for step, (lam, omega, remove, add) in enumerate(script, 1):
        try:
            state = mainproc_substitute(state, lam, weyl_orbit(rs, omega), remove, add, orbit_of=omega)
        except SubstitutionError as exc:
            raise SubstitutionError(f"step {step} ({remove} -> {add}): {exc}") from exc
    return state


def replay_paper_bases(rs: RootSystemData) -> Dict[str, BasisState]:
    """Derive the displayed collections for ``rs`` from its Steinberg basis.

    Keys are fixture names (``wb-a2``, ``tot-a2``, ...). Weak-Bruhat states are
    reindexed to the displayed order; the total-order states carry their list
    order in the same slots.
    """
    from .data import load_collection

    start = steinberg_basis(rs)
    out: Dict[str, BasisState] = {}
    if rs.kind == "a2":
        wb = load_collection("wb-a2").weights
        out["wb-a2"] = start.reindexed(wb)
        tot = find_substitution_path(rs, out["wb-a2"], load_collection("tot-a2").weights)
        out["tot-a2"] = tot.reindexed(load_collection("tot-a2").weights)
    elif rs.kind == "b2":
        wb = run_script(rs, start, B2_SCRIPT).reindexed(load_collection("wb-b2").weights)
        out["wb-b2"] = wb
        tot_weights = load_collection("tot-b2").weights
        out["tot-b2"] = find_substitution_path(rs, wb, tot_weights).reindexed(tot_weights)
    elif rs.kind == "g2":
        out["wb-g2"] = run_script(rs, start, G2_SCRIPT).reindexed(load_collection("wb-g2").weights)
    elif rs.kind == "a1xa1":
        out["a1xa1"] = start.reindexed(load_collection("a1xa1").weights)
    return out


# -- determinant oracle -------------------------------------------------------

def monomial_matrix(rs: RootSystemData, weights: Sequence) -> List[List[LaurentElement]]:
    elems = weyl_group(rs)
    return [[LaurentElement.monomial(*apply(w2, mu)) for mu in weights] for w2 in elems]


@lru_cache(maxsize=None)
def steinberg_determinant(kind: str) -> LaurentElement:
    rs = build(kind)
    return laurent_determinant(monomial_matrix(rs, steinberg_basis(rs).weights))


def basis_determinant_oracle(rs: RootSystemData, candidate: Iterable) -> bool:
    """True iff det(e^{w'(mu_w)}) equals +-det of the Steinberg matrix."""
    weights = [Weight(*x) for x in candidate]
    if len(weights) != len(weyl_group(rs)):
        raise ValueError(f"need {len(weyl_group(rs))} weights, got {len(weights)}")
    d = laurent_determinant(monomial_matrix(rs, weights))
    ref = steinberg_determinant(rs.kind)
    return d == ref or d == -ref


# -- three-dimensional quadric -----------------------------------------------

@dataclass(frozen=True)
class AdjointK0:
    """Element c*1 + k*y of Z[y]/(y^2 - 2y, 4y); k is kept mod 4."""

    c: int
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def __add__(self, other):
        return AdjointK0(self.c + other.c, self.k + other.k)

    def __sub__(self, other):
        return AdjointK0(self.c - other.c, self.k - other.k)

    def __mul__(self, other):
        # (c + k y)(d + l y) = cd + (cl + dk + 2kl) y
        return AdjointK0(self.c * other.c, self.c * other.k + other.c * self.k + 2 * self.k * other.k)

    def in_span_of_one(self) -> bool:
        return self.k == 0


Y = AdjointK0(0, 1)
ONE = AdjointK0(1, 0)


def root_lattice_class(rs: RootSystemData, lam) -> int:
    """Class of lam in Lambda / root lattice for B2 (order 2): 0 or 1."""
    (p, q), (r, s) = rs.cartan_rows
    det = p * s - q * r
    # lam = m*alpha1 + n*alpha2
    m = Fraction(lam[0] * s - lam[1] * r, det)
    n = Fraction(p * lam[1] - q * lam[0], det)
    return 0 if (m.denominator == 1 and n.denominator == 1) else 1


def adjoint_class(rs: RootSystemData, element: GroupRingElement) -> AdjointK0:
    """Image in K0 of the adjoint group: e^lam -> (e^sigma)^class, e^sigma = 1 - y."""
    e_sigma = ONE - Y
    total = AdjointK0(0)
    for lam, coeff in element.terms.items():
        term = e_sigma if root_lattice_class(rs, lam) else ONE
        total = total + AdjointK0(coeff) * term
    return total


def verify_quadric_obstruction() -> bool:
    """Line bundles on the 3-dimensional B2 quadric map to Z*1 but E maps to 2 - 2y."""
    rs = build("b2")
    # Pic generator: the fundamental weight in the root lattice; E: orbit of the other one
    pic = next(w for w in ((1, 0), (0, 1)) if root_lattice_class(rs, w) == 0)
    spin = Weight(*next(w for w in ((1, 0), (0, 1)) if root_lattice_class(rs, w) == 1))
    i = 0 if spin == (1, 0) else 1
    alpha = Weight(*rs.cartan_rows[i])
    E = GroupRingElement.exp(spin) + GroupRingElement.exp(spin - alpha)
    for n in range(-6, 7):
        if adjoint_class(rs, GroupRingElement.exp((n * pic[0], n * pic[1]))) != ONE:
            return False
    pi_e = adjoint_class(rs, E)
    if pi_e != AdjointK0(2, -2):
        return False
    return not pi_e.in_span_of_one()
