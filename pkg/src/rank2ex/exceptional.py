"""Exceptionality of line-bundle collections via the singular-weight criterion.

Ext^*(L(l), L(l')) vanishes in characteristic zero iff l' - l + rho is
singular; every check here reduces to that test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .root_system import (
    RHO,
    RootSystemData,
    Weight,
    WeylElement,
    element,
    is_singular,
    left_weak_leq,
    weyl_group,
)

TOTAL = "total"
WEAK_BRUHAT = "weak_bruhat"
ORDER_KINDS = (TOTAL, WEAK_BRUHAT)


class CollectionError(ValueError):
    """Ill-formed collection (not an Ext failure)."""


class DuplicateWeightError(CollectionError):
    pass


@dataclass(frozen=True)
class Collection:
    weights: Tuple[Weight, ...]
    order_kind: str = TOTAL
    weyl_index: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Weight(*w) for w in self.weights))
        if self.order_kind not in ORDER_KINDS:
            raise CollectionError(f"unknown order kind {self.order_kind!r}")
        if self.weyl_index is not None:
            idx = tuple(tuple(int(i) for i in word) for word in self.weyl_index)
            object.__setattr__(self, "weyl_index", idx)
            if len(idx) != len(self.weights):
                raise CollectionError("weyl_index must align with weights")
        seen = {}
        for pos, w in enumerate(self.weights):
            if w in seen:
                raise DuplicateWeightError(f"weight {w} repeated at positions {seen[w]} and {pos}")
            seen[w] = pos

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def ext_vanishes(rs: RootSystemData, lam, lam2) -> bool:
    """Ext^*(L(lam), L(lam2)) = 0, i.e. lam2 - lam + rho singular."""
    return is_singular(rs, (lam2[0] - lam[0] + 1, lam2[1] - lam[1] + 1))


def exceptional_violations(rs: RootSystemData, c: Collection) -> List[Tuple[int, int]]:
    """Position pairs (i, j), i < j, where Ext from weight i to weight j survives."""
    w = c.weights
    return [(i, j) for i in range(len(w)) for j in range(i + 1, len(w)) if not ext_vanishes(rs, w[i], w[j])]


def is_exceptional(rs: RootSystemData, c: Collection) -> bool:
    if c.order_kind != TOTAL:
        raise CollectionError("is_exceptional needs a totally ordered collection")
    return not exceptional_violations(rs, c)


def _weyl_assignment(rs: RootSystemData, c: Collection) -> List[Tuple[WeylElement, Weight]]:
    elems = weyl_group(rs)
    if c.weyl_index is None:
        if len(c.weights) != len(elems):
            raise CollectionError(f"weak-Bruhat collection needs {len(elems)} weights, got {len(c.weights)}")
        return list(zip(elems, c.weights))
    pairs = [(element(rs, word), w) for word, w in zip(c.weyl_index, c.weights)]
    if {p[0] for p in pairs} != set(elems):
        raise CollectionError("weyl_index does not cover the Weyl group exactly once")
    return pairs


def po_violations(rs: RootSystemData, c: Collection) -> List[Tuple[WeylElement, WeylElement, Weight, Weight]]:
    """Comparable pairs w < w' (left weak order) whose Ext does not vanish."""
    pairs = _weyl_assignment(rs, c)
    bad = []
    for w, lam in pairs:
        for w2, lam2 in pairs:
            if w != w2 and left_weak_leq(w, w2) and not ext_vanishes(rs, lam, lam2):
                bad.append((w, w2, lam, lam2))
    return bad


def is_po_exceptional(rs: RootSystemData, c: Collection) -> bool:
    if c.order_kind != WEAK_BRUHAT:
        raise CollectionError("is_po_exceptional needs a weak_bruhat collection")
    return not po_violations(rs, c)


def translate(c: Collection, mu) -> Collection:
    return Collection(tuple(w - mu for w in c.weights), c.order_kind, c.weyl_index)


def reverse_negate(c: Collection) -> Collection:
    return Collection(tuple(-w for w in reversed(c.weights)), c.order_kind,
                      None if c.weyl_index is None else tuple(reversed(c.weyl_index)))


# -- JSON ---------------------------------------------------------------------

def _fail(source: str, msg: str):
    raise CollectionError(f"{source}: {msg}")


def parse_weight_list(data, source: str = "<input>", where: str = "weights") -> List[Weight]:
    if not isinstance(data, list):
        _fail(source, f"{where}: expected a JSON array of [a, b] pairs")
    out = []
    for k, item in enumerate(data):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            _fail(source, f"{where}[{k}]: expected an [a, b] integer pair, got {json.dumps(item)}")
        out.append(Weight(*item))
    return out


def parse_collection(text: str, source: str = "<input>") -> Collection:
    """Parse a collection file; a bare array of pairs is read as a total order."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CollectionError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(data, list):
        return Collection(tuple(parse_weight_list(data, source)), TOTAL)
    if not isinstance(data, dict):
        _fail(source, "expected an object with 'order' and 'weights'")
    order = data.get("order", TOTAL)
    order = {"weak-bruhat": WEAK_BRUHAT}.get(order, order)
    if order not in ORDER_KINDS:
        _fail(source, f"order: expected 'total' or 'weak_bruhat', got {order!r}")
    weights = parse_weight_list(data.get("weights"), source)
    index = data.get("weyl_index")
    if index is not None:
        if not isinstance(index, list) or not all(
                isinstance(wd, list) and all(i in (1, 2) for i in wd) for wd in index):
            _fail(source, "weyl_index: expected a list of words over {1, 2}")
    try:
        return Collection(tuple(weights), order, index)
    except CollectionError as exc:
        _fail(source, str(exc))


def _inline(x) -> str:
    return json.dumps(x, separators=(", ", ": "))


def dump_collection(c: Collection) -> str:
    lines = ["{", f'  "order": "{c.order_kind}",', f'  "weights": {_inline([list(w) for w in c.weights])}']
    if c.weyl_index is not None:
        lines[-1] += ","
        lines.append(f'  "weyl_index": {_inline([list(wd) for wd in c.weyl_index])}')
    lines.append("}")
    return "\n".join(lines) + "\n"
