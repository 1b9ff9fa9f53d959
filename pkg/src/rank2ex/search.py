"""Backtracking enumeration of maximal exceptional collections and the G2 facts.

The enumeration follows the classic recursive scheme: extend the prefix by
each remaining candidate in list order, keep only the candidates that may
still follow it, and emit the prefix once nothing is left. Candidate pools are
Python ints used as bitsets, so a step is one AND with a precomputed mask.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import crab
from .algebra import QuadraticValue, compare_rational_vs_quadratic
from .crab import (
    CRAB_LINES,
    G2,
    MIRROR_SINGULAR_LINES,
    SINGULAR_LINES,
    NEG_RHO,
    mirror_twenty_weights,
    non_far_crab_weights,
    parallel,
    twenty_weights,
)
from .exceptional import Collection, ext_vanishes
from .root_system import RootSystemData, Weight, build, norm_sq

log = logging.getLogger(__name__)

ZERO = Weight(0, 0)

# regression constants fixed after the first full computation
NODMZ_CANDIDATES = 445
NODMZ_MAXIMAL = 160017
NODMZ_MAX_LENGTH = 10
FORTY_MAX_LENGTH = {"a1": 5, "a2": 5, "a1+a2": 2, "2a1+a2": 2, "3a1+a2": 4, "3a1+2a2": 2}
CLOSE_BOUND_SQ = 25
MAXPTS_BOUND = 5


@dataclass
class SearchReport:
    fact: str
    candidate_count: int
    maximal_collection_count: int
    max_length: int
    violations: List[Tuple[Weight, ...]] = field(default_factory=list)
    elapsed: float = 0.0
    details: Dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self, deterministic: bool = False) -> dict:
        return {
            "fact": self.fact,
            "holds": self.holds,
            "candidates": self.candidate_count,
            "maximal_collections": self.maximal_collection_count,
            "max_length": self.max_length,
            "violations": [[list(w) for w in c] for c in self.violations],
            "details": self.details,
            "elapsed_ms": 0 if deterministic else round(self.elapsed * 1000),
        }


class PreconditionError(ValueError):
    pass


class Engine:
    """Compatibility masks for a fixed candidate list.

    ``after[i]`` has bit j set when candidate j may follow candidate i, i.e.
    c_j - c_i + rho is singular.
    """

    def __init__(self, rs: RootSystemData, candidates: Sequence):
        self.rs = rs
        self.candidates = [Weight(*c) for c in candidates]
        n = len(self.candidates)
        self.full = (1 << n) - 1
        after = []
        for c in self.candidates:
            m = 0
            for j, d in enumerate(self.candidates):
                if ext_vanishes(rs, c, d):
                    m |= 1 << j
            after.append(m)
        self.after = after

    def leaves(self, pool: int, path: List[int], out: List[Tuple[int, ...]]) -> None:
        if not pool:
            out.append(tuple(path))
            return
        after = self.after
        p = pool
        while p:
            low = p & -p
            p ^= low
            i = low.bit_length() - 1
            path.append(i)
            self.leaves(pool & after[i], path, out)
            path.pop()

    def walk(self, pool: int, path: List[int], visit: Callable[[List[int], int], None]) -> None:
        """Call ``visit(path, pool)`` at every node, leaves included."""
        visit(path, pool)
        after = self.after
        p = pool
        while p:
            low = p & -p
            p ^= low
            i = low.bit_length() - 1
            path.append(i)
            self.walk(pool & after[i], path, visit)
            path.pop()

    def first_level(self, pool: int) -> List[int]:
        return [i for i in range(len(self.candidates)) if pool >> i & 1]


def _check_preconditions(rs, prefix, candidates):
    if len(set(candidates)) != len(candidates):
        raise PreconditionError("candidates must be pairwise distinct")
    if set(candidates) & set(prefix):
        raise PreconditionError("candidates must be disjoint from the prefix")
    for i, x in enumerate(prefix):
        for y in prefix[i + 1:]:
            if not ext_vanishes(rs, x, y):
                raise PreconditionError(f"prefix is not exceptional at {x} -> {y}")
    for c in candidates:
        for x in prefix:
            if not ext_vanishes(rs, x, c):
                raise PreconditionError(f"candidate {c} cannot follow prefix weight {x}")


def _leaves_worker(args):
    kind, candidates, firsts = args
    eng = Engine(build(kind), candidates)
    out: List[Tuple[int, ...]] = []
    for i in firsts:
        eng.leaves(eng.full & eng.after[i], [i], out)
    return out


def _split(items: List[int], jobs: int) -> List[List[int]]:
    # round-robin chunks balance the uneven subtrees; order restored on merge
    return [items[k::jobs] for k in range(jobs)]


def enumerate_leaves(rs: RootSystemData, candidates: Sequence, jobs: int = 1) -> List[Tuple[int, ...]]:
    """Index tuples of all maximal chains, in depth-first order."""
    candidates = [Weight(*c) for c in candidates]
    if not candidates:
        return [()]
    if jobs <= 1:
        eng = Engine(rs, candidates)
        out: List[Tuple[int, ...]] = []
        eng.leaves(eng.full, [], out)
        return out
    firsts = list(range(len(candidates)))
    chunks = [c for c in _split(firsts, jobs) if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
        parts = list(ex.map(_leaves_worker, [(rs.kind, candidates, c) for c in chunks]))
    return _stable_by_first(parts)


def _stable_by_first(parts: List[List[Tuple[int, ...]]]) -> List[Tuple[int, ...]]:
    # sequential depth-first order is grouped by first index, each group in subtree order
    buckets: Dict[int, List[Tuple[int, ...]]] = {}
    for part in parts:
        for leaf in part:
            buckets.setdefault(leaf[0], []).append(leaf)
    return [leaf for k in sorted(buckets) for leaf in buckets[k]]


def find_collections(rs: RootSystemData, prefix: Sequence, candidates: Sequence,
                     jobs: int = 1) -> List[Collection]:
    """All maximal collections prefix + (c_1, ..., c_k) drawn from ``candidates``."""
    prefix = [Weight(*p) for p in prefix]
    candidates = [Weight(*c) for c in candidates]
    _check_preconditions(rs, prefix, candidates)
    leaves = enumerate_leaves(rs, candidates, jobs)
    pre = tuple(prefix)
    return [Collection(pre + tuple(candidates[i] for i in leaf)) for leaf in leaves]


# -- non-far enumeration -----------------------------------------------------

def _line_masks(candidates: Sequence[Weight]) -> List[int]:
    """Bit k set when the candidate lies on crab line k (-rho lies on all six)."""
    out = []
    for c in candidates:
        m = 0
        for k, line in enumerate(CRAB_LINES):
            if line.contains(c):
                m |= 1 << k
        out.append(m)
    return out


def _max_per_line(leaf: Tuple[int, ...], line_mask: List[int]) -> int:
    counts = [0] * len(CRAB_LINES)
    for i in leaf:
        m = line_mask[i]
        for k in range(len(counts)):
            if m >> k & 1:
                counts[k] += 1
    return max(counts)


def fact_nodmz(jobs: int = 1) -> SearchReport:
    """Maximal collections 0, l_2, ..., l_n of non-far crab weights; n <= 10."""
    t = time.perf_counter()
    cands = non_far_crab_weights()
    leaves = enumerate_leaves(G2, cands, jobs)
    max_len = 1 + max(len(leaf) for leaf in leaves)
    line_mask = _line_masks(cands)
    per_line = max(_max_per_line(leaf, line_mask) for leaf in leaves)
    violations = [(ZERO,) + tuple(cands[i] for i in leaf) for leaf in leaves if len(leaf) + 1 > NODMZ_MAX_LENGTH]
    return SearchReport(
        fact="nodmz",
        candidate_count=len(cands),
        maximal_collection_count=len(leaves),
        max_length=max_len,
        violations=violations,
        elapsed=time.perf_counter() - t,
        details={"max_weights_on_one_crab_line": per_line},
    )


# -- close weights at depth 9 and 10 ----------------------------------------

def _close_worker(args):
    firsts, = args
    cands = non_far_crab_weights()
    eng = Engine(G2, cands)
    return _close_scan(eng, firsts)


def _close_scan(eng: Engine, firsts: List[int]):
    cands = eng.candidates
    line_mask = _line_masks(cands)
    close = [norm_sq(G2, (c[0] + 1, c[1] + 1)) <= CLOSE_BOUND_SQ for c in cands]
    nlines = len(CRAB_LINES)
    stats = {"nodes_depth_9_10": 0, "filtered_in": 0}
    violations: List[Tuple[int, ...]] = []

    def visit(path, pool):
        n = len(path) + 1
        if n not in (9, 10):
            return
        stats["nodes_depth_9_10"] += 1
        counts = [0] * nlines
        for i in path:
            m = line_mask[i]
            for k in range(nlines):
                if m >> k & 1:
                    counts[k] += 1
        if max(counts) > 2 or min(counts) != 0:
            return
        stats["filtered_in"] += 1
        if not all(close[i] for i in path):
            violations.append(tuple(path))

    for i in firsts:
        eng.walk(eng.full & eng.after[i], [i], visit)
    return stats, violations


def fact_close(jobs: int = 1) -> SearchReport:
    """Depth-9/10 nodes with <= 2 weights per crab line and an empty line are within 5 of -rho."""
    t = time.perf_counter()
    cands = non_far_crab_weights()
    firsts = list(range(len(cands)))
    if jobs <= 1:
        results = [_close_scan(Engine(G2, cands), firsts)]
    else:
        chunks = [c for c in _split(firsts, jobs) if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            results = list(ex.map(_close_worker, [(c,) for c in chunks]))
    stats = {"nodes_depth_9_10": 0, "filtered_in": 0}
    violations = []
    for s, v in results:
        for k in stats:
            stats[k] += s[k]
        violations.extend(v)
    violations.sort()
    return SearchReport(
        fact="close",
        candidate_count=len(cands),
        maximal_collection_count=0,
        max_length=0,
        violations=[(ZERO,) + tuple(cands[i] for i in v) for v in violations],
        elapsed=time.perf_counter() - t,
        details=stats,
    )


# -- singular and mirror singular pairs --------------------------------------

def forty_candidates(line) -> List[Weight]:
    """Weights of the 20 / mirror 20 on the singular or mirror singular line parallel to ``line``."""
    s = parallel(line, SINGULAR_LINES)
    m = parallel(line, MIRROR_SINGULAR_LINES)
    pool = twenty_weights() | mirror_twenty_weights()
    return sorted(x for x in pool if s.contains(x) or m.contains(x))


def fact_forty() -> SearchReport:
    """Longest collection 0, l_2, ..., l_n with weights on one singular/mirror-singular pair."""
    t = time.perf_counter()
    per_line = {}
    total = 0
    cand_total = 0
    overall = 0
    violations = []
    for line in CRAB_LINES:
        cands = forty_candidates(line)
        cand_total += len(cands)
        cols = find_collections(G2, [ZERO], cands)
        lengths = [len(c) for c in cols]
        longest = max(cols, key=len)
        if len(longest) > 8:
            violations.append(longest.weights)
        total += len(cols)
        per_line[line.label] = {
            "candidates": len(cands),
            "maximal_collections": len(cols),
            "max_length": max(lengths),
            "min_maximal_length": min(lengths),
        }
        overall = max(overall, max(lengths))
    return SearchReport(
        fact="forty",
        candidate_count=cand_total,
        maximal_collection_count=total,
        max_length=overall,
        violations=violations,
        elapsed=time.perf_counter() - t,
        details={"per_line": per_line, "required_bound": 8},
    )


# -- maxpts -------------------------------------------------------------------

MAXPTS_ANCHOR_BOUND = QuadraticValue(34, 6, 21)  # (3*sqrt(3) + sqrt(7))^2


def maxpts_search() -> SearchReport:
    """At most 5 weights of an exceptional collection 0, l_2, ... lie on one crab line.

    With every weight on the line A, each l_j - l_2 (j > 2) is one of the 20
    weights on the singular line parallel to A, so the candidates after the
    anchor l_2 are l_2 + (those offsets).
    """
    t = time.perf_counter()
    per_line = {}
    overall = 0
    anchors_total = 0
    violations = []
    for line in CRAB_LINES:
        sing = parallel(line, SINGULAR_LINES)
        offsets = sorted(x for x in twenty_weights() if sing.contains(x))
        anchors = line.points_within(NEG_RHO, MAXPTS_ANCHOR_BOUND)
        best = 0
        best_example = None
        for anchor in anchors:
            cands = [anchor + s for s in offsets]
            assert all(line.contains(c) for c in cands)
            cands = [c for c in cands if ext_vanishes(G2, anchor, c)]
            for col in find_collections(G2, [ZERO, anchor], cands):
                on_line = sum(1 for w in col.weights[1:] if line.contains(w))
                if on_line > best:
                    best, best_example = on_line, col.weights
        anchors_total += len(anchors)
        per_line[line.label] = {
            "anchors": len(anchors),
            "offsets": len(offsets),
            "max_on_line": best,
            "example": [list(w) for w in best_example],
            "angle_deg": round(crab.line_angle(line), 6),
        }
        overall = max(overall, best)
        if best > MAXPTS_BOUND:
            violations.append(best_example)
    return SearchReport(
        fact="maxpts",
        candidate_count=anchors_total,
        maximal_collection_count=0,
        max_length=overall,
        violations=violations,
        elapsed=time.perf_counter() - t,
        details={"per_line": per_line},
    )


def length_eleven_absent(report: Optional[SearchReport] = None) -> bool:
    """No length-11 exceptional collection 0, l_2, ... uses only non-far weights."""
    report = report or fact_nodmz()
    return report.max_length < 11
