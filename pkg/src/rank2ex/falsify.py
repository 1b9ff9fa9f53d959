"""Bounded exhaustive checks of the G2 crab lemmas.

Every lemma quantifies over exceptional collections 0, x_2, x_3, ... whose
entries all lie in the crab. A :class:`ScanRegion` holds the crab weights with
||x + rho||^2 <= radius_sq and the bitset relation "x_j may follow x_i"; each
checker walks the tuples satisfying its lemma's hypotheses and tests the
conclusion exactly.

Each lemma also has a mutated conclusion (a threshold moved by one unit, or a
constraint dropped) that should produce a witness; a mutation with no witness
at the scan radius is reported as inconclusive.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import QuadraticValue, compare_rational_vs_quadratic
from .crab import (
    CRAB_LINES,
    FAR_SQ,
    G2,
    MIRROR_SINGULAR_LINES,
    NEAR_SQ,
    NEG_RHO,
    SINGULAR_LINES,
    crab_points,
    is_in_crab,
    mirror_twenty_weights,
    twenty_weights,
)
from .exceptional import ext_vanishes
from .root_system import Weight, norm_sq

DEFAULT_RADIUS_SQ = Fraction(3600)

R77_SQ = Fraction(77, 10) ** 2  # 7.7^2
R211_SQ = Fraction(211, 10) ** 2  # 21.1^2
SIX_SQRT3_SQ = 108  # (6*sqrt(3))^2
TWENTY_SQ = 27  # (3*sqrt(3))^2


class UnknownLemma(KeyError):
    pass


@dataclass
class FalsifierResult:
    lemma: str
    radius_sq: Fraction
    counterexample: Optional[Tuple[Weight, ...]]
    instances_checked: int
    mutation: Optional[str] = None
    details: Dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def to_dict(self, deterministic: bool = False) -> dict:
        return {
            "lemma": self.lemma,
            "mutation": self.mutation,
            "radius_sq": str(self.radius_sq),
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else [list(w) for w in self.counterexample],
            "instances_checked": self.instances_checked,
            "details": self.details,
            "elapsed_ms": 0 if deterministic else round(self.elapsed * 1000),
        }


class ScanRegion:
    def __init__(self, radius_sq):
        self.radius_sq = Fraction(radius_sq)
        self.pts: List[Weight] = crab_points(self.radius_sq)
        n = len(self.pts)
        self.index = {p: i for i, p in enumerate(self.pts)}
        self.after = [0] * n
        self.before = [0] * n
        for i, x in enumerate(self.pts):
            for j, y in enumerate(self.pts):
                if ext_vanishes(G2, x, y):
                    self.after[i] |= 1 << j
                    self.before[j] |= 1 << i
        self.lines = [frozenset(k for k, line in enumerate(CRAB_LINES) if line.contains(p)) for p in self.pts]
        self.dist_sq = [norm_sq(G2, (p[0] + 1, p[1] + 1)) for p in self.pts]
        self.far = [compare_rational_vs_quadratic(d, FAR_SQ) > 0 for d in self.dist_sq]
        self.near = [d <= NEAR_SQ for d in self.dist_sq]

    def __len__(self):
        return len(self.pts)


@lru_cache(maxsize=4)
def region(radius_sq) -> ScanRegion:
    return ScanRegion(radius_sq)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


def _shared(reg: ScanRegion, i: int, j: int):
    return reg.lines[i] & reg.lines[j]


def _lines_of(x) -> frozenset:
    return frozenset(k for k, line in enumerate(CRAB_LINES) if line.contains(x))


def _rho_sq(x) -> Fraction:
    return norm_sq(G2, (x[0] + 1, x[1] + 1))


class _Scan:
    """Per-run accumulator: first counterexample, instance count, summary numbers."""

    def __init__(self):
        self.counterexample: Optional[Tuple[int, Tuple[Weight, ...]]] = None
        self.instances = 0
        self.details: Dict = {}

    def fail(self, outer: int, witness):
        if self.counterexample is None:
            self.counterexample = (outer, tuple(Weight(*w) for w in witness))

    def bump(self, key: str, n: int = 1):
        self.details[key] = self.details.get(key, 0) + n

    def note_first(self, key: str, outer: int, witness):
        cur = self.details.get(key)
        if cur is None or outer < cur[0]:
            self.details[key] = (outer, [list(w) for w in witness])

    def track_max(self, key: str, value):
        cur = self.details.get(key)
        if cur is None or value > cur:
            self.details[key] = value

    def track_min(self, key: str, value):
        cur = self.details.get(key)
        if cur is None or value < cur:
            self.details[key] = value


# -- individual lemmas ------------------------------------------------------------
# Each checker: (region, outer indices, mutated?) -> _Scan

def _pts20(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, b, c exceptional. (1) b, c on crab line A => c - b is a 20-weight on the
    singular line of A. (2) c - b, c on crab line A => b is a 20-weight on it."""
    s = _Scan()
    twenty = twenty_weights()
    for i in outer:
        b = reg.pts[i]
        for j in _bits(reg.after[i]):
            c = reg.pts[j]
            d = c - b
            for k in _shared(reg, i, j):
                s.instances += 1
                if mutated:
                    ok = norm_sq(G2, d) <= TWENTY_SQ - 1
                else:
                    ok = d in twenty and SINGULAR_LINES[k].contains(d)
                if not ok:
                    s.fail(i, (b, c))
            for k in _lines_of(d) & reg.lines[j]:
                s.instances += 1
                if not mutated and not (b in twenty and SINGULAR_LINES[k].contains(b)):
                    s.fail(i, (b, c))
    return s


def _lmp(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """Same-line pairs in an exceptional collection are within 3*sqrt(3)."""
    s = _Scan()
    bound = TWENTY_SQ - 1 if mutated else TWENTY_SQ
    for i in outer:
        for j in _bits(reg.after[i]):
            if _shared(reg, i, j):
                s.instances += 1
                d = norm_sq(G2, reg.pts[j] - reg.pts[i])
                s.track_max("max_same_line_distance_sq", d)
                if d > bound:
                    s.fail(i, (reg.pts[i], reg.pts[j]))
    return s


def _trig(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """Crab weights at least R from -rho and closer than 2(2 - sqrt 3)R share a crab line."""
    s = _Scan()
    s.details["different_lines_within_sine_bound"] = 0
    # (2(2 - sqrt3))^2 = 28 - 16 sqrt3; mutated factor 3(2 - sqrt3): 63 - 36 sqrt3
    a, b = (63, -36) if mutated else (28, -16)
    n = len(reg)
    for i in outer:
        for j in range(i + 1, n):
            r_sq = min(reg.dist_sq[i], reg.dist_sq[j])
            if r_sq == 0:
                continue
            d = norm_sq(G2, reg.pts[j] - reg.pts[i])
            if compare_rational_vs_quadratic(d, QuadraticValue(a * r_sq, b * r_sq, 3)) >= 0:
                continue
            s.instances += 1
            if not _shared(reg, i, j):
                s.fail(i, (reg.pts[i], reg.pts[j]))
                # the sharp separation for lines 30 degrees apart is 2 sin(15deg) R,
                # with square (2 - sqrt3) R^2
                if compare_rational_vs_quadratic(d, QuadraticValue(2 * r_sq, -r_sq, 3)) < 0:
                    s.bump("different_lines_within_sine_bound")
                else:
                    s.bump("different_lines_between_sine_and_stated_bound")
    return s


def _plusrho(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """l and l + rho in the crab with ||l + rho|| > 7.7 => same crab line."""
    s = _Scan()
    bound = Fraction(67, 10) ** 2 if mutated else R77_SQ
    for i in outer:
        lam = reg.pts[i]
        up = lam + (1, 1)
        if not is_in_crab(up):
            continue
        s.bump("pairs_in_crab")
        s.track_max("max_pair_dist_sq", reg.dist_sq[i])
        if reg.dist_sq[i] <= bound:
            continue
        s.instances += 1
        if not (reg.lines[i] & _lines_of(up)):
            s.fail(i, (lam, up))
    return s


def _crabdiff(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """a and b - a on crab line A => b + rho on A; if b is in the crab and
    ||b + rho|| > 7.7, then b on A."""
    s = _Scan()
    bound = Fraction(67, 10) ** 2 if mutated else R77_SQ
    for i in outer:
        a = reg.pts[i]
        for k in reg.lines[i]:
            line = CRAB_LINES[k]
            for j, x in enumerate(reg.pts):
                if k not in reg.lines[j]:
                    continue
                b = a + x
                s.instances += 1
                if not line.contains(b + (1, 1)):
                    s.fail(i, (a, b))
                if is_in_crab(b):
                    s.bump("b_in_crab")
                    d = _rho_sq(b)
                    s.track_max("max_b_dist_sq_in_crab", d)
                    if d > bound and not line.contains(b):
                        s.fail(i, (a, b))
    return s


def _dichotomy(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, mu, l exceptional: exactly one of
    (1) mu in the 20 and (||l + rho|| > 6 sqrt3 => l on the crab line parallel to mu's singular line);
    (2) mu not in the 20 and ||l + rho|| < 3 ||mu||."""
    s = _Scan()
    twenty = twenty_weights()
    far_sq = SIX_SQRT3_SQ - 1 if mutated else SIX_SQRT3_SQ
    for i in outer:
        mu = reg.pts[i]
        in20 = mu in twenty
        if in20:
            (k,) = [k for k, line in enumerate(SINGULAR_LINES) if line.contains(mu)]
        mu_sq = norm_sq(G2, mu)
        for j in _bits(reg.after[i]):
            s.instances += 1
            d = reg.dist_sq[j]
            on_line = in20 and CRAB_LINES[k].contains(reg.pts[j])
            branch1 = in20 and (d <= far_sq or on_line)
            branch2 = (not in20) and d < 9 * mu_sq
            if in20 and not on_line:
                s.track_max("max_off_line_dist_sq_branch1", d)
            if not in20:
                s.track_max("max_ratio_sq_branch2", d / mu_sq)
            if branch1 == branch2:
                s.fail(i, (mu, reg.pts[j]))
    return s


def _baa(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, b, a1, a2 exceptional; a1, a2 on crab line A; b neither on A nor on the
    singular line parallel to A => b, a1, a2 near (and within 21.1 of -rho)."""
    s = _Scan()
    near_bound = Fraction(41) ** 2 if mutated else NEAR_SQ
    for i in outer:
        b = reg.pts[i]
        for j in _bits(reg.after[i]):
            for m in _bits(reg.after[i] & reg.after[j]):
                for k in _shared(reg, j, m):
                    if k in reg.lines[i] or SINGULAR_LINES[k].contains(b):
                        continue
                    s.instances += 1
                    worst = max(reg.dist_sq[i], reg.dist_sq[j], reg.dist_sq[m])
                    s.track_max("max_dist_sq", worst)
                    if worst > R211_SQ:
                        s.bump("beyond_21_1")
                        s.note_first("first_beyond_21_1", i, (b, reg.pts[j], reg.pts[m]))
                    if worst > near_bound:
                        s.fail(i, (b, reg.pts[j], reg.pts[m]))
    return s


def _aab(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, a1, a2, b exceptional; a1, a2 on crab line A; b on a different crab line
    => one of a1, a2, b is near."""
    s = _Scan()
    near_bound = Fraction(41) ** 2 if mutated else NEAR_SQ
    for i in outer:
        for j in _bits(reg.after[i]):
            for k in _shared(reg, i, j):
                for m in _bits(reg.after[i] & reg.after[j]):
                    if k in reg.lines[m]:
                        continue
                    s.instances += 1
                    closest = min(reg.dist_sq[i], reg.dist_sq[j], reg.dist_sq[m])
                    s.track_max("max_min_dist_sq", closest)
                    if closest > near_bound:
                        s.fail(i, (reg.pts[i], reg.pts[j], reg.pts[m]))
    return s


def _extensions(reg: ScanRegion, chain: Tuple[int, ...], mutated: bool) -> int:
    """Bitset of crab weights that can be inserted anywhere after 0 in 0, *chain."""
    out = 0
    for slot in range(len(chain) + 1):
        mask = (1 << len(reg)) - 1
        for pos, x in enumerate(chain):
            mask &= reg.after[x] if pos < slot else reg.before[x]
            if mutated:
                # drop every constraint but the first
                break
        out |= mask
    for x in chain:
        out &= ~(1 << x)
    return out


def _aba(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, a1, b, a2 exceptional and far; a1, a2 on crab line A; b off A => no
    crab weight in the region extends the collection."""
    s = _Scan()
    for i in outer:
        if not reg.far[i]:
            continue
        for j in _bits(reg.after[i]):
            if not reg.far[j]:
                continue
            for m in _bits(reg.after[i] & reg.after[j]):
                if not reg.far[m]:
                    continue
                for k in _shared(reg, i, m):
                    if k in reg.lines[j]:
                        continue
                    s.instances += 1
                    ext = _extensions(reg, (i, j, m), mutated)
                    if ext:
                        mu = next(_bits(ext))
                        s.fail(i, (reg.pts[i], reg.pts[j], reg.pts[m], reg.pts[mu]))
    return s


def _triplet(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """Far a1, a2 on crab line A and far b off A: 0, b, a1, a2 and 0, a1, a2, b are
    not exceptional; 0, a1, b, a2 exceptional => maximal."""
    s = _Scan()
    far = [i for i in range(len(reg)) if reg.far[i]]
    for i in outer:
        if not reg.far[i]:
            continue
        for m in far:
            if m == i:
                continue
            for k in _shared(reg, i, m):
                for j in far:
                    if j in (i, m) or k in reg.lines[j]:
                        continue
                    s.instances += 1
                    bit = lambda x, y: reg.after[x] >> y & 1
                    if bit(j, i) and bit(j, m) and bit(i, m):
                        s.fail(i, (reg.pts[j], reg.pts[i], reg.pts[m]))
                    if bit(i, m) and bit(i, j) and bit(m, j):
                        s.fail(i, (reg.pts[i], reg.pts[m], reg.pts[j]))
                    if bit(i, j) and bit(i, m) and bit(j, m):
                        s.bump("aba_instances")
                        ext = _extensions(reg, (i, j, m), mutated)
                        if ext:
                            mu = next(_bits(ext))
                            s.fail(i, (reg.pts[i], reg.pts[j], reg.pts[m], reg.pts[mu]))
    return s


def _mirrorfc(reg: ScanRegion, outer, mutated: bool) -> _Scan:
    """0, l, mu exceptional, l != -rho, ||l|| >= 2.9 ||mu + rho|| + 7.6 => mu is a
    mirror 20 weight on the mirror singular line parallel to l, ||mu + rho|| <= 3 sqrt3."""
    s = _Scan()
    mirror = mirror_twenty_weights()
    shift = Fraction(66, 10) if mutated else Fraction(76, 10)
    slope = Fraction(29, 10)
    for i in outer:
        lam = reg.pts[i]
        if lam == NEG_RHO:
            s.bump("excluded_neg_rho")
            continue
        (k,) = reg.lines[i]
        lam_sq = norm_sq(G2, lam)
        for j in _bits(reg.after[i]):
            m_sq = reg.dist_sq[j]
            # ||l||^2 >= (slope*sqrt(M) + shift)^2 = slope^2 M + shift^2 + 2 slope shift sqrt(M)
            rhs = QuadraticValue(slope * slope * m_sq + shift * shift, 2 * slope * shift, m_sq)
            if compare_rational_vs_quadratic(lam_sq, rhs) < 0:
                continue
            s.instances += 1
            mu = reg.pts[j]
            ok = mu in mirror and MIRROR_SINGULAR_LINES[k].contains(mu) and m_sq <= TWENTY_SQ
            if not ok:
                s.fail(i, (lam, mu))
    return s


LEMMAS: Dict[str, Callable[[ScanRegion, List[int], bool], _Scan]] = {
    "pts20": _pts20,
    "lmp": _lmp,
    "trig": _trig,
    "plusrho": _plusrho,
    "crabdiff": _crabdiff,
    "dichotomy": _dichotomy,
    "baa": _baa,
    "aab": _aab,
    "aba": _aba,
    "mirrorfc": _mirrorfc,
    "triplet": _triplet,
}

MUTATIONS = {
    "pts20": "c - b has norm^2 <= 26 instead of being a 20-weight on the parallel singular line",
    "lmp": "distance bound 27 -> 26 (squared)",
    "trig": "separation factor 2(2 - sqrt 3) -> 3(2 - sqrt 3)",
    "plusrho": "threshold 7.7 -> 6.7",
    "crabdiff": "threshold 7.7 -> 6.7",
    "dichotomy": "branch (1) threshold ||l + rho||^2 > 108 -> > 107",
    "baa": "near bound 42 -> 41",
    "aab": "near bound 42 -> 41",
    "aba": "extension test keeps only the first constraint",
    "mirrorfc": "offset 7.6 -> 6.6",
    "triplet": "extension test keeps only the first constraint",
}


def _merge(scans: List[_Scan]) -> _Scan:
    out = _Scan()
    for sc in scans:
        out.instances += sc.instances
        if sc.counterexample is not None and (
                out.counterexample is None or sc.counterexample[0] < out.counterexample[0]):
            out.counterexample = sc.counterexample
        for key, val in sc.details.items():
            if key.startswith("max_"):
                out.track_max(key, val)
            elif key.startswith("min_"):
                out.track_min(key, val)
            elif key.startswith("first_"):
                out.note_first(key, val[0], val[1])
            else:
                out.bump(key, val)
    return out


def _worker(args):
    lemma, radius_sq, outer, mutated = args
    return LEMMAS[lemma](region(radius_sq), outer, mutated)


def falsify(lemma_id: str, radius_sq=DEFAULT_RADIUS_SQ, jobs: int = 1, mutated: bool = False) -> FalsifierResult:
    if lemma_id not in LEMMAS:
        raise UnknownLemma(f"unknown lemma {lemma_id!r}; expected one of {', '.join(LEMMAS)}")
    radius_sq = Fraction(radius_sq)
    if radius_sq <= 0:
        raise ValueError("radius_sq must be positive")
    t = time.perf_counter()
    n = len(region(radius_sq))
    outer = list(range(n))
    if jobs <= 1:
        scan = LEMMAS[lemma_id](region(radius_sq), outer, mutated)
    else:
        chunks = [outer[k::jobs] for k in range(jobs) if outer[k::jobs]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            scan = _merge(list(ex.map(_worker, [(lemma_id, radius_sq, c, mutated) for c in chunks])))
    details = {}
    for k, v in sorted(scan.details.items()):
        if k.startswith("first_"):
            v = v[1]
        details[k] = str(v) if isinstance(v, Fraction) else v
    details["scan_points"] = n
    return FalsifierResult(
        lemma=lemma_id,
        radius_sq=radius_sq,
        counterexample=None if scan.counterexample is None else scan.counterexample[1],
        instances_checked=scan.instances,
        mutation=MUTATIONS[lemma_id] if mutated else None,
        details=details,
        elapsed=time.perf_counter() - t,
    )


def mutation_outcome(lemma_id: str, radius_sq=DEFAULT_RADIUS_SQ, jobs: int = 1) -> str:
    """'witness' if the mutated lemma fails somewhere in the region, else 'inconclusive'."""
    res = falsify(lemma_id, radius_sq, jobs=jobs, mutated=True)
    return "witness" if res.counterexample is not None else "inconclusive"
