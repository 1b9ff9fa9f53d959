"""Command-line driver: ``rank2ex <subcommand> ...``.

Exit status: 0 when every check passes, 1 when a check fails (the report is
still written), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import data
from .exceptional import (
    TOTAL,
    WEAK_BRUHAT,
    Collection,
    CollectionError,
    exceptional_violations,
    parse_collection,
    po_violations,
)
from .root_system import KINDS, build

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FACTS = ("nodmz", "close", "forty", "maxpts")


class InputError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


@dataclass
class CliConfig:
    subcommand: str
    kind: Optional[str] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    fmt: str = "json"
    jobs: int = 1
    radius_sq: Fraction = Fraction(3600)
    extent: int = 12
    deterministic: bool = False
    options: Dict = field(default_factory=dict)

    def __post_init__(self):
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if self.radius_sq <= 0:
            raise InputError("--radius-sq must be positive")
        if self.extent <= 0:
            raise InputError("--extent must be positive")


@dataclass
class Outcome:
    payload: Dict
    ok: bool
    rows: List[Dict] = field(default_factory=list)


# -- argument types -------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _positive_rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number such as 3600 or 1801/2, got {text!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _order(text: str) -> str:
    norm = text.replace("-", "_")
    if norm not in (TOTAL, WEAK_BRUHAT):
        raise argparse.ArgumentTypeError("expected 'total' or 'weak-bruhat'")
    return norm


# -- subcommands ------------------------------------------------------------------

def _w(x) -> List[int]:
    return [int(x[0]), int(x[1])]


def cmd_roots(cfg: CliConfig) -> Outcome:
    rs = build(cfg.kind)
    payload = rs.to_dict()
    rows = [{"root": str(r), "functional": str(f)} for r, f in zip(rs.positive_roots, rs.coroot_functionals)]
    return Outcome(payload, True, rows)


def cmd_steinberg(cfg: CliConfig) -> Outcome:
    from .steinberg import basis_determinant_oracle, replay_paper_bases, steinberg_basis

    rs = build(cfg.kind)
    st = steinberg_basis(rs)
    bases = {f"steinberg-{cfg.kind}": st}
    bases.update(replay_paper_bases(rs))
    entries, rows, ok = {}, [], True
    for name, state in bases.items():
        verdict = basis_determinant_oracle(rs, state.weights)
        ok &= verdict
        entry = {
            "weyl_words": [list(w.word) for w in state.elements],
            **state.to_dict(),
            "oracle": verdict,
        }
        if name in data.NAMES:
            col = data.load_collection(name)
            entry["matches_fixture"] = list(col.weights) == list(state.weights)
            ok &= entry["matches_fixture"]
        entries[name] = entry
        rows.append({"basis": name, "weights": " ".join(map(str, state.weights)), "oracle": verdict})
    return Outcome({"type": cfg.kind, "bases": entries, "holds": ok}, ok, rows)


def _load_collection(path: str) -> Collection:
    p = Path(path)
    if p.exists():
        try:
            text = p.read_text()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}")
        return parse_collection(text, source=path)
    name = p.name[:-5] if p.name.endswith(".json") else p.name
    if name in data.NAMES:
        return data.load_collection(name)
    raise InputError(f"{path}: no such file or bundled collection (bundled: {', '.join(data.NAMES)})")


def cmd_verify(cfg: CliConfig) -> Outcome:
    rs = build(cfg.kind)
    col = _load_collection(cfg.input_path)
    order = cfg.options.get("order") or col.order_kind
    if order != col.order_kind:
        col = Collection(col.weights, order, col.weyl_index if order == WEAK_BRUHAT else None)
    payload = {"type": cfg.kind, "order": order, "weights": [_w(x) for x in col.weights]}
    rows = []
    if order == TOTAL:
        bad = exceptional_violations(rs, col)
        payload["violations"] = [
            {"from_position": i, "to_position": j, "from": _w(col.weights[i]), "to": _w(col.weights[j])}
            for i, j in bad
        ]
    else:
        try:
            bad = po_violations(rs, col)
        except CollectionError as exc:
            raise InputError(f"{cfg.input_path}: {exc}")
        payload["violations"] = [
            {"from_element": list(w.word), "to_element": list(w2.word), "from": _w(a), "to": _w(b)}
            for w, w2, a, b in bad
        ]
    for v in payload["violations"]:
        rows.append({"from": str(tuple(v["from"])), "to": str(tuple(v["to"]))})
    payload["holds"] = not payload["violations"]
    return Outcome(payload, payload["holds"], rows)


def cmd_facts(cfg: CliConfig) -> Outcome:
    from . import search

    runners: Dict[str, Callable] = {
        "nodmz": lambda: search.fact_nodmz(jobs=cfg.jobs),
        "close": lambda: search.fact_close(jobs=cfg.jobs),
        "forty": search.fact_forty,
        "maxpts": search.maxpts_search,
    }
    which = cfg.options.get("which", "all")
    names = FACTS if which == "all" else (which,)
    reports = [runners[n]().to_dict(cfg.deterministic) for n in names]
    ok = all(r["holds"] for r in reports)
    rows = [{k: r[k] for k in ("fact", "holds", "candidates", "maximal_collections", "max_length", "elapsed_ms")}
            for r in reports]
    payload = reports[0] if len(reports) == 1 else {"facts": reports, "holds": ok}
    return Outcome(payload, ok, rows)


def cmd_falsify(cfg: CliConfig) -> Outcome:
    from .falsify import LEMMAS, falsify

    lemma = cfg.options["lemma"]
    names = list(LEMMAS) if lemma == "all" else [lemma]
    results = [falsify(n, cfg.radius_sq, jobs=cfg.jobs, mutated=cfg.options.get("mutate", False))
               for n in names]
    dicts = [r.to_dict(cfg.deterministic) for r in results]
    ok = all(r.holds for r in results)
    rows = [{"lemma": d["lemma"], "holds": d["holds"], "instances_checked": d["instances_checked"],
             "counterexample": "" if d["counterexample"] is None else " ".join(str(tuple(w)) for w in d["counterexample"])}
            for d in dicts]
    payload = dicts[0] if len(dicts) == 1 else {"results": dicts, "holds": ok}
    return Outcome(payload, ok, rows)


def cmd_crab(cfg: CliConfig) -> Outcome:
    from .crab import CRAB_LINES, crab_points, line_angle, twenty_weights
    from .figure import crab_svg

    payload = {
        "extent": cfg.extent,
        "crab_lines": [{"root": l.label, "functional": list(l.functional), "angle_deg": round(line_angle(l), 6)}
                       for l in CRAB_LINES],
        "twenty_weights": [_w(x) for x in sorted(twenty_weights())],
        "crab_points_within_extent": len(crab_points(cfg.extent * cfg.extent)),
    }
    svg_path = cfg.options.get("svg")
    if svg_path:
        try:
            Path(svg_path).write_text(crab_svg(cfg.extent))
        except OSError as exc:
            raise InputError(f"{svg_path}: {exc.strerror}")
        payload["svg"] = svg_path
    rows = [{"weight": str(tuple(x))} for x in payload["twenty_weights"]]
    return Outcome(payload, True, rows)


def cmd_quadric(cfg: CliConfig) -> Outcome:
    from .steinberg import verify_quadric_obstruction

    ok = verify_quadric_obstruction()
    payload = {"holds": ok, "class_of_E": "2 - 2y", "ring": "Z + Z/4 y, y^2 = 2y"}
    return Outcome(payload, ok, [{"holds": ok}])


COMMANDS = {
    "roots": cmd_roots,
    "steinberg": cmd_steinberg,
    "verify": cmd_verify,
    "facts": cmd_facts,
    "falsify": cmd_falsify,
    "crab": cmd_crab,
    "quadric": cmd_quadric,
}


# -- rendering ------------------------------------------------------------------------

def _text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if not _flat(item):
                out.append(f"{pad}-")
                out.extend(_text(item, indent + 1))
            else:
                out.append(f"{pad}- {json.dumps(item)}")
    else:
        out.append(f"{pad}{json.dumps(obj)}")
    return out


def _flat(x) -> bool:
    """Scalars, and lists nesting only scalars or short lists, print on one line."""
    if isinstance(x, dict):
        return not x
    if isinstance(x, list):
        return all(not isinstance(y, (dict, list)) or (isinstance(y, list) and _flat(y) and len(y) <= 4)
                   for y in x) and len(json.dumps(x)) <= 100
    return True


def to_json(obj, indent: int = 0) -> str:
    if _flat(obj):
        return json.dumps(obj, separators=(", ", ": "))
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        body = ",\n".join(f"{inner}{json.dumps(k)}: {to_json(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    body = ",\n".join(inner + to_json(v, indent + 1) for v in obj)
    return "[\n" + body + "\n" + pad + "]"


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return to_json(outcome.payload) + "\n"
    if fmt == "text":
        return "\n".join(_text(outcome.payload)) + "\n"
    buf = io.StringIO()
    if outcome.rows:
        writer = csv.DictWriter(buf, fieldnames=list(outcome.rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(outcome.rows)
    return buf.getvalue()


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--deterministic", action="store_true", default=argparse.SUPPRESS,
                        help="zero timing fields so repeated runs are byte-identical")

    parser = argparse.ArgumentParser(prog="rank2ex", description=__doc__.splitlines()[0], parents=[common])
    parser.set_defaults(format="json", output=None, deterministic=False)
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    add("roots", "dump root-system data").add_argument("--type", dest="kind", choices=KINDS, required=True)
    add("steinberg", "Steinberg basis, derived bases and determinant verdicts").add_argument(
        "--type", dest="kind", choices=KINDS, required=True)

    p = add("verify", "check a collection for exceptionality")
    p.add_argument("--type", dest="kind", choices=KINDS, required=True)
    p.add_argument("--collection", required=True, metavar="FILE",
                   help="JSON collection file, or the name of a bundled collection")
    p.add_argument("--order", type=_order, default=None, help="total or weak-bruhat (default: from the file)")

    p = add("facts", "reproduce the G2 enumeration facts")
    p.add_argument("--which", choices=("all",) + FACTS, default="all")
    p.add_argument("--jobs", type=_positive_int, default=1)

    p = add("falsify", "bounded search for counterexamples to a G2 lemma")
    from .falsify import LEMMAS
    p.add_argument("--lemma", choices=("all",) + tuple(LEMMAS), required=True)
    p.add_argument("--radius-sq", type=_positive_rational, default=Fraction(3600))
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--mutate", action="store_true", help="check the off-by-one mutated conclusion instead")

    p = add("crab", "crab geometry summary and SVG figure")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--extent", type=_positive_int, default=12)

    add("quadric", "K0 obstruction on the 3-dimensional quadric")
    return parser


def _config(ns: argparse.Namespace) -> CliConfig:
    extra = {k: getattr(ns, k) for k in ("order", "which", "lemma", "mutate", "svg") if hasattr(ns, k)}
    return CliConfig(
        subcommand=ns.subcommand,
        kind=getattr(ns, "kind", None),
        input_path=getattr(ns, "collection", None),
        output_path=ns.output,
        fmt=ns.format,
        jobs=getattr(ns, "jobs", 1),
        radius_sq=getattr(ns, "radius_sq", Fraction(3600)),
        extent=getattr(ns, "extent", 12),
        deterministic=ns.deterministic,
        options=extra,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(ns)
        outcome = COMMANDS[cfg.subcommand](cfg)
    except (InputError, CollectionError) as exc:
        print(f"rank2ex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(outcome, cfg.fmt)
    if cfg.output_path:
        try:
            Path(cfg.output_path).write_text(text)
        except OSError as exc:
            print(f"rank2ex: error: {cfg.output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if outcome.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
