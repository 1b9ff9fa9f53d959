"""SVG picture of the G2 crab: crab lines, singular lines, the 20 weights, crab lattice points."""

from __future__ import annotations

from typing import List, Tuple

from .crab import CRAB_LINES, NEG_RHO, SINGULAR_LINES, Line, crab_points, to_plane, twenty_weights
from .root_system import Weight

SCALE = 14.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _clip(line: Line, half: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Segment of the line inside the square [-half, half]^2 (plane coordinates)."""
    p = to_plane(line.base_point())
    d = to_plane(line.direction)
    lo, hi = -1e18, 1e18
    for k in range(2):
        if abs(d[k]) < 1e-12:
            continue
        t1, t2 = (-half - p[k]) / d[k], (half - p[k]) / d[k]
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    return (p[0] + lo * d[0], p[1] + lo * d[1]), (p[0] + hi * d[0], p[1] + hi * d[1])


def crab_svg(extent: int = 12) -> str:
    """Render the picture with crab lattice points satisfying ||l + rho|| <= extent."""
    if extent <= 0:
        raise ValueError("extent must be positive")
    half = extent + 2.0
    size = 2 * half * SCALE

    def xy(pt: Tuple[float, float]) -> Tuple[str, str]:
        # flip y for screen coordinates
        return _fmt((pt[0] + half) * SCALE), _fmt((half - pt[1]) * SCALE)

    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}" height="{_fmt(size)}" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}">',
        f'<rect width="{_fmt(size)}" height="{_fmt(size)}" fill="white"/>',
    ]
    for group, lines, style in (
        ("singular-lines", SINGULAR_LINES, 'stroke="#888" stroke-dasharray="6 4"'),
        ("crab-lines", CRAB_LINES, 'stroke="#c33"'),
    ):
        out.append(f'<g id="{group}" stroke-width="1.2" {style}>')
        for line in lines:
            (x1, y1), (x2, y2) = (xy(q) for q in _clip(line, half))
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"><title>{line.label}</title></line>')
        out.append("</g>")
    out.append('<g id="crab-points" fill="none" stroke="#c33" stroke-width="1">')
    for p in crab_points(extent * extent):
        cx, cy = xy(to_plane(p))
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3"><title>{p}</title></circle>')
    out.append("</g>")
    out.append('<g id="twenty-weights" fill="black">')
    for p in sorted(twenty_weights()):
        cx, cy = xy(to_plane(p))
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3.5"><title>{p}</title></circle>')
    out.append("</g>")
    for label, p in (("0", Weight(0, 0)), ("-rho", NEG_RHO)):
        cx, cy = xy(to_plane(p))
        out.append(f'<text x="{cx}" y="{cy}" dx="5" dy="-5" font-size="10">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
