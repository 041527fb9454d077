"""Deterministic SVG rendering of arrangements and colour classes."""

from __future__ import annotations

from fractions import Fraction

# fill by coverage depth; index 0 is unused (depth-0 bounded faces are hatched)
DEPTH_RAMP = ("#ffffff", "#fde0c5", "#facba6", "#f8b58b", "#f59e72", "#f2855d", "#ef6a4c")
CLASS_PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")
WIDTH = 800.0


class _Frame:
    def __init__(self, points):
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, Fraction(1))
        self.pad = span / 20
        self.s = Fraction(WIDTH) / (span + 2 * self.pad)
        self.w = float((self.x1 - self.x0 + 2 * self.pad) * self.s)
        self.h = float((self.y1 - self.y0 + 2 * self.pad) * self.s)

    def xy(self, p) -> str:
        x = (p.x - self.x0 + self.pad) * self.s
        y = (self.y1 - p.y + self.pad) * self.s
        return f"{float(x):.3f},{float(y):.3f}"

    def path(self, rings) -> str:
        parts = []
        for ring in rings:
            parts.append("M" + " L".join(self.xy(p) for p in ring) + " Z")
        return " ".join(parts)

    def header(self, title: str) -> list[str]:
        return [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w:.1f}" height="{self.h:.1f}" '
            f'viewBox="0 0 {self.w:.3f} {self.h:.3f}">',
            f"<title>{title}</title>",
        ]


def arrangement_svg(arr, title: str = "arrangement") -> str:
    """Faces filled by depth, holes hatched, member boundaries stroked."""
    fam = arr.family
    frame = _Frame(arr.points if arr.points else [p for m in fam for p in m.vertices()])
    out = frame.header(title)
    out.append(
        '<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" '
        'patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" '
        'stroke="#555555" stroke-width="1.5"/></pattern></defs>'
    )
    for f in range(1, len(arr.faces)):
        depth = len(arr.faces[f].coverage)
        rings = [arr.cycle_points(c) for c in arr.face_cycles(f)]
        fill = "url(#hatch)" if depth == 0 else DEPTH_RAMP[min(depth, len(DEPTH_RAMP) - 1)]
        out.append(f'<path d="{frame.path(rings)}" fill="{fill}" fill-rule="evenodd" stroke="none" data-depth="{depth}"/>')
    for m in fam:
        out.append(f'<path d="{frame.path(m.rings())}" fill="none" stroke="#222222" stroke-width="1" data-id="{m.id}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def class_svg(family, members, color_index: int, title: str) -> str:
    """One colour class of a decomposition, with the whole family outlined."""
    frame = _Frame([p for m in family for p in m.vertices()])
    out = frame.header(title)
    fill = CLASS_PALETTE[color_index % len(CLASS_PALETTE)]
    keep = set(members)
    for m in family:
        if m.id in keep:
            out.append(f'<path d="{frame.path(m.rings())}" fill="{fill}" fill-opacity="0.6" fill-rule="evenodd" stroke="#222222" stroke-width="1" data-id="{m.id}"/>')
        else:
            out.append(f'<path d="{frame.path(m.rings())}" fill="none" stroke="#bbbbbb" stroke-width="0.5" data-id="{m.id}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
