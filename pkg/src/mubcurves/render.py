"""Phase-space grid pictures of bundles.

alpha runs left to right, beta bottom to top, the origin sits in the
bottom-left cell and is marked ``o``. Every other cell carries the 1-based
index of the bundle curve through it.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .phasespace import Bundle


def grid_marks(bundle: Bundle) -> list[list[str]]:
    """Rows of cell marks, top row (largest beta) first."""
    field = bundle.field
    d = field.order
    owner = {}
    for i, curve in enumerate(bundle.curves, start=1):
        for p in curve.nonzero_points:
            owner[p] = str(i)
    rows = []
    for beta in reversed(range(d)):
        rows.append(["o" if (alpha, beta) == (0, 0) else owner.get((alpha, beta), ".") for alpha in range(d)])
    return rows


def render_ascii(bundle: Bundle) -> str:
    field = bundle.field
    d = field.order
    marks = grid_marks(bundle)
    labels = [field.label(x) for x in range(d)]
    width = max(max(len(m) for row in marks for m in row), max(len(s) for s in labels))
    gutter = max(len(s) for s in labels)
    lines = []
    for beta, row in zip(reversed(range(d)), marks):
        lines.append(f"{labels[beta]:>{gutter}} | " + " ".join(f"{m:>{width}}" for m in row))
    lines.append(" " * gutter + " +-" + "-" * ((width + 1) * d - 1))
    lines.append(" " * gutter + "   " + " ".join(f"{s:>{width}}" for s in labels))
    return "\n".join(lines) + "\n"


def render_svg(bundle: Bundle, cell: int = 32) -> str:
    field = bundle.field
    d = field.order
    marks = grid_marks(bundle)
    margin = cell
    size = margin + d * cell
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="monospace" font-size="{cell // 2}">'
    ]
    for r, row in enumerate(marks):
        beta = d - 1 - r
        y = r * cell
        out.append(
            f'<text x="{margin - 4}" y="{y + cell * 0.65:.1f}" text-anchor="end">{escape(field.label(beta))}</text>'
        )
        for alpha, m in enumerate(row):
            x = margin + alpha * cell
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="none" stroke="#888"/>')
            out.append(
                f'<text x="{x + cell / 2:.1f}" y="{y + cell * 0.65:.1f}" text-anchor="middle">{escape(m)}</text>'
            )
    for alpha in range(d):
        x = margin + alpha * cell
        out.append(
            f'<text x="{x + cell / 2:.1f}" y="{d * cell + cell * 0.65:.1f}" '
            f'text-anchor="middle">{escape(field.label(alpha))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
