"""Deterministic SVG drawings of wiring diagrams."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .wiring import Crossing, Node, WiringDiagram

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#393b79", "#637939",
)

DX = 24.0
DY = 22.0
LEFT = 44.0
TOP = 20.0


def _f(v: float) -> str:
    return f"{v:.1f}"


def _line(x1: float, y1: float, x2: float, y2: float, color: str, width: float = 1.6) -> str:
    return (
        f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
        f'stroke="{color}" stroke-width="{width:.1f}" stroke-linecap="round"/>'
    )


def render_svg(W: WiringDiagram, title: str | None = None) -> str:
    """Wires run left to right, one column per event; under strands are drawn with a gap."""
    order = list(W.initial_order)
    labels = sorted(order)
    color = {w: PALETTE[k % len(PALETTE)] for k, w in enumerate(labels)}
    n = len(order)
    width = LEFT + DX * (len(W.events) + 1) + 36.0
    height = TOP * 2 + DY * max(n - 1, 0)
    y = lambda pos: TOP + DY * pos  # noqa: E731

    body: list[str] = []
    for pos, w in enumerate(order):
        body.append(
            f'<text x="{_f(LEFT - 8)}" y="{_f(y(pos) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">L{w}</text>'
        )
    x = LEFT
    for ev in W.events:
        x0, x1 = x, x + DX
        xm = (x0 + x1) / 2
        if isinstance(ev, Node):
            p = ev.at - 1
            k = len(ev.wires)
            centre = y(p + (k - 1) / 2)
            for q, w in enumerate(order):
                if p <= q < p + k:
                    body.append(_line(x0, y(q), xm, centre, color[w]))
                    body.append(_line(xm, centre, x1, y(2 * p + k - 1 - q), color[w]))
            body.append(f'<circle cx="{_f(xm)}" cy="{_f(centre)}" r="3.0" fill="#000"/>')
            order[p : p + k] = order[p : p + k][::-1]
        else:
            p = ev.at - 1
            upper, lower = order[p], order[p + 1]
            under = ev.under
            over = ev.over
            seg = {upper: (y(p), y(p + 1)), lower: (y(p + 1), y(p))}
            body.append(_line(x0, seg[under][0], x1, seg[under][1], color[under]))
            body.append(_line(x0, seg[over][0], x1, seg[over][1], "#ffffff", 5.0))
            body.append(_line(x0, seg[over][0], x1, seg[over][1], color[over]))
            order[p], order[p + 1] = lower, upper
        for q, w in enumerate(order):
            if isinstance(ev, Node) and ev.at - 1 <= q < ev.at - 1 + len(ev.wires):
                continue
            if isinstance(ev, Crossing) and q in (ev.at - 1, ev.at):
                continue
            body.append(_line(x0, y(q), x1, y(q), color[w]))
        x = x1
    for q, w in enumerate(order):
        body.append(_line(x, y(q), x + DX, y(q), color[w]))
        body.append(
            f'<text x="{_f(x + DX + 6)}" y="{_f(y(q) + 4)}" font-family="sans-serif" font-size="11">L{w}</text>'
        )

    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">'
    )
    parts = [head]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append('<rect width="100%" height="100%" fill="#ffffff"/>')
    parts.extend(body)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
