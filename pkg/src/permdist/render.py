"""Export of reversing diagrams: JSON, Graphviz DOT, standalone SVG and TikZ."""
from __future__ import annotations

import json
from xml.sax.saxutils import escape

from .invariants import format_name
from .reversing import GridDiagram, Tile

FORMATS = ("json", "dot", "svg", "tikz")
SCALE = 60
MARGIN = 40


def _label(label: int) -> str:
    return f"s{label}" if label else "ε"


def _tile_vertices(g: GridDiagram, t: Tile) -> set[int]:
    ids = t.left + t.top + t.bottom + t.right + t.eps
    return {g.edges[e].src for e in ids} | {g.edges[e].dst for e in ids}


def diagram_to_json(g: GridDiagram) -> dict:
    out = {
        "n": g.n,
        "start": str(g.start),
        "compacted": g.compacted,
        "vertices": [{"id": v.id, "x": v.x, "y": v.y} for v in g.vertices],
        "edges": [
            {"id": e.id, "src": e.src, "dst": e.dst, "label": e.label or None, "kind": e.kind}
            for e in g.edges
        ],
        "tiles": [
            {
                "id": t.id,
                "type": t.type.value,
                "left": list(t.left),
                "top": list(t.top),
                "bottom": list(t.bottom),
                "right": list(t.right),
                "eps": list(t.eps),
                "name": format_name(t.name) if t.name is not None else None,
            }
            for t in g.tiles
        ],
        "counts": {k.value: v for k, v in sorted(g.counts.items(), key=lambda kv: kv[0].value)},
    }
    if g.u is not None:
        out.update(u=str(g.u), v=str(g.v), u_prime=str(g.u_prime), v_prime=str(g.v_prime))
    return out


def to_json(g: GridDiagram) -> str:
    return json.dumps(diagram_to_json(g), indent=2, ensure_ascii=False)


def to_dot(g: GridDiagram) -> str:
    lines = ["digraph reversing {", "  node [shape=point];"]
    for v in g.vertices:
        lines.append(f'  v{v.id} [pos="{v.x},{-v.y}!"];')
    for e in g.edges:
        style = ' style=dotted arrowhead=none' if e.kind == "eps" else ""
        lines.append(f'  v{e.src} -> v{e.dst} [label="{_label(e.label)}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(g: GridDiagram) -> str:
    def xy(vid: int) -> tuple[int, int]:
        v = g.vertices[vid]
        return MARGIN + SCALE * v.x, MARGIN + SCALE * v.y

    width = MARGIN * 2 + SCALE * max((v.x for v in g.vertices), default=0)
    height = MARGIN * 2 + SCALE * max((v.y for v in g.vertices), default=0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="serif" font-size="12">'
    ]
    for t in g.tiles:
        pts = [xy(v) for v in _tile_vertices(g, t)]
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        parts.append(
            f'<text x="{cx:.1f}" y="{cy:.1f}" fill="#888" text-anchor="middle">{escape(t.type.value)}</text>'
        )
    for e in g.edges:
        (x1, y1), (x2, y2) = xy(e.src), xy(e.dst)
        dash = ' stroke-dasharray="2,3"' if e.kind == "eps" else ""
        parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash}/>')
        if e.kind != "eps":
            dx, dy = (0, -4) if e.kind == "h" else (-6, 4)
            parts.append(
                f'<text x="{(x1 + x2) / 2 + dx:.1f}" y="{(y1 + y2) / 2 + dy:.1f}" '
                f'text-anchor="middle">{escape(_label(e.label))}</text>'
            )
    for v in g.vertices:
        x, y = xy(v.id)
        parts.append(f'<circle cx="{x}" cy="{y}" r="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def to_tikz(g: GridDiagram) -> str:
    lines = ["\\begin{tikzpicture}[>=stealth, y=-1cm]"]
    for v in g.vertices:
        lines.append(f"  \\coordinate (v{v.id}) at ({v.x},{v.y});")
    for e in g.edges:
        if e.kind == "eps":
            lines.append(f"  \\draw[dotted] (v{e.src}) -- (v{e.dst});")
        else:
            side = "above" if e.kind == "h" else "left"
            lines.append(
                f"  \\draw[->] (v{e.src}) -- node[{side}] {{$s_{{{e.label}}}$}} (v{e.dst});"
            )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(g: GridDiagram, fmt: str) -> str:
    if fmt == "json":
        return to_json(g)
    if fmt == "dot":
        return to_dot(g)
    if fmt == "svg":
        return to_svg(g)
    if fmt == "tikz":
        return to_tikz(g)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
