"""SVG crease patterns: directrices, foci, parabolas, both cubics, intersections, fold lines."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .cubic import trace_curve
from .geometry import FoldConfig, FoldSolution, Line, ParabolaFold, Point
from .intersect import cubics_for_config, intersect_config

DEFAULT_STYLES = {
    "directrix": {"stroke": "#555555", "stroke-width": "1.2", "stroke-dasharray": "6 4", "fill": "none"},
    "parabola": {"stroke": "#9a9a9a", "stroke-width": "1", "fill": "none"},
    "cubic1": {"stroke": "#c0392b", "stroke-width": "1.6", "fill": "none"},
    "cubic2": {"stroke": "#2457a6", "stroke-width": "1.6", "fill": "none"},
    "fold": {"stroke": "#1e8449", "stroke-width": "1.4", "fill": "none"},
    "point": {"fill": "#000000"},
    "intersection": {"fill": "#f39c12", "stroke": "#000000", "stroke-width": "0.8"},
    "label": {"font-family": "sans-serif", "font-size": "13", "fill": "#000000"},
}

MARKER_NAMES = "GHIJKLM"


@dataclass
class RenderOptions:
    width: int = 720
    margin: float = 0.10
    chord_fraction: float = 0.005  # max chord deviation relative to the viewport
    show_parabolas: bool = True
    styles: dict = field(default_factory=dict)
    title: str | None = None

    def style(self, tag: str) -> dict:
        out = dict(DEFAULT_STYLES.get(tag, {}))
        out.update(self.styles.get(tag, {}))
        return out


@dataclass
class Entity:
    tag: str
    kind: str  # "polyline", "point", "label"
    data: object
    label: str | None = None


@dataclass
class CreasePattern:
    entities: list[Entity]
    viewport: tuple[float, float, float, float]
    styles: dict

    def count(self, tag: str) -> int:
        return sum(1 for e in self.entities if e.tag == tag)


def _float_line(l: Line) -> Line:
    return Line(float(l.u), float(l.v), float(l.w))


def _float_point(p: Point) -> Point:
    return Point(float(p.x), float(p.y))


def _foot(p: Point, l: Line) -> tuple[float, float]:
    u, v, w = float(l.u), float(l.v), float(l.w)
    x, y = p.as_float()
    k = (u * x + v * y + w) / (u * u + v * v)
    return x - k * u, y - k * v


def fit_viewport(pts: list[tuple[float, float]], margin: float) -> tuple[float, float, float, float]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin, 1.0)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    # square viewport keeps angles undistorted
    half = span / 2 * (1 + 2 * margin)
    return cx - half, cy - half, cx + half, cy + half


def clip_line(l: Line, box) -> list[tuple[float, float]] | None:
    """Liang-Barsky clip of an infinite line to the box."""
    xmin, ymin, xmax, ymax = box
    u, v, w = float(l.u), float(l.v), float(l.w)
    n2 = u * u + v * v
    x0, y0 = -w * u / n2, -w * v / n2
    dx, dy = v, -u
    t0, t1 = -math.inf, math.inf
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 > t1:
        return None
    return [(x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)]


def _parabola_trace(par: ParabolaFold, box, max_dev: float) -> list[list[tuple]]:
    xmin, ymin, xmax, ymax = box
    span = xmax - xmin
    n = math.hypot(float(par.directrix.u), float(par.directrix.v))
    scale = 2 * span / n
    pts = []
    for k in range(1, 400):
        th = -math.pi / 2 + math.pi * k / 400
        pts.append(par.point_at(scale * math.tan(th)).as_float())
    lines, cur = [], []
    for p in pts:
        if xmin <= p[0] <= xmax and ymin <= p[1] <= ymax:
            cur.append(p)
        elif cur:
            if len(cur) > 1:
                lines.append(cur)
            cur = []
    if len(cur) > 1:
        lines.append(cur)
    return lines


def build_crease_pattern(cfg: FoldConfig, sol: FoldSolution | None = None,
                         opts: RenderOptions | None = None) -> CreasePattern:
    opts = opts or RenderOptions()
    inter = intersect_config(cfg, precision=1e-15)
    pts = [p.point.as_float() for p in inter.points]
    anchors = [cfg.P.as_float(), cfg.R.as_float(), cfg.Q.as_float(), cfg.S.as_float(),
               _foot(cfg.P, cfg.m), _foot(cfg.R, cfg.n)] + pts
    box = fit_viewport(anchors, opts.margin)
    max_dev = opts.chord_fraction * (box[2] - box[0])
    ents: list[Entity] = []
    for name, l in (("m", cfg.m), ("n", cfg.n)):
        seg = clip_line(l, box)
        if seg:
            ents.append(Entity("directrix", "polyline", seg, name))
    fpars = [ParabolaFold(_float_point(cfg.P), _float_line(cfg.m)),
             ParabolaFold(_float_point(cfg.R), _float_line(cfg.n))]
    if opts.show_parabolas:
        for par in fpars:
            for line in _parabola_trace(par, box, max_dev):
                ents.append(Entity("parabola", "polyline", line))
    c1, c2 = cubics_for_config(cfg)
    for tag, cub, par in (("cubic1", c1, fpars[0]), ("cubic2", c2, fpars[1])):
        fcub = type(cub)(cub.curve, float(cub.e), float(cub.f), parabola=par)
        for line in trace_curve(fcub, box, max_dev):
            ents.append(Entity(tag, "polyline", line))
    if sol is not None:
        for name, l in (("l1", sol.l1), ("l2", sol.l2)):
            seg = clip_line(_float_line(l), box)
            if seg:
                ents.append(Entity("fold", "polyline", seg, name))
    for name, p in (("P", cfg.P), ("Q", cfg.Q), ("R", cfg.R), ("S", cfg.S)):
        ents.append(Entity("point", "point", p.as_float(), name))
    for name, p in zip(MARKER_NAMES, inter.points):
        ents.append(Entity("intersection", "point", p.point.as_float(), name))
    styles = {tag: opts.style(tag) for tag in DEFAULT_STYLES}
    return CreasePattern(ents, box, styles)


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _attrs(style: dict) -> str:
    return " ".join(f'{k}="{escape(str(v))}"' for k, v in sorted(style.items()))


def to_svg(cp: CreasePattern, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    xmin, ymin, xmax, ymax = cp.viewport
    W = opts.width
    k = W / (xmax - xmin)
    H = int(round((ymax - ymin) * k))

    def tx(p):
        return _fmt((p[0] - xmin) * k), _fmt((ymax - p[1]) * k)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<desc>viewport {xmin:.6g} {ymin:.6g} {xmax:.6g} {ymax:.6g}</desc>',
    ]
    if opts.title:
        out.append(f"<title>{escape(opts.title)}</title>")
    out.append(f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>')
    order = ["parabola", "directrix", "cubic1", "cubic2", "fold", "point", "intersection"]
    for tag in order:
        style = cp.styles.get(tag, {})
        for ent in (e for e in cp.entities if e.tag == tag):
            if ent.kind == "polyline":
                pts = " ".join(",".join(tx(p)) for p in ent.data)
                name = f' data-name="{ent.label}"' if ent.label else ""
                out.append(f'<polyline class="{tag}"{name} points="{pts}" {_attrs(style)}/>')
            else:
                x, y = tx(ent.data)
                r = "5" if tag == "intersection" else "3"
                out.append(
                    f'<circle class="{tag}" data-name="{ent.label}" data-x="{ent.data[0]:.12g}" '
                    f'data-y="{ent.data[1]:.12g}" cx="{x}" cy="{y}" r="{r}" {_attrs(style)}/>'
                )
                out.append(
                    f'<text class="label" x="{_fmt(float(x) + 7)}" y="{_fmt(float(y) - 7)}" '
                    f'{_attrs(cp.styles.get("label", {}))}>{escape(ent.label or "")}</text>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(cfg: FoldConfig, sol: FoldSolution | None = None, opts: RenderOptions | None = None) -> str:
    """Deterministic SVG document for the configuration (and fold lines when ``sol`` is given)."""
    opts = opts or RenderOptions()
    return to_svg(build_crease_pattern(cfg, sol, opts), opts)
