"""Static pictures of tile sets and tilings: SVG, ASCII and binary PPM.

Every edge colour gets a display colour from a stable hash of its canonical
form unless the palette names it, so output depends only on the input and
the options.
"""

from __future__ import annotations

import colorsys
import hashlib
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .colors import Color
from .compilers.eca import HexTile, HexTileSet, HexTiling, LozengeTile
from .errors import UnsupportedRender
from .tiles import WILDCARD, TileSet, Tiling, WangTile

__all__ = ["RenderOptions", "render", "palette_color", "ascii_char", "FORMATS"]

FORMATS = ("svg", "ascii", "ppm")
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
_WILD_FILL = "#e6e6e6"
_EMPTY_FILL = "#ffffff"


@dataclass(frozen=True)
class RenderOptions:
    format: str = "svg"
    cell_size: int = 40
    palette: dict = field(default_factory=dict)
    show_labels: bool = True

    def __post_init__(self):
        if self.format not in FORMATS:
            raise UnsupportedRender(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")
        if self.cell_size < 4:
            raise UnsupportedRender("cell_size must be at least 4 pixels")


def palette_color(c: Color, palette: dict | None = None) -> str:
    """``#rrggbb`` for an edge colour: the palette entry (by label or canonical form), else a hash."""
    if palette:
        for key in (c.canonical, c.label()):
            if key in palette:
                return palette[key]
    h = hashlib.sha256(c.canonical.encode("utf-8")).digest()
    hue = int.from_bytes(h[:2], "big") / 65536
    light = 0.55 + (h[2] / 255) * 0.25
    sat = 0.45 + (h[3] / 255) * 0.45
    r, g, b = colorsys.hls_to_rgb(hue, light, sat)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def ascii_char(v) -> str:
    if v is WILDCARD:
        return "."
    if v is None:
        return " "
    return _DIGITS[v] if 0 <= v < len(_DIGITS) else "#"


def render(obj, opts: RenderOptions | None = None, *, tileset: TileSet | None = None) -> bytes:
    """Render a Tiling (with its ``tileset`` for SVG/PPM), a HexTiling, a TileSet or a HexTileSet."""
    opts = opts or RenderOptions()
    if isinstance(obj, Tiling):
        if opts.format == "ascii":
            return _ascii_tiling(obj)
        if tileset is None:
            raise UnsupportedRender("drawing a tiling needs its tile set")
        return _svg_wang(obj, tileset, opts) if opts.format == "svg" else _ppm_wang(obj, tileset, opts)
    if isinstance(obj, TileSet):
        strip = Tiling(len(obj), 1, (tuple(range(len(obj))),)) if len(obj) else None
        if opts.format == "ascii":
            return "".join(f"{ascii_char(k)}: {t.label()}\n" for k, t in enumerate(obj)).encode()
        if strip is None:
            return _svg_doc(0, 0, []) if opts.format == "svg" else _ppm_bytes(0, 0, [])
        return _svg_wang(strip, obj, opts) if opts.format == "svg" else _ppm_wang(strip, obj, opts)
    if isinstance(obj, HexTiling):
        if opts.format == "ascii":
            return "".join("".join(ascii_char(v) for v in row) + "\n" for row in obj.hexes).encode()
        if opts.format == "svg":
            return _svg_hex(obj, opts)
    if isinstance(obj, HexTileSet):
        if opts.format == "ascii":
            return "".join(f"{ascii_char(k)}: {_hex_label(t)}\n" for k, t in enumerate(obj.tiles)).encode()
        if opts.format == "svg":
            return _svg_hex_tileset(obj, opts)
    raise UnsupportedRender(f"cannot render {type(obj).__name__} as {opts.format}")


# --------------------------------------------------------------------------- helpers


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _poly(points, fill) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polygon points="{pts}" fill="{fill}" stroke="#333333" stroke-width="0.5"/>'


def _text(x, y, label, size) -> str:
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(size)}" text-anchor="middle" '
            f'dominant-baseline="central" font-family="monospace">{escape(label)}</text>')


def _svg_doc(w, h, body) -> bytes:
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">\n')
    return (head + "".join(line + "\n" for line in body) + "</svg>\n").encode("utf-8")


def _centroid(pts):
    return sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts)


def _quarters(x, y, s):
    """Triangles for the left, up, right and bottom edges of the square at (x, y)."""
    c = (x + s / 2, y + s / 2)
    return [
        [(x, y), c, (x, y + s)],
        [(x, y), (x + s, y), c],
        [(x + s, y), (x + s, y + s), c],
        [(x, y + s), c, (x + s, y + s)],
    ]


def _label_size(s: float, label: str) -> float:
    return max(4.0, min(s / 5, s * 0.9 / max(1, len(label))))


# --------------------------------------------------------------------------- Wang squares


def _ascii_tiling(t: Tiling) -> bytes:
    return "".join("".join(ascii_char(v) for v in row) + "\n" for row in t.cells).encode()


def _svg_wang(t: Tiling, ts: TileSet, opts: RenderOptions) -> bytes:
    s = opts.cell_size
    body = []
    for r, row in enumerate(t.cells):
        for c, v in enumerate(row):
            x, y = c * s, r * s
            if v is None:
                continue
            if v is WILDCARD:
                body.append(_poly([(x, y), (x + s, y), (x + s, y + s), (x, y + s)], _WILD_FILL))
                if opts.show_labels:
                    body.append(_text(x + s / 2, y + s / 2, "*", s / 3))
                continue
            tile: WangTile = ts[v]
            for tri, col in zip(_quarters(x, y, s), tile):
                body.append(_poly(tri, palette_color(col, opts.palette)))
            if opts.show_labels:
                for tri, col in zip(_quarters(x, y, s), tile):
                    cx, cy = _centroid(tri)
                    lab = col.label()
                    body.append(_text(cx, cy, lab, _label_size(s, lab)))
    return _svg_doc(t.width * s, t.height * s, body)


def _hex_rgb(h: str) -> tuple[int, int, int]:
    return int(h[1:3], 16), int(h[3:5], 16), int(h[5:7], 16)


def _ppm_bytes(w, h, pixels) -> bytes:
    return f"P6\n{w} {h}\n255\n".encode() + bytes(pixels)


def _ppm_wang(t: Tiling, ts: TileSet, opts: RenderOptions) -> bytes:
    s = opts.cell_size
    W, H = t.width * s, t.height * s
    buf = bytearray(_hex_rgb(_EMPTY_FILL) * (W * H))
    for r, row in enumerate(t.cells):
        for c, v in enumerate(row):
            if v is None:
                continue
            if v is WILDCARD:
                fills = [_hex_rgb(_WILD_FILL)] * 4
            else:
                fills = [_hex_rgb(palette_color(col, opts.palette)) for col in ts[v]]
            for py in range(s):
                for px in range(s):
                    # which triangle of the quadrisected square the pixel centre falls in
                    fx, fy = px + 0.5, py + 0.5
                    a, b = fy <= fx, fy <= s - fx
                    q = 1 if (a and b) else 2 if a else 0 if b else 3
                    if px == 0 or py == 0:
                        rgb = (51, 51, 51)
                    else:
                        rgb = fills[q]
                    o = 3 * ((r * s + py) * W + c * s + px)
                    buf[o:o + 3] = bytes(rgb)
    return _ppm_bytes(W, H, buf)


# --------------------------------------------------------------------------- hexagons and lozenges


def _hex_label(t) -> str:
    def lab(c):
        return "-" if c is None else c.label()
    if isinstance(t, HexTile):
        return f"hex <{lab(t.ul)},{lab(t.top)},{lab(t.ur)},{lab(t.bottom)}> {t.role}"
    kind = "half-lozenge" if t.half else "lozenge"
    return f"{kind} <{lab(t.nw)},{lab(t.ne)},{lab(t.sw)},{lab(t.se)}> {t.role}"


class _HexGeom:
    """Flat-topped hexagons of circumradius R touching at side vertices, rows sqrt(3) R apart."""

    def __init__(self, R: float, top_margin: float):
        self.R = R
        self.h = math.sqrt(3) / 2 * R
        self.top = top_margin

    def centre(self, k, r):
        return self.R + 2 * self.R * k, self.top + self.h + 2 * self.h * r

    def hex_regions(self, k, r):
        cx, cy = self.centre(k, r)
        R, h = self.R, self.h
        v = [(cx + R, cy), (cx + R / 2, cy - h), (cx - R / 2, cy - h), (cx - R, cy), (cx - R / 2, cy + h),
             (cx + R / 2, cy + h)]
        c = (cx, cy)
        # ul, top, ur, then the three lower edges
        return [[v[2], v[3], c], [v[1], v[2], c], [v[0], v[1], c], [v[3], v[4], c], [v[4], v[5], c], [v[5], v[0], c]]

    def lozenge_regions(self, k, r):
        cx, cy = self.centre(k, r)
        R, h = self.R, self.h
        top, left = (cx + R, cy), (cx + R / 2, cy + h)
        bottom, right = (cx + R, cy + 2 * h), (cx + 3 * R / 2, cy + h)
        c = (cx + R, cy + h)
        return [[left, top, c], [top, right, c], [left, bottom, c], [bottom, right, c]]

    def half_regions(self, k):
        cx, cy = self.centre(k, 0)
        R, h = self.R, self.h
        a, b, m = (cx + R / 2, cy - h), (cx + 3 * R / 2, cy - h), (cx + R, cy)
        mid = (cx + R, cy - h)
        return [[a, m, mid], [m, b, mid]]


def _regions_svg(body, regions, colors, opts, s):
    for tri, col in zip(regions, colors):
        body.append(_poly(tri, palette_color(col, opts.palette)))
    if opts.show_labels:
        for tri, col in zip(regions, colors):
            cx, cy = _centroid(tri)
            lab = col.label()
            body.append(_text(cx, cy, lab, _label_size(s, lab) * 0.8))


def _hex_colors(t: HexTile):
    return [t.ul, t.top, t.ur, t.bottom, t.bottom, t.bottom]


def _svg_hex(ht: HexTiling, opts: RenderOptions) -> bytes:
    s = opts.cell_size
    g = _HexGeom(s / 2, 0)
    body = []
    ts = ht.tileset
    for k, v in enumerate(ht.halves):
        t = ts[v]
        _regions_svg(body, g.half_regions(k), [t.sw, t.se], opts, s)
    for r, row in enumerate(ht.hexes):
        for k, v in enumerate(row):
            _regions_svg(body, g.hex_regions(k, r), _hex_colors(ts[v]), opts, s)
    for r, row in enumerate(ht.lozenges):
        for k, v in enumerate(row):
            t = ts[v]
            _regions_svg(body, g.lozenge_regions(k, r), [t.nw, t.ne, t.sw, t.se], opts, s)
    W = 2 * g.R * max(1, ht.width)
    H = g.top + 2 * g.h * max(1, ht.rows)
    return _svg_doc(W, H, body)


def _svg_hex_tileset(hts: HexTileSet, opts: RenderOptions) -> bytes:
    s = opts.cell_size
    g = _HexGeom(s / 2, s / 2)
    body = []
    for k, t in enumerate(hts.tiles):
        # each prototile gets its own slot two hexagon widths apart
        slot = 2 * k
        if isinstance(t, HexTile):
            _regions_svg(body, g.hex_regions(slot, 0), _hex_colors(t), opts, s)
        elif isinstance(t, LozengeTile) and not t.half:
            _regions_svg(body, g.lozenge_regions(slot, 0), [t.nw, t.ne, t.sw, t.se], opts, s)
        else:
            _regions_svg(body, g.half_regions(slot), [t.sw, t.se], opts, s)
    W = 2 * g.R * max(1, 2 * len(hts.tiles))
    H = g.top + 4 * g.h
    return _svg_doc(W, H, body)
