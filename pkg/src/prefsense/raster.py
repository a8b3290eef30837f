"""Rasterized derivative-magnitude fields and region figures.

A raster samples the derivative magnitude at cell centers over the open
unit square, classifies each cell by the largest sensitivity threshold it
exceeds, and exports either the raw field (CSV) or layered filled
contours (SVG, extracted with marching squares).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "DEFAULT_THRESHOLDS",
    "DEFAULT_RESOLUTION",
    "RasterGrid",
    "raster_bt",
    "raster_pl",
    "export",
    "read_csv_grid",
]

DEFAULT_THRESHOLDS = (1.01, 2.0, 3.0, 5.0, 10.0)
DEFAULT_RESOLUTION = 512

_MARGIN = 60
_PLOT = 600
_SIZE = _MARGIN * 2 + _PLOT

# Light-to-dark blues; class 0 (below every threshold) is the lightest.
_PALETTE = (
    "#f7fbff",
    "#deebf7",
    "#c6dbef",
    "#9ecae1",
    "#6baed6",
    "#4292c6",
    "#2171b5",
    "#08519c",
    "#08306b",
)


@dataclass(frozen=True)
class RasterGrid:
    """Derivative magnitudes sampled at cell centers ((i+1/2)/res, (j+1/2)/res).

    values and classes are indexed [ix, iy]; classes[i, j] counts how many
    thresholds the magnitude exceeds (0 = below all). Cells where the
    derivative is undefined are flagged in `singular` and carry +inf, so
    they classify above every threshold instead of being dropped.
    """

    resolution: int
    thresholds: tuple[float, ...]
    values: np.ndarray
    classes: np.ndarray
    singular: np.ndarray
    kind: str
    which: str
    xlabel: str
    ylabel: str

    def cell_centers(self) -> np.ndarray:
        return (np.arange(self.resolution) + 0.5) / self.resolution


def _check_thresholds(thresholds) -> tuple[float, ...]:
    ts = tuple(float(t) for t in thresholds)
    if not ts:
        raise DomainError("at least one threshold is required")
    if any(t <= 0 or not np.isfinite(t) for t in ts):
        raise DomainError(f"thresholds must be positive and finite, got {ts}")
    st = tuple(sorted(set(ts)))
    if len(st) != len(ts):
        raise DomainError(f"thresholds must be distinct, got {ts}")
    return st


def _check_resolution(resolution: int) -> int:
    resolution = int(resolution)
    if resolution < 64:
        raise DomainError(f"resolution must be at least 64, got {resolution}")
    return resolution


def _classify(values: np.ndarray, thresholds: tuple[float, ...]) -> np.ndarray:
    classes = np.zeros(values.shape, dtype=np.int32)
    for t in thresholds:
        classes += values > t
    return classes


def raster_bt(
    which: str = "d_pik",
    thresholds=DEFAULT_THRESHOLDS,
    resolution: int = DEFAULT_RESOLUTION,
) -> RasterGrid:
    """Rasterize the pairwise composition derivative over (p_ik, p_kj).

    which selects the magnitude field: "d_pik" for the derivative with
    respect to the x coordinate, "d_pkj" for the y coordinate.
    """
    if which not in ("d_pik", "d_pkj"):
        raise DomainError(f"which must be 'd_pik' or 'd_pkj', got {which!r}")
    thresholds = _check_thresholds(thresholds)
    resolution = _check_resolution(resolution)
    centers = (np.arange(resolution) + 0.5) / resolution
    x, y = np.meshgrid(centers, centers, indexing="ij")
    base = x + y - 2.0 * x * y - 1.0
    denom = base * base
    numer = y * (1.0 - y) if which == "d_pik" else x * (1.0 - x)
    singular = denom == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = numer / denom
    values[singular] = np.inf
    return RasterGrid(
        resolution=resolution,
        thresholds=thresholds,
        values=values,
        classes=_classify(values, thresholds),
        singular=singular,
        kind="bt",
        which=which,
        xlabel="p_ik",
        ylabel="p_kj",
    )


def raster_pl(
    which: str = "d_uv",
    alpha: float = 1.01,
    beta: float = 0.99,
    thresholds=DEFAULT_THRESHOLDS,
    resolution: int = DEFAULT_RESOLUTION,
) -> RasterGrid:
    """Rasterize the K-tuple swap-pair derivative over (p_uv, p_vu)."""
    if which not in ("d_uv", "d_vu"):
        raise DomainError(f"which must be 'd_uv' or 'd_vu', got {which!r}")
    alpha = float(alpha)
    beta = float(beta)
    if alpha < 1.0 or not 0.0 < beta <= 1.0:
        raise DomainError(f"need alpha >= 1 and 0 < beta <= 1, got {alpha!r}, {beta!r}")
    thresholds = _check_thresholds(thresholds)
    resolution = _check_resolution(resolution)
    centers = (np.arange(resolution) + 0.5) / resolution
    x, y = np.meshgrid(centers, centers, indexing="ij")
    denom = (alpha * x + y) ** 2
    numer = beta * y if which == "d_uv" else beta * x
    singular = denom == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = numer / denom
    values[singular] = np.inf
    return RasterGrid(
        resolution=resolution,
        thresholds=thresholds,
        values=values,
        classes=_classify(values, thresholds),
        singular=singular,
        kind="pl",
        which=which,
        xlabel="p_uv",
        ylabel="p_vu",
    )


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def _csv_text(grid: RasterGrid) -> str:
    centers = grid.cell_centers()
    lines = ["x,y,value,class"]
    res = grid.resolution
    values = grid.values
    classes = grid.classes
    for ix in range(res):
        cx = f"{centers[ix]:.9g}"
        for iy in range(res):
            lines.append(f"{cx},{centers[iy]:.9g},{values[ix, iy]:.9g},{classes[ix, iy]}")
    return "\n".join(lines) + "\n"


def read_csv_grid(path) -> dict[str, np.ndarray]:
    """Re-parse an exported CSV into flat x/y/value/class arrays."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,y,value,class":
            raise DomainError(f"unexpected CSV header {header!r} in {path}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    data = np.array([[float(a), float(b), float(c), int(d)] for a, b, c, d in rows])
    return {
        "x": data[:, 0],
        "y": data[:, 1],
        "value": data[:, 2],
        "class": data[:, 3].astype(int),
    }


# ---------------------------------------------------------------------------
# SVG export (marching squares)
# ---------------------------------------------------------------------------

_EDGE_B = 0  # bottom, top, left, right of a marching cell
_EDGE_T = 1
_EDGE_L = 2
_EDGE_R = 3

# case -> list of (edge, edge) pairs the contour connects; cases 5 and 10
# are saddles resolved by the cell-center mean.
_SEGMENTS = {
    1: [(_EDGE_L, _EDGE_B)],
    2: [(_EDGE_B, _EDGE_R)],
    3: [(_EDGE_L, _EDGE_R)],
    4: [(_EDGE_R, _EDGE_T)],
    6: [(_EDGE_B, _EDGE_T)],
    7: [(_EDGE_L, _EDGE_T)],
    8: [(_EDGE_T, _EDGE_L)],
    9: [(_EDGE_B, _EDGE_T)],
    11: [(_EDGE_R, _EDGE_T)],
    12: [(_EDGE_L, _EDGE_R)],
    13: [(_EDGE_B, _EDGE_R)],
    14: [(_EDGE_L, _EDGE_B)],
}


def _edge_key(edge: int, i: int, j: int) -> tuple[str, int, int]:
    if edge == _EDGE_B:
        return ("h", i, j)
    if edge == _EDGE_T:
        return ("h", i, j + 1)
    if edge == _EDGE_L:
        return ("v", i, j)
    return ("v", i + 1, j)


def _contour_loops(values: np.ndarray, level: float, resolution: int):
    """Closed loops of the level set {field > level}, padded so every
    region touching the domain boundary closes along it."""
    res = resolution
    pad_val = level - max(1.0, abs(level))
    v = np.full((res + 2, res + 2), pad_val)
    v[1:-1, 1:-1] = values
    inside = v > level
    case = (
        inside[:-1, :-1].astype(np.int8)
        + 2 * inside[1:, :-1]
        + 4 * inside[1:, 1:]
        + 8 * inside[:-1, 1:]
    )
    adjacency: dict[tuple[str, int, int], list] = {}
    for i, j in np.argwhere((case != 0) & (case != 15)):
        c = int(case[i, j])
        if c in (5, 10):
            center = (v[i, j] + v[i + 1, j] + v[i, j + 1] + v[i + 1, j + 1]) / 4.0
            if c == 5:
                segs = [(_EDGE_B, _EDGE_R), (_EDGE_T, _EDGE_L)] if center > level else [
                    (_EDGE_L, _EDGE_B),
                    (_EDGE_R, _EDGE_T),
                ]
            else:
                segs = [(_EDGE_L, _EDGE_B), (_EDGE_R, _EDGE_T)] if center > level else [
                    (_EDGE_B, _EDGE_R),
                    (_EDGE_T, _EDGE_L),
                ]
        else:
            segs = _SEGMENTS[c]
        for e0, e1 in segs:
            k0 = _edge_key(e0, int(i), int(j))
            k1 = _edge_key(e1, int(i), int(j))
            adjacency.setdefault(k0, []).append(k1)
            adjacency.setdefault(k1, []).append(k0)

    def point_of(key) -> tuple[float, float]:
        axis, gi, gj = key
        if axis == "h":
            v0, v1 = v[gi, gj], v[gi + 1, gj]
        else:
            v0, v1 = v[gi, gj], v[gi, gj + 1]
        if not (np.isfinite(v0) and np.isfinite(v1)):
            t = 0.5 if not np.isfinite(v0) and not np.isfinite(v1) else (
                0.0 if not np.isfinite(v0) else 1.0
            )
        else:
            t = (level - v0) / (v1 - v0)
        cx = (gi - 0.5) / res
        cy = (gj - 0.5) / res
        if axis == "h":
            cx += t / res
        else:
            cy += t / res
        return (min(max(cx, 0.0), 1.0), min(max(cy, 0.0), 1.0))

    loops = []
    visited: set = set()
    for start in adjacency:
        if start in visited:
            continue
        loop = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nbrs = adjacency[cur]
            nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
            if nxt == start:
                break
            loop.append(nxt)
            visited.add(nxt)
            prev, cur = cur, nxt
        loops.append([point_of(k) for k in loop])
    return loops


def _to_px(x: float, y: float) -> tuple[float, float]:
    return (_MARGIN + x * _PLOT, _MARGIN + (1.0 - y) * _PLOT)


def _palette_color(k: int, n_classes: int) -> str:
    if n_classes <= 1:
        return _PALETTE[0]
    idx = round(k * (len(_PALETTE) - 1) / (n_classes - 1))
    return _PALETTE[idx]


def _svg_text(grid: RasterGrid) -> str:
    n_classes = len(grid.thresholds) + 1
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>',
        f'<g id="class-0"><rect x="{_MARGIN}" y="{_MARGIN}" width="{_PLOT}" '
        f'height="{_PLOT}" fill="{_palette_color(0, n_classes)}"/></g>',
    ]
    for k, level in enumerate(grid.thresholds):
        loops = _contour_loops(grid.values, level, grid.resolution)
        chunks = []
        for loop in loops:
            pts = " L".join(f"{_to_px(x, y)[0]:.2f} {_to_px(x, y)[1]:.2f}" for x, y in loop)
            chunks.append(f"M{pts} Z")
        d = " ".join(chunks)
        parts.append(
            f'<g id="class-{k + 1}"><path d="{d}" fill="{_palette_color(k + 1, n_classes)}" '
            'fill-rule="evenodd" stroke="none"/></g>'
        )
    frame_style = 'fill="none" stroke="#000000" stroke-width="1"'
    parts.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_PLOT}" height="{_PLOT}" {frame_style}/>'
    )
    for tick in (0.0, 0.5, 1.0):
        px, py = _to_px(tick, 0.0)
        parts.append(
            f'<text x="{px:.2f}" y="{py + 20:.2f}" font-size="14" '
            f'text-anchor="middle" font-family="sans-serif">{tick:g}</text>'
        )
        px, py = _to_px(0.0, tick)
        parts.append(
            f'<text x="{px - 10:.2f}" y="{py + 5:.2f}" font-size="14" '
            f'text-anchor="end" font-family="sans-serif">{tick:g}</text>'
        )
    cx = _MARGIN + _PLOT / 2
    parts.append(
        f'<text x="{cx}" y="{_SIZE - 12}" font-size="16" text-anchor="middle" '
        f'font-family="sans-serif">{grid.xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{_MARGIN + _PLOT / 2}" font-size="16" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 16 {_MARGIN + _PLOT / 2})">'
        f"{grid.ylabel}</text>"
    )
    for k, level in enumerate(grid.thresholds):
        ly = _MARGIN + 14 + 18 * k
        lx = _MARGIN + _PLOT + 6
        parts.append(
            f'<rect x="{lx}" y="{ly - 10}" width="12" height="12" '
            f'fill="{_palette_color(k + 1, n_classes)}" stroke="#000000" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{lx + 16}" y="{ly}" font-size="11" '
            f'font-family="sans-serif">&gt; {level:g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export(grid: RasterGrid, format: str, path) -> str:
    """Write a grid to disk as CSV or SVG; returns the path written.

    Output is a pure function of the grid, so re-exporting the same grid
    produces a byte-identical file.
    """
    if format == "csv":
        text = _csv_text(grid)
    elif format == "svg":
        text = _svg_text(grid)
    else:
        raise DomainError(f"format must be 'csv' or 'svg', got {format!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"failed to write {format} export to {path!r}: {exc}") from exc
    return str(path)
