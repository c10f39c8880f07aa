"""Finite approximations of the attractor: rectangle covers, box counts, SVG.

The stopping set at scale delta covers the attractor by cylinder rectangles of
height at most delta (and width smaller than height times one row ratio), so
counting occupied grid cells of size delta gives the covering number N_delta
up to a bounded factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .carpet import CarpetSpec, Rect, enumerate_depth, enumerate_stopping
from .errors import BudgetExceeded

# Relative snap applied to coordinate/delta before flooring, so that edges
# meant to lie on a grid line are treated as exactly on it.
GRID_SNAP = 1e-9

# Cap on total emitted (cell per rect) pairs inside one count.
MAX_GRID_CELLS = 50_000_000


@dataclass(frozen=True)
class ApproxSet:
    delta: float
    rects: tuple[Rect, ...]
    spec_hash: str


@dataclass(frozen=True)
class NDeltaCurve:
    """Box-count samples (delta, count) with delta strictly decreasing."""

    samples: tuple[tuple[float, int], ...]

    @property
    def slope(self) -> float:
        """Least-squares slope of log(count) against log(1/delta)."""
        deltas = np.array([d for d, _ in self.samples])
        counts = np.array([c for _, c in self.samples])
        return float(np.polyfit(np.log(1.0 / deltas), np.log(counts), 1)[0])


def approx_set(spec: CarpetSpec, delta: float,
               max_cylinders: int | None = None) -> ApproxSet:
    """Rectangles of the delta-stopping cylinders."""
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must be in (0, 1], got {delta}")
    cyls = enumerate_stopping(spec, delta, max_cylinders=max_cylinders)
    return ApproxSet(delta, tuple(c.rect for c in cyls), spec.spec_hash)


def _grid_indices(vals: np.ndarray, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Cell index of each coordinate, plus a mask of values exactly on a line."""
    q = vals / delta
    r = np.rint(q)
    on_line = np.abs(q - r) <= GRID_SNAP * np.maximum(1.0, np.abs(q))
    idx = np.floor(np.where(on_line, r, q)).astype(np.int64)
    return idx, on_line


def count_grid_cells(rects, delta: float) -> int:
    """Distinct grid cells (anchored at the origin, size delta) meeting the rects.

    Cells are half-open: a point on a grid line belongs to the cell on its
    upper side, and a rect's own top/right edge sitting exactly on a grid line
    does not claim the next cell (degenerate rects claim the one cell holding
    them).  This matches the usual box-counting convention where each point
    contributes exactly one cell.
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not rects:
        return 0
    x0 = np.array([r.x0 for r in rects])
    y0 = np.array([r.y0 for r in rects])
    x1 = np.array([r.x1 for r in rects])
    y1 = np.array([r.y1 for r in rects])

    u0, _ = _grid_indices(x0, delta)
    v0, _ = _grid_indices(y0, delta)
    u1, on_u = _grid_indices(x1, delta)
    v1, on_v = _grid_indices(y1, delta)
    u1 = np.where(on_u & (x1 > x0), u1 - 1, u1)
    v1 = np.where(on_v & (y1 > y0), v1 - 1, v1)
    u1 = np.maximum(u1, u0)
    v1 = np.maximum(v1, v0)

    spans = (u1 - u0 + 1) * (v1 - v0 + 1)
    if int(spans.sum()) > MAX_GRID_CELLS:
        raise BudgetExceeded(
            f"grid count at delta={delta} touches {int(spans.sum())} cells")
    cells: set[tuple[int, int]] = set()
    for a0, a1, b0, b1 in zip(u0, u1, v0, v1):
        for u in range(a0, a1 + 1):
            for v in range(b0, b1 + 1):
                cells.add((u, v))
    return len(cells)


def box_count(spec: CarpetSpec, delta: float,
              max_cylinders: int | None = None) -> int:
    """Occupied delta-grid cells of the delta-stopping approximation."""
    return count_grid_cells(approx_set(spec, delta, max_cylinders).rects, delta)


def n_delta_curve(spec: CarpetSpec, delta_max: float, delta_min: float,
                  steps: int) -> NDeltaCurve:
    """box_count sampled on a geometric grid from delta_max down to delta_min."""
    if not 0.0 < delta_min < delta_max <= 1.0:
        raise ValueError(
            f"need 0 < delta_min < delta_max <= 1, got {delta_min}, {delta_max}")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    deltas = np.geomspace(delta_max, delta_min, steps)
    return NDeltaCurve(tuple((float(d), box_count(spec, float(d))) for d in deltas))


def render_svg(spec: CarpetSpec, depth: int | None = None,
               delta: float | None = None, size: int = 512) -> str:
    """SVG figure with one black rect per cylinder, unit square viewBox.

    Exactly one of depth/delta selects the cylinder family.  The y axis is
    flipped so row 1 (offset 0) sits at the bottom of the image.
    """
    if (depth is None) == (delta is None):
        raise ValueError("give exactly one of depth or delta")
    if depth is not None:
        rects = [c.rect for c in enumerate_depth(spec, depth)]
    else:
        rects = list(approx_set(spec, delta).rects)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"'
        ' viewBox="0 0 1 1">',
        '<g fill="black" stroke="none" opacity="1">',
    ]
    for r in rects:
        lines.append(
            f'<rect x="{r.x0!r}" y="{1.0 - r.y1!r}" '
            f'width="{r.w!r}" height="{r.h!r}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
