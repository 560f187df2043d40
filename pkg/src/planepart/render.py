"""Static rendering of sampled partitions: hand-rolled SVG isometric cube
heaps and binary PGM/PPM grayscale height maps. Output bytes are a pure
function of the input grid, so renders are golden-testable.
"""

from __future__ import annotations

import numpy as np

# Columns beyond this bound would produce unreasonably large vector files;
# callers are pointed at the height map instead.
MAX_SVG_COLUMNS = 300_000

_SCALE = 12.0
_MARGIN = 10.0

_TOP = "#ede9dd"
_FACE_I = "#9a8f7f"
_FACE_J = "#c9c0ae"
_STROKE = "#3d3a35"


def _project(x: float, y: float, z: float) -> tuple[float, float]:
    """Orthographic view along (1,1,1); +z points up on the canvas."""
    u = (x - y) * 0.8660254037844386
    v = (x + y) * 0.5 - z
    return u, v


def _grid_from_rows(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("expected a 2D grid of heights")
    return arr


def render_svg(heights) -> str:
    """Isometric cube-heap drawing of a height grid indexed [i, j].

    Per column only the exposed part of each face is emitted: the top at the
    column height and the two side strips above the neighbouring columns.
    Columns are painted far to near (increasing i + j), which is back-to-front
    for the corner view.
    """
    h = _grid_from_rows(heights)
    l, w = h.shape if h.size else (0, 0)
    if l * w > MAX_SVG_COLUMNS:
        raise ValueError(
            f"grid of {l * w} columns is too large for an svg render; "
            "use the ppm height map instead"
        )
    maxh = int(h.max()) if h.size else 0

    # canvas extents over all corner projections
    corners = [(0, w, 0), (l, 0, 0), (0, 0, maxh), (l, w, 0), (0, 0, 0), (l, 0, maxh), (0, w, maxh)]
    us = [_project(*c)[0] for c in corners]
    vs = [_project(*c)[1] for c in corners]
    u0, u1 = min(us), max(us)
    v0, v1 = min(vs), max(vs)
    width = (u1 - u0) * _SCALE + 2 * _MARGIN
    height = (v1 - v0) * _SCALE + 2 * _MARGIN

    def pt(x, y, z):
        u, v = _project(x, y, z)
        return f"{(u - u0) * _SCALE + _MARGIN:.2f},{(v - v0) * _SCALE + _MARGIN:.2f}"

    paths = []

    def face(color, *pts):
        p = " L ".join(pt(*q) for q in pts)
        paths.append(f'<path d="M {p} Z" fill="{color}" stroke="{_STROKE}" stroke-width="0.6"/>')

    order = sorted(
        ((i, j) for i in range(l) for j in range(w) if h[i, j] > 0),
        key=lambda ij: (ij[0] + ij[1], ij[0]),
    )
    for i, j in order:
        z = int(h[i, j])
        zi = int(h[i + 1, j]) if i + 1 < l else 0
        zj = int(h[i, j + 1]) if j + 1 < w else 0
        face(_TOP, (i, j, z), (i + 1, j, z), (i + 1, j + 1, z), (i, j + 1, z))
        if z > zi:
            face(_FACE_I, (i + 1, j, zi), (i + 1, j + 1, zi), (i + 1, j + 1, z), (i + 1, j, z))
        if z > zj:
            face(_FACE_J, (i, j + 1, zj), (i + 1, j + 1, zj), (i + 1, j + 1, z), (i, j + 1, z))

    body = "\n".join(paths)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.2f} {height:.2f}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )


def render_ppm(heights) -> bytes:
    """Binary grayscale height map (PGM, P5), one pixel per column.

    Rows are written top ordinate first so the image matches the bottom-left
    origin convention; levels scale linearly with 255 at the maximum height.
    """
    h = _grid_from_rows(heights)
    if h.size == 0:
        return b"P5\n1 1\n255\n\x00"
    l, w = h.shape
    maxh = int(h.max())
    if maxh == 0:
        pix = np.zeros((w, l), dtype=np.uint8)
    else:
        scaled = (h.astype(np.float64) * (255.0 / maxh)).astype(np.uint8)
        pix = scaled.T[::-1, :]
    header = f"P5\n{l} {w}\n255\n".encode()
    return header + pix.tobytes()
