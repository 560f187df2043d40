"""Pak's size-preserving bijection between multiset diagrams and plane
partitions: forward transform, inverse, staircase (skew) variant, and exact
cost accounting of the diagonal sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Diagram, IndexDomain, PlanePartition, SkewFilling, max_hook_length
from .oracle import sweep_cost

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@dataclass(frozen=True)
class TransformStats:
    """Exact work accounting of one transform run.

    ``diagonal_updates`` counts every cell update of the sweep (the write at
    the scanned cell plus each up-right diagonal toggle); on a full l x w
    rectangle it equals sweep_cost(l, w).
    """

    diagonal_updates: int
    length: int
    width: int
    max_hook: int


# The kernels work on a scratch copy padded by one zero cell on each side,
# so every out-of-rectangle read is an ordinary in-bounds read of 0. The
# logical cell (i, j) lives at scratch[i + 1, j + 1].


@njit(cache=True)
def _forward_kernel(S):
    L = S.shape[0] - 2
    W = S.shape[1] - 2
    updates = 0
    for i in range(L - 1, -1, -1):
        for j in range(W - 1, -1, -1):
            up = S[i + 2, j + 1]
            ri = S[i + 1, j + 2]
            S[i + 1, j + 1] += up if up > ri else ri
            updates += 1
            cmax = min(L - 1 - i, W - 1 - j)
            for c in range(1, cmax + 1):
                x = i + c + 1
                y = j + c + 1
                up = S[x + 1, y]
                ri = S[x, y + 1]
                dn = S[x - 1, y]
                le = S[x, y - 1]
                hi = up if up > ri else ri
                lo = dn if dn < le else le
                S[x, y] = hi + lo - S[x, y]
                updates += 1
    return updates


@njit(cache=True)
def _inverse_kernel(S):
    L = S.shape[0] - 2
    W = S.shape[1] - 2
    for i in range(L):
        for j in range(W):
            cmax = min(L - 1 - i, W - 1 - j)
            for c in range(cmax, 0, -1):
                x = i + c + 1
                y = j + c + 1
                up = S[x + 1, y]
                ri = S[x, y + 1]
                dn = S[x - 1, y]
                le = S[x, y - 1]
                hi = up if up > ri else ri
                lo = dn if dn < le else le
                S[x, y] = hi + lo - S[x, y]
            up = S[i + 2, j + 1]
            ri = S[i + 1, j + 2]
            S[i + 1, j + 1] -= up if up > ri else ri


@njit(cache=True)
def _forward_skew_kernel(S, row_start):
    a = S.shape[0] - 2
    b = S.shape[1] - 2
    updates = 0
    for i in range(a - 1, -1, -1):
        for j in range(b - 1, -1, -1):
            if i < row_start[j]:
                continue
            up = S[i + 2, j + 1]
            ri = S[i + 1, j + 2]
            S[i + 1, j + 1] += up if up > ri else ri
            updates += 1
            # the domain is upward closed, so the whole diagonal stays inside
            # it until the rectangle ends; off-domain reads below-left are 0
            # because those scratch cells are never written
            cmax = min(a - 1 - i, b - 1 - j)
            for c in range(1, cmax + 1):
                x = i + c + 1
                y = j + c + 1
                up = S[x + 1, y]
                ri = S[x, y + 1]
                dn = S[x - 1, y]
                le = S[x, y - 1]
                hi = up if up > ri else ri
                lo = dn if dn < le else le
                S[x, y] = hi + lo - S[x, y]
                updates += 1
    return updates


def _padded_scratch(entries: np.ndarray) -> np.ndarray:
    l, w = entries.shape
    S = np.zeros((l + 2, w + 2), dtype=np.int64)
    S[1 : l + 1, 1 : w + 1] = entries
    return S


def pak_forward(d: Diagram) -> tuple[PlanePartition, TransformStats]:
    """Transform a diagram into the plane partition of the same size.

    Scans the tight bounding rectangle in reverse-lexicographic order; at
    each cell adds the max of the upper/right neighbours, then toggles every
    cell of the up-right diagonal. Cost is the rectangle's sweep_cost.
    """
    entries = d.entries
    if entries.size == 0:
        return PlanePartition(np.zeros((0, 0), dtype=np.int64)), TransformStats(0, 0, 0, 0)
    hook = max_hook_length(d)
    S = _padded_scratch(entries)
    updates = int(_forward_kernel(S))
    out = S[1:-1, 1:-1]
    return (
        PlanePartition(out),
        TransformStats(updates, entries.shape[0], entries.shape[1], hook),
    )


def pak_inverse(p: PlanePartition) -> Diagram:
    """Inverse transform: replays the forward scan in exactly reversed order,
    undoing each involutive step (diagonal toggles first, then the added max).
    """
    if not isinstance(p, PlanePartition):
        raise ValueError("pak_inverse expects a validated PlanePartition")
    entries = p.entries
    if entries.size == 0:
        return Diagram(np.zeros((0, 0), dtype=np.int64))
    S = _padded_scratch(entries)
    _inverse_kernel(S)
    out = S[1:-1, 1:-1]
    if out.size and int(out.min()) < 0:
        raise ValueError("input is not in the image of the forward transform")
    return Diagram(out)


def pak_forward_skew(f: SkewFilling) -> tuple[SkewFilling, TransformStats]:
    """Staircase variant: the same sweep restricted to the domain cells.

    The scan order is the restriction of the rectangle's reverse scan to the
    domain; reads at cells outside the domain count as 0. The output is a
    skew plane partition of the same (hook-weighted) size.
    """
    dom = f.domain
    S = _padded_scratch(f.values)
    updates = int(_forward_skew_kernel(S, dom.row_start))
    out = SkewFilling(dom, S[1:-1, 1:-1])
    if not out.is_skew_partition():
        raise AssertionError("skew transform produced a non-monotone filling")
    hooks = dom.hooks[f.values > 0]
    max_hook = int(hooks.max()) if hooks.size else 0
    return out, TransformStats(updates, dom.a, dom.b, max_hook)


def transform_cost(d: Diagram) -> int:
    """Exact diagonal_updates count a forward run performs on this diagram.

    The sweep visits every cell of the tight bounding rectangle regardless of
    the entry values, so the count is the rectangle's sweep_cost.
    """
    if d.entries.size == 0:
        return 0
    return sweep_cost(d.length, d.width)


def transform_cost_skew(dom: IndexDomain) -> int:
    """diagonal_updates of the skew sweep: one write per domain cell plus its
    in-rectangle diagonal length."""
    total = 0
    for j in range(dom.b):
        for i in range(int(dom.row_start[j]), dom.a):
            total += 1 + min(dom.a - 1 - i, dom.b - 1 - j)
    return total
