"""Grid-valued objects: multiset diagrams, plane partitions, staircase index
domains and skew fillings, plus their size and hook-length computations.

Conventions used throughout the package:

* grids are indexed ``[i, j]`` with ``i`` the abscissa and ``j`` the ordinate,
  ``(0, 0)`` sitting at the bottom-left corner;
* reads outside a grid always count as 0;
* all entry arrays are ``int64`` and frozen (read-only) after construction,
  so instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Total sizes are validated against this bound so that any max/min/add
# combination of two entries still fits in 64 bits.
MAX_TOTAL_SIZE = 1 << 62


def _as_grid(entries) -> np.ndarray:
    arr = np.array(entries, dtype=np.int64, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D array of entries, got shape {arr.shape}")
    if arr.size and int(arr.min()) < 0:
        raise ValueError("entries must be non-negative")
    return arr


def _tight_slice(arr: np.ndarray) -> np.ndarray:
    """Trim zero rows/columns so the bounding rectangle is minimal."""
    if arr.size == 0 or not arr.any():
        return np.zeros((0, 0), dtype=np.int64)
    nz_i = np.flatnonzero(arr.any(axis=1))
    nz_j = np.flatnonzero(arr.any(axis=0))
    return arr[: nz_i[-1] + 1, : nz_j[-1] + 1]


def hook_weights(length: int, width: int) -> np.ndarray:
    """Grid of i + j + 1 over a full length x width rectangle."""
    return (
        np.arange(length, dtype=np.int64)[:, None]
        + np.arange(width, dtype=np.int64)[None, :]
        + 1
    )


def _checked_weighted_sum(entries: np.ndarray, weights: np.ndarray) -> int:
    """Exact sum(entries * weights) with an overflow guard on int64."""
    if entries.size == 0:
        return 0
    # Cheap magnitude guard: the float estimate is within relative 1e-12 of
    # the true value, far finer than the headroom below 2^63.
    approx = float(entries.astype(np.float64).ravel() @ weights.astype(np.float64).ravel())
    if approx > float(MAX_TOTAL_SIZE):
        raise OverflowError(f"size exceeds the supported bound 2^62 (~{approx:.3e})")
    return int(entries.ravel() @ weights.ravel())


class Diagram:
    """Dense grid of multiplicities; cell (i, j) carries weight i + j + 1.

    The bounding rectangle is tight unless ``trim=False`` is passed, in which
    case explicit zero padding is preserved.
    """

    __slots__ = ("entries", "__dict__")

    def __init__(self, entries, trim: bool = True):
        arr = _as_grid(entries)
        if trim:
            arr = _tight_slice(arr)
        arr.flags.writeable = False
        self.entries = arr
        _ = self.size  # validates the 2^62 bound eagerly

    @classmethod
    def from_cells(cls, cells: dict) -> "Diagram":
        """Build from a {(i, j): multiplicity} mapping."""
        if not cells:
            return cls(np.zeros((0, 0), dtype=np.int64))
        length = max(i for i, _ in cells) + 1
        width = max(j for _, j in cells) + 1
        grid = np.zeros((length, width), dtype=np.int64)
        for (i, j), m in cells.items():
            if i < 0 or j < 0:
                raise ValueError("cell coordinates must be non-negative")
            grid[i, j] = m
        return cls(grid)

    @property
    def length(self) -> int:
        return self.entries.shape[0]

    @property
    def width(self) -> int:
        return self.entries.shape[1]

    @cached_property
    def size(self) -> int:
        return diagram_size(self)

    def cells(self) -> dict:
        """Non-zero cells as {(i, j): multiplicity}."""
        ii, jj = np.nonzero(self.entries)
        return {(int(i), int(j)): int(self.entries[i, j]) for i, j in zip(ii, jj)}

    def __eq__(self, other):
        return isinstance(other, Diagram) and np.array_equal(
            _tight_slice(self.entries), _tight_slice(other.entries)
        )

    def __hash__(self):
        return hash(_tight_slice(self.entries).tobytes())

    def __repr__(self):
        return f"Diagram({self.entries.tolist()!r})"


def diagram_size(d: Diagram) -> int:
    """Weighted size sum m_ij * (i + j + 1); invariant under zero padding."""
    e = d.entries
    if e.size == 0:
        return 0
    return _checked_weighted_sum(e, hook_weights(*e.shape))


def max_hook_length(d: Diagram) -> int:
    """Largest i + j + 1 over non-zero cells; 0 for the empty diagram."""
    e = d.entries
    if e.size == 0:
        return 0
    mask = e > 0
    if not mask.any():
        return 0
    return int(hook_weights(*e.shape)[mask].max())


def validate_plane_partition(entries) -> bool:
    """True iff the grid is non-negative and non-increasing along both axes.

    Reads beyond the grid count as 0, so only in-grid comparisons matter.
    """
    try:
        arr = np.asarray(entries, dtype=np.int64)
    except (TypeError, ValueError, OverflowError):
        return False
    if arr.ndim != 2:
        return False
    if arr.size == 0:
        return True
    if int(arr.min()) < 0:
        return False
    rows_ok = bool((arr[:-1, :] >= arr[1:, :]).all())
    cols_ok = bool((arr[:, :-1] >= arr[:, 1:]).all())
    return rows_ok and cols_ok


class PlanePartition:
    """Non-increasing grid of non-negative integers; size = sum of entries."""

    __slots__ = ("entries", "__dict__")

    def __init__(self, entries, trim: bool = True):
        arr = _as_grid(entries)
        if not validate_plane_partition(arr):
            raise ValueError("entries are not non-increasing along both axes")
        if trim:
            arr = _tight_slice(arr)
        arr.flags.writeable = False
        self.entries = arr
        _ = self.size

    @property
    def length(self) -> int:
        return self.entries.shape[0]

    @property
    def width(self) -> int:
        return self.entries.shape[1]

    @cached_property
    def size(self) -> int:
        e = self.entries
        if e.size == 0:
            return 0
        return _checked_weighted_sum(e, np.ones_like(e))

    def key(self) -> tuple:
        """Canonical hashable form (tuple of abscissa rows, tight)."""
        return tuple(tuple(int(v) for v in row) for row in _tight_slice(self.entries))

    def __eq__(self, other):
        return isinstance(other, PlanePartition) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PlanePartition({self.entries.tolist()!r})"


class IndexDomain:
    """Staircase subset of an a x b rectangle.

    The domain is the rectangle minus a union of bottom-left corner
    rectangles [0..a'-1] x [0..b'-1]; canonically represented by
    ``row_start[j]`` = minimum abscissa present in row j (non-increasing).
    Rows may be empty (``row_start[j] == a``) but the domain itself must
    contain at least one cell.
    """

    __slots__ = ("a", "b", "row_start", "col_start", "__dict__")

    def __init__(self, a: int, b: int, removed=()):
        if a < 1 or b < 1:
            raise ValueError("rectangle dimensions must be >= 1")
        row_start = np.zeros(b, dtype=np.int64)
        for ar, br in removed:
            if not (0 <= ar <= a and 0 <= br <= b):
                raise ValueError(
                    f"removed rectangle {ar}x{br} does not fit inside {a}x{b}"
                )
            if br:
                row_start[:br] = np.maximum(row_start[:br], ar)
        self._finish(a, b, row_start)

    @classmethod
    def from_row_start(cls, a: int, b: int, row_start) -> "IndexDomain":
        rs = np.asarray(row_start, dtype=np.int64)
        if rs.shape != (b,):
            raise ValueError("row_start must have one entry per row")
        if rs.size and (int(rs.min()) < 0 or int(rs.max()) > a):
            raise ValueError("row_start entries must lie in [0, a]")
        if np.any(rs[:-1] < rs[1:]):
            raise ValueError("row_start must be non-increasing (staircase)")
        self = cls.__new__(cls)
        self._finish(a, b, rs.copy())
        return self

    @classmethod
    def full(cls, a: int, b: int) -> "IndexDomain":
        return cls(a, b)

    def _finish(self, a, b, row_start):
        # col_start[i] = first row whose start is <= i; row_start is
        # non-increasing so the rows excluding column i form a prefix.
        col_start = np.searchsorted(-row_start, -np.arange(a), side="left")
        self.a = int(a)
        self.b = int(b)
        row_start.flags.writeable = False
        col_start = col_start.astype(np.int64)
        col_start.flags.writeable = False
        self.row_start = row_start
        self.col_start = col_start
        if self.ncells == 0:
            raise ValueError("domain is empty")

    @cached_property
    def ncells(self) -> int:
        return int((self.a - self.row_start).sum())

    @property
    def is_full(self) -> bool:
        return not self.row_start.any()

    def contains(self, i: int, j: int) -> bool:
        return 0 <= i < self.a and 0 <= j < self.b and i >= self.row_start[j]

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean (a, b) grid, True on domain cells."""
        m = np.arange(self.a)[:, None] >= self.row_start[None, :]
        m.flags.writeable = False
        return m

    def cells(self):
        """Domain cells in column-of-each-row order."""
        for j in range(self.b):
            for i in range(int(self.row_start[j]), self.a):
                yield (i, j)

    @cached_property
    def hooks(self) -> np.ndarray:
        """Dense (a, b) grid of hook lengths; 0 outside the domain."""
        ii = np.arange(self.a, dtype=np.int64)[:, None]
        jj = np.arange(self.b, dtype=np.int64)[None, :]
        h = (ii - self.row_start[None, :]) + (jj - self.col_start[:, None]) + 1
        h = np.where(self.mask, h, 0)
        h.flags.writeable = False
        return h

    def removed_rectangles(self) -> list:
        """Maximal removed corner rectangles (a', b'), largest b' first."""
        out = []
        rs = self.row_start
        for j in range(self.b):
            if rs[j] > 0 and (j + 1 == self.b or rs[j + 1] < rs[j]):
                out.append((int(rs[j]), j + 1))
        return out[::-1]

    def key(self) -> tuple:
        return (self.a, self.b, tuple(int(v) for v in self.row_start))

    def __eq__(self, other):
        return isinstance(other, IndexDomain) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"IndexDomain(a={self.a}, b={self.b}, removed={self.removed_rectangles()!r})"


def hook_length(dom: IndexDomain, i: int, j: int) -> int:
    """Hook length (i - row_start[j]) + (j - col_start[i]) + 1 of a domain cell.

    Equals i + j + 1 on the full rectangle. Raises if (i, j) is outside the
    domain.
    """
    if not dom.contains(i, j):
        raise ValueError(f"cell ({i}, {j}) is not in the domain")
    return int((i - dom.row_start[j]) + (j - dom.col_start[i]) + 1)


class SkewFilling:
    """Values on the cells of a staircase domain.

    Used both for skew diagrams (arbitrary non-negative values, weighted size
    ``sum(value * hook)``) and for skew plane partitions (additionally
    non-increasing along rows and columns restricted to the domain, plain
    size ``sum(values)``). Off-domain positions of the dense grid must be 0.
    """

    __slots__ = ("domain", "values", "__dict__")

    def __init__(self, domain: IndexDomain, values):
        arr = _as_grid(values)
        if arr.shape != (domain.a, domain.b):
            raise ValueError(
                f"values shape {arr.shape} does not match domain {domain.a}x{domain.b}"
            )
        if arr[~domain.mask].any():
            raise ValueError("values must be zero outside the domain")
        arr.flags.writeable = False
        self.domain = domain
        self.values = arr
        _ = self.weighted_size

    @cached_property
    def weighted_size(self) -> int:
        """Diagram-role size: sum over cells of value * hook length."""
        return _checked_weighted_sum(self.values, self.domain.hooks)

    @cached_property
    def entry_total(self) -> int:
        """Partition-role size: plain sum of the values."""
        if self.values.size == 0:
            return 0
        return _checked_weighted_sum(self.values, np.ones_like(self.values))

    def is_skew_partition(self) -> bool:
        """Non-increasing along rows and columns restricted to the domain."""
        v, m = self.values, self.domain.mask
        pair_i = m[:-1, :] & m[1:, :]
        pair_j = m[:, :-1] & m[:, 1:]
        ok_i = bool((v[:-1, :] >= v[1:, :])[pair_i].all()) if pair_i.any() else True
        ok_j = bool((v[:, :-1] >= v[:, 1:])[pair_j].all()) if pair_j.any() else True
        return ok_i and ok_j

    def key(self) -> tuple:
        return (self.domain.key(), tuple(tuple(int(v) for v in row) for row in self.values))

    def __eq__(self, other):
        return isinstance(other, SkewFilling) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SkewFilling({self.domain!r}, {self.values.tolist()!r})"


@dataclass(frozen=True)
class TargetSpec:
    """Target size with optional tolerance ratio (None means exact mode)."""

    n: int
    epsilon: float | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("target size must be a positive integer")
        if self.epsilon is not None and not (0.0 < self.epsilon < 1.0):
            raise ValueError("tolerance ratio must lie strictly in (0, 1)")

    @property
    def mode(self) -> str:
        return "exact" if self.epsilon is None else "approximate"

    def window(self) -> tuple[int, int]:
        """Inclusive integer size window [lo, hi].

        The window contains exactly the integers of [n(1-eps), n(1+eps)];
        a relative nudge keeps boundary integers inside despite float noise.
        """
        if self.epsilon is None:
            return (self.n, self.n)
        slack = 1e-9 * self.n
        lo = int(np.ceil(self.n * (1.0 - self.epsilon) - slack))
        hi = int(np.floor(self.n * (1.0 + self.epsilon) + slack))
        return (max(lo, 0), hi)


def check_boltzmann_param(x: float) -> float:
    """Validate a Boltzmann parameter, strictly inside (0, 1)."""
    x = float(x)
    if not (0.0 < x < 1.0):
        raise ValueError(f"Boltzmann parameter must satisfy 0 < x < 1, got {x}")
    return x
