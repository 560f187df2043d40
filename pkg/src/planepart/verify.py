"""Independent ground truth: brute-force enumerators, statistical hypothesis
tests, acceptance-rate probes, and scaling benchmarks.

The enumerators deliberately use different strategies from both the counting
recurrences and the samplers (monotone-matrix backtracking for partitions,
bounded knapsack over weighted cells for diagrams), so agreement between the
routes is evidence rather than tautology.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from .core import Diagram, IndexDomain, PlanePartition, SkewFilling, TargetSpec
from .dist import RandomSource
from .oracle import DEFAULT_CONFIG, OracleConfig, expected_size, variance_size
from .sampler import FreeDiagramSampler, sample_partitions

ENUMERATION_CAP = 14


@dataclass(frozen=True)
class TestReport:
    """Outcome of one seeded check; everything needed to rerun it."""

    __test__ = False  # keep pytest from collecting this as a test case

    name: str
    statistic: float
    threshold: float
    passed: bool
    samples: int
    seed: int | None = None

    def __str__(self):
        flag = "pass" if self.passed else "FAIL"
        return (
            f"[{flag}] {self.name}: statistic={self.statistic:.6g} "
            f"threshold={self.threshold:.6g} samples={self.samples} seed={self.seed}"
        )


# ---------------------------------------------------------------------------
# Exhaustive enumerators


def _check_cap(n: int, cap: int):
    if n < 0:
        raise ValueError("size must be >= 0")
    if n > cap:
        raise ValueError(f"size {n} above the enumeration cap {cap}")


def _rows_below(bound, total):
    """Weakly decreasing positive tuples r, r[j] <= bound[j], sum(r) <= total."""

    def rec(j, prev, left):
        yield ()
        if j >= len(bound):
            return
        top = min(prev, bound[j], left)
        for v in range(top, 0, -1):
            for rest in rec(j + 1, v, left - v):
                yield (v,) + rest

    for row in rec(0, total, total):
        if row:
            yield row


def enumerate_partitions(n: int, cap: int = ENUMERATION_CAP) -> list[PlanePartition]:
    """All plane partitions of size n, as a duplicate-free list.

    Rows along the abscissa are built recursively, each row componentwise
    below the previous one, consuming the size exactly.
    """
    _check_cap(n, cap)
    if n == 0:
        return [PlanePartition(np.zeros((0, 0), dtype=np.int64))]
    results = []

    def rec(rows, prev, left):
        if left == 0:
            results.append(rows)
            return
        for row in _rows_below(prev, left):
            rec(rows + [row], row, left - sum(row))

    rec([], (n,) * n, n)
    out = []
    for rows in results:
        grid = np.zeros((len(rows), len(rows[0])), dtype=np.int64)
        for i, row in enumerate(rows):
            grid[i, : len(row)] = row
        out.append(PlanePartition(grid))
    return out


def _knapsack_fillings(cells, n):
    """All multiplicity assignments over (cell, weight) pairs of total n.

    Cells are processed in decreasing weight order; the weight-1 cells at the
    end guarantee every residue is completable, so no dead branches occur.
    """
    cells = sorted(cells, key=lambda cw: -cw[1])
    results = []
    acc = {}

    def rec(idx, left):
        if left == 0:
            results.append(dict(acc))
            return
        if idx == len(cells):
            return
        cell, w = cells[idx]
        for m in range(left // w, 0, -1):
            acc[cell] = m
            rec(idx + 1, left - m * w)
            del acc[cell]
        rec(idx + 1, left)

    rec(0, n)
    return results


def enumerate_diagrams(n: int, box=None, cap: int = ENUMERATION_CAP) -> list[Diagram]:
    """All diagrams of weighted size n; optionally restricted to an a x b box."""
    _check_cap(n, cap)
    if n == 0:
        return [Diagram(np.zeros((0, 0), dtype=np.int64))]
    cells = []
    imax = n if box is None else min(n, box[0])
    for i in range(imax):
        jtop = n - i if box is None else min(n - i, box[1])
        for j in range(jtop):
            w = i + j + 1
            if w <= n:
                cells.append(((i, j), w))
    return [Diagram.from_cells(f) for f in _knapsack_fillings(cells, n)]


def enumerate_skew(dom: IndexDomain, n: int, cap: int = ENUMERATION_CAP) -> list[SkewFilling]:
    """All skew diagrams on the domain with hook-weighted size n."""
    _check_cap(n, cap)
    cells = [((i, j), int(dom.hooks[i, j])) for (i, j) in dom.cells()]
    out = []
    for filling in _knapsack_fillings(cells, n):
        grid = np.zeros((dom.a, dom.b), dtype=np.int64)
        for (i, j), m in filling.items():
            grid[i, j] = m
        out.append(SkewFilling(dom, grid))
    return out


# ---------------------------------------------------------------------------
# Statistical machinery


def chi_square_uniformity(
    samples,
    classes,
    significance: float = 0.001,
    seed: int | None = None,
    name: str = "chi-square-uniformity",
) -> TestReport:
    """Pearson test of the uniform law over the given classes.

    Every sample must canonicalise to a known class; an unknown class is a
    correctness failure, not a statistical one, and raises immediately.
    """
    classes = list(classes)
    counts = Counter(samples)
    unknown = set(counts) - set(classes)
    if unknown:
        raise ValueError(f"samples outside the class set: {sorted(unknown)[:3]!r}...")
    total = sum(counts.values())
    if total == 0:
        raise ValueError("no samples")
    expected = total / len(classes)
    statistic = sum(
        (counts.get(c, 0) - expected) ** 2 / expected for c in classes
    )
    threshold = float(sps.chi2.ppf(1.0 - significance, len(classes) - 1))
    return TestReport(name, float(statistic), threshold, statistic <= threshold, total, seed)


def wilson_interval(hits: int, trials: int, z: float = 3.0) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = hits / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class RateProbe:
    """Measured acceptance rate of a rejection target with its interval."""

    hits: int
    trials: int
    rate: float
    interval: tuple[float, float]
    seed: int | None = None

    def covers(self, value: float) -> bool:
        lo, hi = self.interval
        return lo <= value <= hi


def acceptance_probe(
    generator,
    size_of,
    spec: TargetSpec,
    trials: int,
    rng: RandomSource,
    z: float = 3.0,
) -> RateProbe:
    """Fraction of free draws whose size lands in the target window."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lo, hi = spec.window()
    hits = 0
    for _ in range(trials):
        if lo <= size_of(generator(rng)) <= hi:
            hits += 1
    return RateProbe(hits, trials, hits / trials, wilson_interval(hits, trials, z), rng.seed)


@dataclass(frozen=True)
class MomentProbe:
    """Empirical size moments of the free sampler against the oracle."""

    trials: int
    mean: float
    variance: float
    expected_mean: float
    expected_variance: float
    z_mean: float
    seed: int | None = None


def moment_probe(
    x: float,
    trials: int,
    rng: RandomSource,
    config: OracleConfig = DEFAULT_CONFIG,
) -> MomentProbe:
    """Empirical mean/variance of the free-sampler size at parameter x."""
    sampler = FreeDiagramSampler(x, config)
    sizes = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        sizes[t] = sampler.draw_cells(rng).size
    mean = float(sizes.mean())
    var = float(sizes.var(ddof=1)) if trials > 1 else 0.0
    e = expected_size(x, config)
    v = variance_size(x, config)
    z = (mean - e) / math.sqrt(v / trials)
    return MomentProbe(trials, mean, var, e, v, z, rng.seed)


# ---------------------------------------------------------------------------
# Scaling benchmark


@dataclass(frozen=True)
class BenchRow:
    n: int
    median_seconds: float
    median_rejections: float
    median_max_hook: float


@dataclass(frozen=True)
class BenchTable:
    mode: str
    epsilon: float | None
    rows: list
    fitted_exponent: float | None


def bench_scaling(
    sizes,
    mode: str,
    rng: RandomSource,
    epsilon: float = 0.05,
    runs: int = 5,
) -> BenchTable:
    """Median wall time, rejections and max hook per target size.

    Wall clocks are advisory; the log-log fitted exponent over the medians is
    the quantity gated by the scaling checks.
    """
    sizes = [int(s) for s in sizes]
    if sizes != sorted(sizes):
        raise ValueError("sizes must be monotone increasing")
    if mode not in ("exact", "approx"):
        raise ValueError("mode must be 'exact' or 'approx'")
    eps = None if mode == "exact" else epsilon
    rows = []
    stream = 0
    for n in sizes:
        times, rejs, hooks = [], [], []
        for _ in range(max(runs, 1)):
            sub = rng.spawn(stream)
            stream += 1
            t0 = time.perf_counter()
            rep = sample_partitions(n, sub, epsilon=eps)
            times.append(time.perf_counter() - t0)
            rejs.append(rep.rejections)
            hooks.append(rep.stats.max_hook if rep.stats else 0)
        rows.append(
            BenchRow(
                n,
                float(np.median(times)),
                float(np.median(rejs)),
                float(np.median(hooks)),
            )
        )
    exponent = None
    if len(rows) >= 2:
        logn = np.log([r.n for r in rows])
        logt = np.log([max(r.median_seconds, 1e-9) for r in rows])
        exponent = float(np.polyfit(logn, logt, 1)[0])
    return BenchTable(mode, eps, rows, exponent)


# ---------------------------------------------------------------------------
# Packaged suites (used by the command-line `verify`)


def run_small_suite(seed: int = 0) -> list[TestReport]:
    """Exhaustive structural checks; deterministic, finishes well under a
    minute: bijectivity against the count tables, boxed refinement, skew
    refinement, and inverse roundtrips."""
    from .oracle import boxed_counts, exact_counts, skew_counts
    from .pak import pak_forward, pak_forward_skew, pak_inverse

    reports = []
    counts = exact_counts(10)

    bad = 0
    for n in range(11):
        diagrams = enumerate_diagrams(n, cap=10)
        images = set()
        for d in diagrams:
            p, _ = pak_forward(d)
            if p.size != n or pak_inverse(p) != d:
                bad += 1
            images.add(p.key())
        if len(images) != counts[n] or len(diagrams) != counts[n]:
            bad += 1
    reports.append(TestReport("bijectivity+roundtrip n<=10", bad, 0.5, bad == 0, 11, seed))

    bad = 0
    for a in range(1, 4):
        for b in range(1, 4):
            table = boxed_counts(a, b, 8)
            for n in range(9):
                diagrams = enumerate_diagrams(n, box=(a, b), cap=10)
                images = {pak_forward(d)[0].key() for d in diagrams}
                boxed = {
                    p.key()
                    for p in enumerate_partitions(n, cap=10)
                    if p.length <= a and p.width <= b
                }
                if not (len(diagrams) == table[n] and images == boxed):
                    bad += 1
    reports.append(TestReport("boxed refinement a,b<=3 n<=8", bad, 0.5, bad == 0, 9 * 9, seed))

    dom = IndexDomain(3, 3, [(1, 1)])
    table = skew_counts(dom, 8)
    bad = 0
    for n in range(9):
        fillings = enumerate_skew(dom, n, cap=10)
        images = set()
        for f in fillings:
            out, _ = pak_forward_skew(f)
            if out.entry_total != f.weighted_size or not out.is_skew_partition():
                bad += 1
            images.add(out.key())
        if len(fillings) != table[n] or len(images) != table[n]:
            bad += 1
    reports.append(TestReport("skew refinement 3x3-1x1 n<=8", bad, 0.5, bad == 0, 9, seed))
    return reports


def run_stat_suite(seed: int = 0) -> list[TestReport]:
    """Seeded statistical checks: exact-size uniformity, size moments, and
    the oracle-exact acceptance rate at n = 50."""
    from .oracle import exact_counts, multiset_gf, tune_unconstrained

    reports = []

    classes = [p.key() for p in enumerate_partitions(4)]
    rng = RandomSource(seed, stream=101)
    labels = [sample_partitions(4, rng).result.key() for _ in range(20000)]
    reports.append(
        chi_square_uniformity(labels, classes, seed=seed, name="uniformity n=4 (20k)")
    )

    rng = RandomSource(seed, stream=102)
    probe = moment_probe(0.5, 50000, rng)
    reports.append(
        TestReport("free-sampler mean size x=0.5", abs(probe.z_mean), 3.0,
                   abs(probe.z_mean) <= 3.0, probe.trials, seed)
    )

    n = 50
    x = tune_unconstrained(n)
    exact_rate = exact_counts(n)[n] * x ** n / multiset_gf(x)
    rng = RandomSource(seed, stream=103)
    sampler = FreeDiagramSampler(x)
    probe = acceptance_probe(
        sampler.draw_cells, lambda c: c.size, TargetSpec(n), 100000, rng
    )
    reports.append(
        TestReport("acceptance rate n=50 vs oracle", probe.rate, exact_rate,
                   probe.covers(exact_rate), probe.trials, seed)
    )
    return reports
