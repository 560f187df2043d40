import math
from collections import Counter

import numpy as np
import pytest

from planepart import (
    Diagram,
    IndexDomain,
    MaxAttemptsExceeded,
    PlanePartition,
    RandomSource,
    SkewFilling,
    TargetSpec,
    boltzmann_diagram,
    boltzmann_diagram_boxed,
    boltzmann_diagram_skew,
    domain_mean_size,
    exact_counts,
    multiset_gf,
    sample_partitions,
    sample_partitions_boxed,
    sample_partitions_skew,
    sample_targeted,
    tune_unconstrained,
    validate_plane_partition,
)
from planepart.sampler import (
    BoxedDiagramSampler,
    FreeDiagramSampler,
    SkewDiagramSampler,
)
from planepart.verify import enumerate_diagrams


def diagram_key(d):
    return tuple(sorted(d.cells().items()))


class TestFreeSampler:
    def test_empty_probability(self):
        x, n = 0.5, 2 * 10**5
        rng = RandomSource(31)
        s = FreeDiagramSampler(x)
        zeros = sum(1 for _ in range(n) if s.draw_cells(rng).size == 0)
        p0 = 1 / multiset_gf(x)
        assert abs(zeros / n - p0) < 3 * math.sqrt(p0 * (1 - p0) / n)

    def test_boltzmann_census_small_multisets(self):
        # every multiset of size <= 4 appears with probability x^size / M(x)
        x, n = 0.3, 10**6
        rng = RandomSource(32)
        s = FreeDiagramSampler(x)
        counts = Counter()
        for _ in range(n):
            c = s.draw_cells(rng)
            acc = {}
            for k, i, j in zip(c.ks.tolist(), c.g1.tolist(), c.g2.tolist()):
                acc[(i, j)] = acc.get((i, j), 0) + k
            counts[tuple(sorted(acc.items()))] += 1
        M = multiset_gf(x)
        checked = 0
        for size in range(5):
            for d in enumerate_diagrams(size):
                p = x**size / M
                freq = counts.get(diagram_key(d), 0) / n
                assert abs(freq - p) < 3 * math.sqrt(p * (1 - p) / n), (size, d)
                checked += 1
        assert checked == sum(exact_counts(4)[k] for k in range(5))

    def test_cells_match_diagram_size(self):
        rng = RandomSource(33)
        s = FreeDiagramSampler(0.9)
        for _ in range(50):
            cells = s.draw_cells(rng)
            assert cells.size == cells.to_diagram().size

    def test_draw_returns_tight_valid_diagram(self):
        rng = RandomSource(34)
        for _ in range(50):
            d = boltzmann_diagram(0.8, rng)
            assert isinstance(d, Diagram)
            if d.size:
                assert d.entries[-1, :].any() and d.entries[:, -1].any()

    def test_determinism(self):
        a = FreeDiagramSampler(0.7).draw(RandomSource(77, 5))
        b = FreeDiagramSampler(0.7).draw(RandomSource(77, 5))
        assert a == b


class TestBoxedSampler:
    def test_one_cell_law_is_geometric(self):
        x, n = 0.6, 10**5
        rng = RandomSource(35)
        s = BoxedDiagramSampler(1, 1, x)
        draws = np.array([int(s.draw_values(rng)[0, 0]) for _ in range(n)])
        for k in range(3):
            p = x**k * (1 - x)
            freq = float((draws == k).mean())
            assert abs(freq - p) < 4 * math.sqrt(p * (1 - p) / n)

    def test_mean_size_two_by_two(self):
        # per-cell geometric means weighted by hooks: ~2.7619 at x = 0.5
        x, n = 0.5, 10**5
        rng = RandomSource(36)
        s = BoxedDiagramSampler(2, 2, x)
        sizes = np.array([s.size_of(s.draw_values(rng)) for _ in range(n)])
        expected = domain_mean_size(IndexDomain.full(2, 2), x)
        assert expected == pytest.approx(2.7619047619, abs=1e-9)
        # per-cell variance of h*Geom(x^h): h^2 x^h/(1-x^h)^2
        var = sum(
            h * h * x**h / (1 - x**h) ** 2 for h in (1, 2, 2, 3)
        )
        assert abs(float(sizes.mean()) - expected) < 3 * math.sqrt(var / n)

    def test_tiny_parameter_all_zero(self):
        rng = RandomSource(37)
        d = boltzmann_diagram_boxed(3, 3, 1e-9, rng)
        assert d.size == 0

    def test_draw_count_is_exactly_ab(self):
        # ab uniforms per draw: the underlying stream advances in lockstep
        rng1 = RandomSource(38)
        rng2 = RandomSource(38)
        s = BoxedDiagramSampler(4, 7, 0.5)
        s.draw_values(rng1)
        rng2.uniform01_batch(28)
        assert rng1.uniform01() == rng2.uniform01()


class TestSkewSampler:
    def test_full_rectangle_matches_boxed_law(self):
        # same size histogram as the boxed sampler on the full rectangle
        from scipy import stats as sps

        x, n = 0.5, 4 * 10**4
        dom = IndexDomain.full(2, 2)
        s1 = SkewDiagramSampler(dom, x)
        s2 = BoxedDiagramSampler(2, 2, x)
        r1, r2 = RandomSource(39, 0), RandomSource(39, 1)
        a = np.array([s1.size_of(s1.draw_values(r1)) for _ in range(n)])
        b = np.array([s2.size_of(s2.draw_values(r2)) for _ in range(n)])
        edges = np.arange(0, 15)
        h1, _ = np.histogram(a, bins=edges)
        h2, _ = np.histogram(b, bins=edges)
        keep = (h1 + h2) >= 10
        _, pvalue, _, _ = sps.chi2_contingency(np.vstack([h1[keep], h2[keep]]))
        assert pvalue > 0.001

    def test_mean_size_on_staircase(self):
        x, n = 0.5, 10**5
        dom = IndexDomain(3, 3, [(1, 1)])
        s = SkewDiagramSampler(dom, x)
        rng = RandomSource(40)
        sizes = np.array([s.size_of(s.draw_values(rng)) for _ in range(n)])
        expected = domain_mean_size(dom, x)
        assert expected == pytest.approx(4.45652841781874, abs=1e-9)
        hooks = dom.hooks[dom.mask]
        var = float(sum(h * h * x**h / (1 - x**h) ** 2 for h in hooks))
        assert abs(float(sizes.mean()) - expected) < 3 * math.sqrt(var / n)

    def test_single_cell_domain(self):
        rng = RandomSource(41)
        dom = IndexDomain(2, 2, [(2, 1)])
        f = boltzmann_diagram_skew(dom, 0.4, rng)
        assert isinstance(f, SkewFilling)
        assert f.values[:, 0].sum() == 0


class TestSampleTargeted:
    def test_window_membership_and_rejections(self):
        rng = RandomSource(42)
        s = FreeDiagramSampler(0.5)
        spec = TargetSpec(5, 0.2)
        lo, hi = spec.window()
        rep = sample_targeted(s.draw, lambda d: d.size, spec, s.x, rng)
        assert lo <= rep.size <= hi
        assert rep.rejections >= 0
        assert rep.x_used == s.x

    def test_max_attempts_cap(self):
        rng = RandomSource(43)
        s = FreeDiagramSampler(0.1)
        with pytest.raises(MaxAttemptsExceeded) as err:
            sample_targeted(s.draw, lambda d: d.size, TargetSpec(400), s.x, rng, max_attempts=25)
        assert err.value.attempts == 25

    def test_kernel_cap(self):
        rng = RandomSource(43)
        s = FreeDiagramSampler(0.1)
        with pytest.raises(MaxAttemptsExceeded):
            s.targeted_cells(TargetSpec(400), rng, max_attempts=25)


class TestSamplePartitions:
    def test_unique_partition_of_one(self):
        rep = sample_partitions(1, RandomSource(44))
        assert rep.result.entries.tolist() == [[1]]
        assert rep.size == 1

    def test_small_size_fallback_uniform(self):
        rng = RandomSource(45)
        counts = Counter()
        n = 30000
        for _ in range(n):
            counts[sample_partitions(3, rng).result.key()] += 1
        assert len(counts) == 6
        p = 1 / 6
        for c in counts.values():
            assert abs(c / n - p) < 4 * math.sqrt(p * (1 - p) / n)

    def test_small_fallback_approximate_window(self):
        rng = RandomSource(46)
        for _ in range(200):
            rep = sample_partitions(2, rng, epsilon=0.6)
            assert rep.size in (1, 2, 3)

    def test_exact_mode_size_and_validity(self):
        rng = RandomSource(47)
        for n in (4, 9, 30):
            rep = sample_partitions(n, rng)
            assert rep.size == n == rep.result.size
            assert validate_plane_partition(rep.result.entries)
            assert rep.x_used == pytest.approx(tune_unconstrained(n))

    def test_approximate_mode_window(self):
        rng = RandomSource(48)
        rep = sample_partitions(2000, rng, epsilon=0.1)
        assert 1800 <= rep.size <= 2200

    def test_determinism_full_report(self):
        r1 = sample_partitions(50, RandomSource(99, 2))
        r2 = sample_partitions(50, RandomSource(99, 2))
        assert r1.result == r2.result and r1.rejections == r2.rejections

    def test_explicit_x_override(self):
        rep = sample_partitions(5, RandomSource(50), x=0.4)
        assert rep.size == 5 and rep.x_used == 0.4


class TestSamplePartitionsBoxed:
    def test_stays_in_box_and_exact(self):
        rng = RandomSource(51)
        for (a, b, n) in [(1, 1, 17), (2, 1, 3), (3, 3, 25), (2, 4, 11)]:
            rep = sample_partitions_boxed(a, b, n, rng)
            assert rep.size == n
            assert rep.result.length <= a and rep.result.width <= b

    def test_two_classes_equally_frequent(self):
        # coefficient of x^3 in 1/((1-x)(1-x^2)) is 2
        rng = RandomSource(52)
        counts = Counter()
        n = 20000
        for _ in range(n):
            counts[sample_partitions_boxed(2, 1, 3, rng).result.key()] += 1
        assert len(counts) == 2
        for c in counts.values():
            assert abs(c / n - 0.5) < 4 * math.sqrt(0.25 / n)

    def test_asymptotic_tuning_choice(self):
        # deep in the asymptotic regime the closed form 1 - ab/n is kept
        rep = sample_partitions_boxed(1, 1, 100, RandomSource(53))
        assert rep.x_used == pytest.approx(0.99)
        rep = sample_partitions_boxed(1, 1, 10**4, RandomSource(54), epsilon=0.3)
        assert rep.x_used == pytest.approx(1 - 1e-4)

    def test_out_of_regime_solves_equation(self):
        # a 10x10 box at n=1e4 sits below the asymptotic regime: the closed
        # form misses the mean by more than half a standard deviation, so
        # the tuning must come from the exact target equation
        rep = sample_partitions_boxed(10, 10, 10**4, RandomSource(54), epsilon=0.3)
        dom = IndexDomain.full(10, 10)
        assert abs(domain_mean_size(dom, rep.x_used) - 10**4) <= 0.5
        assert rep.x_used != pytest.approx(0.99)

    def test_small_target_uses_equation(self):
        rep = sample_partitions_boxed(10, 10, 5, RandomSource(55))
        assert rep.size == 5
        assert 0 < rep.x_used < 0.5


class TestSamplePartitionsSkew:
    def test_exact_size_and_monotone(self):
        dom = IndexDomain(3, 3, [(1, 1)])
        rng = RandomSource(56)
        for n in (1, 5, 12):
            rep = sample_partitions_skew(dom, n, rng)
            assert rep.result.entry_total == n
            assert rep.result.is_skew_partition()

    def test_full_rectangle_matches_boxed_distribution(self):
        from scipy import stats as sps

        n_samples = 8000
        dom = IndexDomain.full(2, 2)
        c1, c2 = Counter(), Counter()
        r1, r2 = RandomSource(57, 0), RandomSource(57, 1)
        for _ in range(n_samples):
            f = sample_partitions_skew(dom, 4, r1).result
            c1[tuple(f.values.ravel())] += 1
            p = sample_partitions_boxed(2, 2, 4, r2).result
            padded = np.zeros((2, 2), dtype=np.int64)
            e = p.entries
            padded[: e.shape[0], : e.shape[1]] = e
            c2[tuple(padded.ravel())] += 1
        keys = sorted(set(c1) | set(c2))
        table = np.array([[c1.get(k, 0) for k in keys], [c2.get(k, 0) for k in keys]])
        _, pvalue, _, _ = sps.chi2_contingency(table)
        assert pvalue > 0.001

    def test_approximate_window(self):
        dom = IndexDomain(4, 4, [(2, 2)])
        rep = sample_partitions_skew(dom, 200, RandomSource(58), epsilon=0.2)
        assert 160 <= rep.result.entry_total <= 240
