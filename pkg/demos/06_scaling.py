"""Wall-clock scaling of the window-size sampler.

The generation step is sublinear in the target size; the dominant cost is
the diagonal sweep of the bijection, slightly superlinear overall. The
log-log fitted exponent over the medians should sit near 1 with a
logarithmic correction.
"""

from planepart import RandomSource
from planepart.verify import bench_scaling

table = bench_scaling(
    [10**4, 10**5, 10**6],
    mode="approx",
    rng=RandomSource(seed=77),
    epsilon=0.05,
    runs=5,
)

print(f"{'n':>10} {'median_s':>10} {'rejections':>11} {'max_hook':>9}")
for row in table.rows:
    print(f"{row.n:>10} {row.median_seconds:>10.4f} "
          f"{row.median_rejections:>11.1f} {row.median_max_hook:>9.0f}")
print(f"\nfitted time exponent: {table.fitted_exponent:.3f}")

# Exact-size sampling pays the window width: rejections grow like n^(2/3).
exact = bench_scaling([10**3, 10**4], mode="exact", rng=RandomSource(seed=78), runs=5)
print(f"\nexact mode rejections: "
      f"{[(r.n, r.median_rejections) for r in exact.rows]}")
