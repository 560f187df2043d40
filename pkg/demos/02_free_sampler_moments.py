"""Size distribution of the free sampler against its analytic moments.

A free draw costs no rejection but spreads its size; the mean grows like
2 zeta(3)/(1-x)^3 as the parameter approaches 1, which is exactly the handle
the targeted samplers use to aim at a size.
"""

import numpy as np

from planepart import RandomSource, ZETA3, expected_size, variance_size
from planepart.sampler import FreeDiagramSampler

rng = RandomSource(seed=2)

for x in (0.5, 0.8, 0.95):
    sampler = FreeDiagramSampler(x)
    sizes = np.array([sampler.draw_cells(rng).size for _ in range(20000)])
    e, v = expected_size(x), variance_size(x)
    print(
        f"x={x:4}: empirical mean {sizes.mean():10.2f} (oracle {e:10.2f}), "
        f"empirical var {sizes.var(ddof=1):12.1f} (oracle {v:12.1f})"
    )

# The asymptotic law of the mean: E(x) * (1-x)^3 -> 2 zeta(3).
for x in (0.9, 0.99, 0.999):
    print(f"x={x}: E(x)*(1-x)^3 = {expected_size(x) * (1 - x) ** 3:.5f}", end="")
    print(f"   (limit 2*zeta(3) = {2 * ZETA3:.5f})")

# Tuning: the parameter whose mean size is one million.
from planepart import tune_unconstrained

x_n = tune_unconstrained(10**6)
print(f"parameter for mean size 1e6: {x_n:.6f}; realised mean {expected_size(x_n):,.0f}")
