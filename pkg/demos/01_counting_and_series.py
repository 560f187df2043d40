"""Exact counting tables and the generating-function series.

The number of plane partitions of each size comes from a divisor-power
recurrence (exact big integers); boxed and skew variants come from finite
products of geometric series over the domain's hook lengths. The series
evaluation used by the samplers must agree with the tables.
"""

from planepart import (
    IndexDomain,
    boxed_counts,
    exact_counts,
    multiset_gf,
    skew_counts,
)

# Unconstrained counts: 1, 1, 3, 6, 13, 24, 48, ...
table = exact_counts(12)
print("plane partitions by size:", list(table.coefficients))

# Everything is exact: sizes in the hundreds produce hundreds of digits.
big = exact_counts(500)
print(f"count at n=500 has {len(str(big[500]))} decimal digits")

# Boxed in a 2 x 2 rectangle of columns (heights stay unbounded).
print("2x2-boxed counts:", list(boxed_counts(2, 2, 10).coefficients))

# A staircase domain: a 3x3 square with its bottom-left corner cell removed.
dom = IndexDomain(3, 3, removed=[(1, 1)])
print("3x3 minus 1x1 skew counts:", list(skew_counts(dom, 10).coefficients))

# The closed-form series value matches the truncated count series.
x = 0.3
series = sum(c * x**n for n, c in enumerate(exact_counts(60).coefficients))
print(f"M({x}) = {multiset_gf(x):.12f}  vs truncated series {series:.12f}")
