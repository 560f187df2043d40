"""Render large random partitions as static images.

Writes three files next to this script: an isometric SVG of a mid-sized
unconstrained partition, a grayscale height map of a large one, and a boxed
draw whose height map shows the frozen-boundary-like profile that emerges
when both column dimensions are pinned.
"""

import pathlib
import time

from planepart import IndexDomain, RandomSource, sample_partitions
from planepart import sample_partitions_boxed, sample_partitions_skew
from planepart.render import render_ppm, render_svg

out_dir = pathlib.Path(__file__).resolve().parent
rng = RandomSource(seed=20060515)

# Mid-sized heap as a vector image.
report = sample_partitions(2000, rng)
svg = render_svg(report.result.entries)
(out_dir / "heap_n2000.svg").write_text(svg)
print(f"heap_n2000.svg: size {report.size}, "
      f"{report.result.length}x{report.result.width} columns")

# A quarter-million cubes as a height map (one pixel per column).
t0 = time.time()
report = sample_partitions(250_000, rng, epsilon=0.02)
(out_dir / "heights_n250k.pgm").write_bytes(render_ppm(report.result.entries))
print(f"heights_n250k.pgm: size {report.size:,} in {time.time() - t0:.2f}s")

# Boxed draw: both dimensions pinned to 100, one million cubes of columns.
t0 = time.time()
report = sample_partitions_boxed(100, 100, 1_000_000, rng, epsilon=0.01)
(out_dir / "boxed_100x100.pgm").write_bytes(render_ppm(report.result.entries))
print(f"boxed_100x100.pgm: size {report.size:,} in {time.time() - t0:.2f}s "
      f"({report.rejections} rejections)")

# Skew domain with an outer corner at (50, 50).
dom = IndexDomain(100, 100, removed=[(50, 50)])
report = sample_partitions_skew(dom, 1_000_000, rng, epsilon=0.01)
(out_dir / "skew_corner.pgm").write_bytes(render_ppm(report.result.values))
print(f"skew_corner.pgm: size {report.result.entry_total:,} "
      f"({report.rejections} rejections)")
