"""A small seeded sweep over random integer embeddings.

Each sample is checked against every invariant the package knows: link
counts, parity, crossing structure, detectors, circuit correspondence and
weak elimination.  Violations would be printed with the offending
embedding.  Pass a count to go bigger.

    python demos/04_random_sweep.py [count] [seed]
"""
import sys
import time

from linkcensus.harness import SampleConfig, run_sweep

count = int(sys.argv[1]) if len(sys.argv) > 1 else 500
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

start = time.perf_counter()
stats = run_sweep(SampleConfig(seed=seed, count=count))
print(f"{count} samples in {time.perf_counter() - start:.1f}s")
print("nontrivial links:", dict(sorted(stats.histogram.items())))
print("crossings:       ", dict(sorted(stats.crossing_histogram.items())))
print("torus links by parity of the count:", stats.torus24_by_parity)
print("violations:", len(stats.violations))
for v in stats.violations[:3]:
    print("  ", v["position"], v["reasons"])
