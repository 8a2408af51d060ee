#!/usr/bin/env python3
"""Benchmark the compiled Monte Carlo kernel against the pure-Python
fallback and verify they produce identical tallies.

Usage: python benchmarks/bench_mc.py [trials]
"""

import sys
import time

from bayesroc import _mc_py
from bayesroc.signal import threshold_of_pfa

try:
    from bayesroc import _mc
except ImportError:
    _mc = None


def bench(kernel, trials):
    start = time.perf_counter()
    tallies = kernel.simulate_block(42, 0, trials, 0.5, 0, 2.0, threshold_of_pfa(0.35))
    elapsed = time.perf_counter() - start
    return tallies, elapsed


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    print(f"simulate_block: {trials:,} trials, snr 2, pfa 0.35, prior 0.5, seed 42")

    py_tallies, py_time = bench(_mc_py, trials)
    print(f"  pure python : {py_time:8.3f} s   {trials / py_time:12,.0f} trials/s")

    if _mc is None:
        print("  compiled    : extension not built (pip install -e . to build it)")
        return

    ext_tallies, ext_time = bench(_mc, trials)
    print(f"  compiled    : {ext_time:8.3f} s   {trials / ext_time:12,.0f} trials/s")
    print(f"  speedup     : {py_time / ext_time:8.1f}x")
    if ext_tallies == py_tallies:
        print(f"  tallies     : identical {ext_tallies}")
    else:
        print(f"  tallies     : MISMATCH python={py_tallies} compiled={ext_tallies}")
        sys.exit(1)


if __name__ == "__main__":
    main()
