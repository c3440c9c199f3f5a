"""Benchmark the two lattice-point counting backends.

Counts lattice points of dilates of reflexive simplices through both the
numba kernel and the pure-numpy chunked counter, reporting wall time and
verifying both backends agree.  Run as::

    python3 benchmarks/bench_lattice_points.py
"""

import time

from fracmirror import _accel
from fracmirror.polytope import LatticePolytope

CASES = [
    ("quartic simplex, dilate 12", [(3, -1, -1), (-1, 3, -1), (-1, -1, 3), (-1, -1, -1)], 12),
    ("quartic simplex, dilate 20", [(3, -1, -1), (-1, 3, -1), (-1, -1, 3), (-1, -1, -1)], 20),
    ("cross polytope dim 4, dilate 10",
     [tuple(s if i == j else 0 for i in range(4)) for j in range(4) for s in (1, -1)], 10),
]


def _setup(vertices, k):
    P = LatticePolytope(vertices)
    lo, hi = P._span_box(k)
    A = [g for g, _ in P._span_facets]
    c = [cc * k for _, cc in P._span_facets]
    return lo, hi, A, c


def bench(force, lo, hi, A, c, repeats=3):
    best = float("inf")
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = _accel.count_points(lo, hi, A, c, force=force)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    backends = ["numpy"]
    try:
        _accel.count_points((0,), (0,), [(1,)], [0], force="numba")
        backends.insert(0, "numba")
    except Exception as exc:  # numba genuinely unavailable
        print(f"numba backend unavailable ({exc}); benchmarking numpy only")

    print(f"{'case':40s} " + " ".join(f"{b:>12s}" for b in backends) + "  agree")
    for name, vertices, k in CASES:
        lo, hi, A, c = _setup(vertices, k)
        times = {}
        values = {}
        for b in backends:
            values[b], times[b] = bench(b, lo, hi, A, c)
        agree = len(set(values.values())) == 1
        cols = " ".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        print(f"{name:40s} {cols}  {agree} (count={values[backends[0]]})")


if __name__ == "__main__":
    main()
