"""Time the compiled elimination kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]

Runs on random integer matrices and on a real interpolation matrix.
Both backends must give identical results; the script checks that first.
"""
import argparse
import random
import timeit

from spimplicit import _kernels_py
from spimplicit.interp import build_matrix
from spimplicit.param import parse_map
from spimplicit.support import convex_hull, lattice_points, minkowski_sum

try:
    from spimplicit import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

FOLIUM = "x = 3*t/(1+t^3); y = 3*t^2/(1+t^3)"


def random_matrix(n, rng, bound=99):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def interpolation_rows():
    m = parse_map(FOLIUM)
    P = convex_hull([(3, 0), (0, 3), (1, 1)])
    Q = minkowski_sum(P, convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)]))
    S = lattice_points(Q.translate(tuple(-c for c in Q.bounding_box()[0])))
    return [list(r) for r in build_matrix(m, S, seed=0).rows]


def best_of(fn, rows, repeat):
    return min(timeit.repeat(lambda: fn(rows), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return 1

    rng = random.Random(args.seed)
    cases = [(f"random {n}x{n}", random_matrix(n, rng)) for n in args.sizes]
    interp = interpolation_rows()
    cases.append((f"folium interp {len(interp)}x{len(interp[0])}", interp))

    print(f"{'case':<28}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}")
    for label, rows in cases:
        if _kernels_c.bareiss_rref(rows) != _kernels_py.bareiss_rref(rows):
            raise SystemExit(f"backends disagree on {label}")
        py = best_of(_kernels_py.bareiss_rref, rows, args.repeat)
        cy = best_of(_kernels_c.bareiss_rref, rows, args.repeat)
        print(f"{label:<28}{py:>12.4f}{cy:>12.4f}{py / cy:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
