"""Time the cube scan with the compiled kernel against the pure-Python one.

    python benchmarks/bench_kernel.py [--repeat 3]

Both backends must return identical results; the script exits non-zero if not.
"""

import argparse
import sys
import time

from nnrep import kernel
from nnrep.boolean import build_family
from nnrep.representations import construct

CASES = [
    ("parity-eq", 2, 2),
    ("parity-comp", 3, 2),
    ("omb-eq", 3, 2),
    ("ip2", 1, 7),
    ("parity-eq", 3, 3),
]


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not kernel.compiled_available():
        print("compiled extension not built; only the Python backend is available")
    print(f"{'case':<22} {'bits':>4} {'anchors':>7} {'python s':>9} {'compiled s':>10} {'speedup':>8}")
    ok = True
    for family, m, n in CASES:
        A = construct(build_family(family, m, n))
        run = lambda backend: kernel.scan(A.anchors, A.labels, A.types, A.n, backend=backend)
        t_py, r_py = best_of(args.repeat, lambda: run("python"))
        if kernel.compiled_available():
            t_c, r_c = best_of(args.repeat, lambda: run("compiled"))
            ok &= r_c == r_py
            extra = f"{t_c:>10.4f} {t_py / t_c:>7.1f}x"
        else:
            extra = f"{'-':>10} {'-':>8}"
        print(f"{family}({m},{n})".ljust(22) + f" {A.n:>4} {A.size:>7} {t_py:>9.4f} " + extra)
    if not ok:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
