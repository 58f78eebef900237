"""Compare the compiled mod-p kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Both
backends must return identical results; the script exits non-zero if they
disagree.  When the extension is not built only the fallback is timed.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from jetlab import kernels
from jetlab.greenberg import _columns, _grid
from jetlab.jets import jet_ideal
from jetlab.varieties import parse_variety

CUSP = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3\n")
SURFACE = parse_variety("field: QQ\nvars: x y z\ngens: x^2 + y*z^2 - 3\n")


def cases():
    # full-grid scan: every level-4 jet of the cusp over F_5 (5^10 points)
    J = jet_ideal(CUSP.gens, 4)
    cols = _columns(CUSP.variables, 4)
    packed = kernels.compile_mod_p(J.generators(), cols, 5)
    yield "grid_zeros cusp n=4 q=5", lambda impl: impl.grid_zeros(*packed, len(cols), 5)

    # filter a dense candidate list: level-1 jets of a surface over F_7
    J = jet_ideal(SURFACE.gens, 1)
    cols = _columns(SURFACE.variables, 1)
    packed = kernels.compile_mod_p(J.generators(), cols, 7)
    pts = np.ascontiguousarray(_grid(7, len(cols)), dtype=np.int64)
    yield "common_zeros surface n=1 q=7", lambda impl: impl.common_zeros(*packed, pts, 7)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = {"python": kernels.python_impl}
    if kernels.BACKEND == "cython":
        from jetlab import _kernels

        backends["cython"] = _kernels
    else:
        print("compiled extension not available; timing the fallback only")

    ok = True
    print(f"{'case':32} {'backend':8} {'best s':>10} {'speedup':>8}")
    for label, run in cases():
        results, best = {}, {}
        for name, impl in backends.items():
            results[name] = np.asarray(run(impl))
            best[name] = min(timeit.repeat(lambda: run(impl), number=1, repeat=args.repeat))
        ref = results["python"]
        for name in backends:
            same = np.array_equal(results[name], ref)
            ok &= same
            speed = best["python"] / best[name] if best[name] else float("inf")
            flag = "" if same else "  MISMATCH"
            print(f"{label:32} {name:8} {best[name]:10.4f} {speed:7.1f}x{flag}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
