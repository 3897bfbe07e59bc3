"""Compare the numba and numpy pairwise-distance kernels.

    python3 benchmarks/bench_kernels.py --max-len 9 --repeat 5

Set QMCODES_DISABLE_NUMBA=1 to confirm the numpy fallback is selected.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qmcodes import _kernels as kn
from qmcodes.words import Alphabet


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-len", type=int, default=8, help="all binary words up to this length")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    words = list(Alphabet("ab").words(args.max_len))
    print(f"default backend: {kn.BACKEND}  words: {len(words)}")
    backends = ["numpy"] + (["numba"] if kn.HAVE_NUMBA else [])
    for metric in kn.METRICS:
        results = {}
        for backend in backends:
            kn.pairwise(metric, words[:4], backend=backend)  # compile / warm up
            results[backend] = best_of(lambda: kn.pairwise(metric, words, backend=backend), args.repeat)
        line = "  ".join(f"{b}={t * 1e3:9.2f} ms" for b, t in results.items())
        if len(results) == 2:
            same = np.array_equal(kn.pairwise(metric, words, "numpy"), kn.pairwise(metric, words, "numba"))
            line += f"  speedup={results['numpy'] / results['numba']:.1f}x  equal={same}"
        print(f"{metric:7s} {line}")


if __name__ == "__main__":
    main()
