"""Compare the compiled and pure-Python classification kernels.

The hot loop classifies batches of one-line permutation rows by the
stable coset type of x^{-1} z, packing each type into a 64-bit key.
Both kernels implement the identical contract; this script times them
on the same inputs, checks they agree bit for bit, and reports the
throughput ratio.

Run:  python3 benchmarks/bench_kernels.py [--n 4] [--rows 40320] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bnhecke import _kernels_py
from bnhecke._backend import key_partition, permutation_block

try:
    from bnhecke import _core
except ImportError:
    _core = None


def _inputs(n: int, rows: int):
    block = permutation_block(2 * n)
    if rows < len(block):
        block = block[:rows]
    z = np.arange(2 * n, dtype=np.uint8)  # identity: classifies x itself
    return np.ascontiguousarray(block), z, z.copy()


def _time_kernel(kernel, rows, z, zinv, repeat: int) -> tuple[float, np.ndarray]:
    out = np.empty(len(rows), dtype=np.uint64)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        kernel(rows, z, zinv, out)
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4, help="level (classifies S_2n)")
    parser.add_argument("--rows", type=int, default=0, help="row cap, 0 = all of S_2n")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rows, z, zinv = _inputs(args.n, args.rows or 10**9)
    total = len(rows)
    print(f"classifying {total} rows of S_{2 * args.n}")

    pure_time, pure_out = _time_kernel(
        _kernels_py.type_keys_product, rows, z, zinv, args.repeat
    )
    print(
        f"pure:     {pure_time:8.3f} s  "
        f"({pure_time / total * 1e9:9.1f} ns/row, {total / pure_time:12.0f} rows/s)"
    )

    if _core is None:
        print("compiled: not built (pip install -e . rebuilds it)")
        return

    fast_time, fast_out = _time_kernel(
        _core.type_keys_product, rows, z, zinv, args.repeat
    )
    print(
        f"compiled: {fast_time:8.3f} s  "
        f"({fast_time / total * 1e9:9.1f} ns/row, {total / fast_time:12.0f} rows/s)"
    )

    if not np.array_equal(pure_out, fast_out):
        raise SystemExit("KERNEL MISMATCH: outputs differ")
    keys, counts = np.unique(pure_out, return_counts=True)
    census = {key_partition(int(k)): int(c) for k, c in zip(keys, counts)}
    print(f"agreement: identical keys; census {census}")
    print(f"speedup:  {pure_time / fast_time:6.1f}x")


if __name__ == "__main__":
    main()
