"""Kernel selection, level tables, and the parallel tally driver.

The heavy computations all reduce to one primitive: stream the rows of
a permutation block through type_keys_product and reduce the resulting
uint64 type keys.  The kernel comes from the compiled extension
bnhecke._core when it is importable, with bnhecke._kernels_py as the
pure-Python twin; HECKE_BACKEND=auto|compiled|pure forces the choice
at import time.

A LevelTable materializes all of S_2n (lexicographic uint8 rows),
classifies every row by stable coset type, and serves the rows of any
double coset K_mu(n) as a contiguous block.  Tables are cached per
level, and the per-(lambda, nu, level) tallies that back structure
constants are memoized so one pass serves every coefficient read.

Parallel tallies fork workers over row slices (HECKE_JOBS or an
explicit jobs count); each worker reduces its slice to a key->count
dict and the parent sums them, so the result is deterministic for any
schedule.
"""

from __future__ import annotations

import os
from collections.abc import Callable

import numpy as np

from .errors import UsageError, WeightExceedsLevel
from .partitions import Partition, weight
from .permutations import Permutation
from .cosets import coset_representative, double_coset_size

__all__ = [
    "backend_name",
    "partition_key",
    "key_partition",
    "permutation_block",
    "LevelTable",
    "level_table",
    "product_tally",
    "resolve_jobs",
    "clear_caches",
]

MAX_TABLE_LEVEL = 5  # S_10 is 3.6M rows; S_12 would be 479M

_CHUNK = 1 << 16
_PARALLEL_THRESHOLD = 1 << 18


def _select_kernel() -> tuple[str, Callable]:
    mode = os.environ.get("HECKE_BACKEND", "auto")
    if mode not in ("auto", "compiled", "pure"):
        raise UsageError(f"HECKE_BACKEND must be auto, compiled or pure, not {mode!r}")
    if mode in ("auto", "compiled"):
        try:
            from . import _core

            return "compiled", _core.type_keys_product
        except ImportError:
            if mode == "compiled":
                raise UsageError(
                    "HECKE_BACKEND=compiled but the bnhecke._core extension is not built"
                ) from None
    from . import _kernels_py

    return "pure", _kernels_py.type_keys_product


_BACKEND_NAME, _KERNEL = _select_kernel()


def backend_name() -> str:
    """Which kernel implementation was selected at import."""
    return _BACKEND_NAME


def resolve_jobs(explicit: int | None = None) -> int:
    """Worker count: HECKE_JOBS overrides an explicit request."""
    env = os.environ.get("HECKE_JOBS")
    if env is not None:
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"HECKE_JOBS must be an integer, not {env!r}") from None
    elif explicit is not None:
        jobs = explicit
    else:
        jobs = min(os.cpu_count() or 1, 8)
    if jobs < 1:
        raise UsageError(f"worker count must be positive, not {jobs}")
    return jobs


def partition_key(mu: Partition) -> int:
    """Pack a partition into descending 4-bit nibbles of a uint64."""
    if any(p > 15 for p in mu) or len(mu) > 16:
        raise UsageError(f"partition {mu} does not fit the nibble key format")
    key = 0
    for shift, part in enumerate(mu):
        key |= part << (4 * shift)
    return key


def key_partition(key: int) -> Partition:
    """Inverse of partition_key."""
    parts = []
    key = int(key)
    while key:
        parts.append(key & 0xF)
        key >>= 4
    return tuple(parts)


def permutation_block(m: int) -> np.ndarray:
    """All of S_m as an (m!, m) uint8 array of 0-based rows, lex order.

    Built level by level: the block for S_k is k stacked copies of the
    S_(k-1) block with each first element prepended and the remaining
    digits relabelled, which keeps everything vectorized.
    """
    block = np.zeros((1, 0), dtype=np.uint8)
    for k in range(1, m + 1):
        prev_count = block.shape[0]
        cur = np.empty((prev_count * k, k), dtype=np.uint8)
        for first in range(k):
            digits = np.array(
                [d for d in range(k) if d != first], dtype=np.uint8
            )
            seg = cur[first * prev_count : (first + 1) * prev_count]
            seg[:, 0] = first
            if k > 1:
                seg[:, 1:] = digits[block]
        block = cur
    return block


# State inherited by forked workers; set immediately before a pool runs.
_WORK: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None


def _slice_keys(span: tuple[int, int]) -> tuple[int, np.ndarray]:
    lo, hi = span
    rows, z, zinv = _WORK
    out = np.empty(hi - lo, dtype=np.uint64)
    for a in range(lo, hi, _CHUNK):
        b = min(a + _CHUNK, hi)
        _KERNEL(rows[a:b], z, zinv, out[a - lo : b - lo])
    return lo, out


def _slice_counts(span: tuple[int, int]) -> dict[int, int]:
    _, keys = _slice_keys(span)
    uniq, counts = np.unique(keys, return_counts=True)
    return {int(k): int(c) for k, c in zip(uniq, counts)}


def _spans(n_rows: int, jobs: int) -> list[tuple[int, int]]:
    step = -(-n_rows // jobs)
    return [(a, min(a + step, n_rows)) for a in range(0, n_rows, step)]


def _run_pool(worker, spans):
    import multiprocessing as mp
    from concurrent.futures import ProcessPoolExecutor

    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=len(spans), mp_context=ctx) as pool:
        return list(pool.map(worker, spans))


def compute_keys(
    rows: np.ndarray, z: np.ndarray, zinv: np.ndarray, jobs: int = 1
) -> np.ndarray:
    """Type key of rows[r]^{-1} z for every row."""
    global _WORK
    n_rows = rows.shape[0]
    _WORK = (rows, z, zinv)
    try:
        if jobs > 1 and n_rows >= _PARALLEL_THRESHOLD:
            out = np.empty(n_rows, dtype=np.uint64)
            for lo, part in _run_pool(_slice_keys, _spans(n_rows, jobs)):
                out[lo : lo + len(part)] = part
            return out
        return _slice_keys((0, n_rows))[1]
    finally:
        _WORK = None


def compute_counts(
    rows: np.ndarray, z: np.ndarray, zinv: np.ndarray, jobs: int = 1
) -> dict[int, int]:
    """Histogram of type keys of rows[r]^{-1} z."""
    global _WORK
    n_rows = rows.shape[0]
    _WORK = (rows, z, zinv)
    try:
        if jobs > 1 and n_rows >= _PARALLEL_THRESHOLD:
            total: dict[int, int] = {}
            for partial in _run_pool(_slice_counts, _spans(n_rows, jobs)):
                for k, c in partial.items():
                    total[k] = total.get(k, 0) + c
            return total
        return _slice_counts((0, n_rows))
    finally:
        _WORK = None


class LevelTable:
    """All of S_2n grouped by stable coset type."""

    def __init__(self, n: int, jobs: int = 1):
        if not 1 <= n <= MAX_TABLE_LEVEL:
            raise UsageError(
                f"level tables cover 1 <= n <= {MAX_TABLE_LEVEL}; S_{2*n} "
                "would not fit in memory"
            )
        self.n = n
        m = 2 * n
        self._perms = permutation_block(m)
        ident = np.arange(m, dtype=np.uint8)
        keys = compute_keys(self._perms, ident, ident, jobs)
        self._order = np.argsort(keys, kind="stable")
        sorted_keys = keys[self._order]
        uniq, starts = np.unique(sorted_keys, return_index=True)
        self._uniq = uniq
        self._starts = np.append(starts, len(sorted_keys))
        for mu_key, size in zip(self._uniq, np.diff(self._starts)):
            mu = key_partition(int(mu_key))
            assert size == double_coset_size(mu, n), (mu, int(size))

    def types(self) -> list[Partition]:
        return sorted(
            (key_partition(int(k)) for k in self._uniq),
            key=lambda mu: (weight(mu), mu),
        )

    def _span(self, mu: Partition) -> tuple[int, int]:
        if weight(mu) > self.n:
            raise WeightExceedsLevel(
                f"wt{mu} = {weight(mu)} exceeds level {self.n}"
            )
        key = partition_key(mu)
        pos = int(np.searchsorted(self._uniq, np.uint64(key)))
        assert pos < len(self._uniq) and self._uniq[pos] == key, mu
        return int(self._starts[pos]), int(self._starts[pos + 1])

    def size(self, mu: Partition) -> int:
        lo, hi = self._span(mu)
        return hi - lo

    def rows(self, mu: Partition) -> np.ndarray:
        """The double coset K_mu(n) as a contiguous (size, 2n) block."""
        lo, hi = self._span(mu)
        return np.ascontiguousarray(self._perms[self._order[lo:hi]])


_TABLES: dict[int, LevelTable] = {}
_TALLIES: dict[tuple[Partition, Partition, int], dict[Partition, int]] = {}


def level_table(n: int, jobs: int | None = None) -> LevelTable:
    if n not in _TABLES:
        _TABLES[n] = LevelTable(n, resolve_jobs(jobs))
    return _TABLES[n]


def product_tally(
    lam: Partition, nu: Partition, n: int, jobs: int | None = None
) -> dict[Partition, int]:
    """Count x in K_lam(n) by the stable coset type of x^{-1} z_nu.

    One pass serves every mu at once: the mu entry, divided by |B_n|,
    is the structure constant b_{lam, mu}^{nu}(n).
    """
    memo = (tuple(lam), tuple(nu), n)
    if memo not in _TALLIES:
        table = level_table(n, jobs)
        rows = table.rows(lam)
        m = 2 * n
        z = np.array(
            [v - 1 for v in coset_representative(nu, n).one_line(m)],
            dtype=np.uint8,
        )
        zinv = np.empty(m, dtype=np.uint8)
        zinv[z] = np.arange(m, dtype=np.uint8)
        counts = compute_counts(rows, z, zinv, resolve_jobs(jobs))
        assert sum(counts.values()) == len(rows)
        _TALLIES[memo] = {
            key_partition(k): c for k, c in sorted(counts.items())
        }
    return _TALLIES[memo]


def clear_caches() -> None:
    _TABLES.clear()
    _TALLIES.clear()
