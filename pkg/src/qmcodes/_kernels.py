"""Pairwise word-distance kernels.

Every kernel has a numba ``@njit`` version and a pure-numpy twin with the same
signature.  The numba path is used unless ``QMCODES_DISABLE_NUMBA`` is set to a
non-empty value other than ``0`` (or numba cannot be imported).

Words are packed into an ``(n, L)`` ``int64`` array padded with ``-1`` plus a
length vector.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

_flag = os.environ.get("QMCODES_DISABLE_NUMBA", "")
DISABLE_NUMBA = _flag not in ("", "0")

try:
    if DISABLE_NUMBA:
        raise ImportError
    from numba import njit
except ImportError:
    HAVE_NUMBA = False
else:
    HAVE_NUMBA = True

BACKEND = "numba" if HAVE_NUMBA else "numpy"

METRICS = ("prefix", "suffix", "factor")


def encode(words: Sequence[Sequence[int]], reverse: bool = False) -> tuple[np.ndarray, np.ndarray]:
    lens = np.fromiter((len(w) for w in words), dtype=np.int64, count=len(words))
    width = int(lens.max()) if len(words) else 0
    arr = np.full((len(words), max(width, 1)), -1, dtype=np.int64)
    for i, w in enumerate(words):
        if w:
            arr[i, : len(w)] = w[::-1] if reverse else w
    return arr, lens


# -- numpy twins ------------------------------------------------------------


def prefix_matrix_np(arr: np.ndarray, lens: np.ndarray) -> np.ndarray:
    width = arr.shape[1]
    pos = np.arange(width)
    valid = pos[None, :] < lens[:, None]
    eq = (arr[:, None, :] == arr[None, :, :]) & valid[:, None, :] & valid[None, :, :]
    lcp = np.cumprod(eq, axis=2).sum(axis=2)
    return lens[:, None] + lens[None, :] - 2 * lcp


def factor_matrix_np(arr: np.ndarray, lens: np.ndarray) -> np.ndarray:
    n, width = arr.shape
    valid = np.arange(width)[None, :] < lens[:, None]
    best = np.zeros((n, n), dtype=np.int64)
    prev = np.zeros((width + 1, n, n), dtype=np.int64)
    for i in range(width):
        cur = np.zeros_like(prev)
        ai = arr[:, i]
        vi = valid[:, i]
        for j in range(width):
            match = (ai[:, None] == arr[None, :, j]) & vi[:, None] & valid[None, :, j]
            cur[j + 1] = np.where(match, prev[j] + 1, 0)
        np.maximum(best, cur.max(axis=0), out=best)
        prev = cur
    return lens[:, None] + lens[None, :] - 2 * best


# -- numba kernels ----------------------------------------------------------


def _prefix_matrix_py(arr, lens):
    n = arr.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            m = min(lens[i], lens[j])
            p = 0
            while p < m and arr[i, p] == arr[j, p]:
                p += 1
            out[i, j] = lens[i] + lens[j] - 2 * p
    return out


def _factor_matrix_py(arr, lens):
    n, width = arr.shape
    out = np.empty((n, n), dtype=np.int64)
    prev = np.zeros(width + 1, dtype=np.int64)
    cur = np.zeros(width + 1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            best = 0
            prev[:] = 0
            for x in range(lens[i]):
                cur[0] = 0
                for y in range(lens[j]):
                    if arr[i, x] == arr[j, y]:
                        cur[y + 1] = prev[y] + 1
                        if cur[y + 1] > best:
                            best = cur[y + 1]
                    else:
                        cur[y + 1] = 0
                for y in range(lens[j] + 1):
                    prev[y] = cur[y]
            out[i, j] = lens[i] + lens[j] - 2 * best
    return out


if HAVE_NUMBA:
    prefix_matrix_nb = njit(cache=True)(_prefix_matrix_py)
    factor_matrix_nb = njit(cache=True)(_factor_matrix_py)
else:
    prefix_matrix_nb = prefix_matrix_np
    factor_matrix_nb = factor_matrix_np


def pairwise(metric: str, words: Sequence[Sequence[int]], backend: str | None = None) -> np.ndarray:
    """``out[i, j] = d(words[i], words[j])`` for ``metric`` in :data:`METRICS`."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    backend = backend or BACKEND
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is disabled or missing")
    if not words:
        return np.zeros((0, 0), dtype=np.int64)
    arr, lens = encode(words, reverse=(metric == "suffix"))
    if metric == "factor":
        fn = factor_matrix_nb if backend == "numba" else factor_matrix_np
    else:
        fn = prefix_matrix_nb if backend == "numba" else prefix_matrix_np
    return np.asarray(fn(arr, lens), dtype=np.int64)
