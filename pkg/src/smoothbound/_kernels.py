"""Sieve kernels: the hot inner loops behind prime tables and smooth counts.

Two interchangeable backends produce identical arrays:

* ``numba``  - @njit-compiled loops (default when numba imports cleanly),
* ``numpy``  - vectorized strided-slice sieves.

Selection is via the SMOOTHBOUND_BACKEND environment variable
(``numba``/``numpy``/``auto``). ``benchmarks/bench_kernels.py`` compares both.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

# Above this limit build_prime_table switches to a segmented sieve to keep
# the working set at one segment plus the output primes.
SEGMENT_THRESHOLD = 10_000_000
SEGMENT_SIZE = 1 << 22


def active_backend() -> str:
    """Resolve the kernel backend from SMOOTHBOUND_BACKEND."""
    choice = os.environ.get("SMOOTHBOUND_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("SMOOTHBOUND_BACKEND=numba but numba is not importable")
        return "numba"
    raise ValueError(f"unknown SMOOTHBOUND_BACKEND value: {choice!r}")


# --- numpy backend ---------------------------------------------------------

def _prime_mask_numpy(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=np.bool_)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return mask


def _largest_factor_numpy(limit: int) -> np.ndarray:
    lpf = np.zeros(limit + 1, dtype=np.int32)
    for p in np.flatnonzero(_prime_mask_numpy(limit)):
        lpf[p::p] = p
    return lpf


def _segment_mask_numpy(low: int, size: int, base_primes: np.ndarray) -> np.ndarray:
    seg = np.ones(size, dtype=np.bool_)
    high = low + size
    for p in base_primes:
        p = int(p)
        if p * p >= high:
            break
        start = max(p * p, ((low + p - 1) // p) * p)
        seg[start - low:: p] = False
    return seg


# --- numba backend ---------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _prime_mask_numba(limit):
        mask = np.ones(limit + 1, dtype=np.bool_)
        mask[0] = False
        mask[1] = False
        p = 2
        while p * p <= limit:
            if mask[p]:
                for q in range(p * p, limit + 1, p):
                    mask[q] = False
            p += 1
        return mask

    @njit(cache=True)
    def _largest_factor_numba(limit):
        lpf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, limit + 1):
            if lpf[p] == 0:
                for q in range(p, limit + 1, p):
                    lpf[q] = p
        return lpf

    @njit(cache=True)
    def _segment_mask_numba(low, size, base_primes):
        seg = np.ones(size, dtype=np.bool_)
        high = low + size
        for i in range(base_primes.size):
            p = base_primes[i]
            if p * p >= high:
                break
            start = ((low + p - 1) // p) * p
            if start < p * p:
                start = p * p
            for q in range(start - low, size, p):
                seg[q] = False
        return seg


# --- dispatch --------------------------------------------------------------

def prime_mask(limit: int) -> np.ndarray:
    """Boolean array a with a[k] True iff k is prime, for 0 <= k <= limit."""
    if active_backend() == "numba":
        return _prime_mask_numba(limit)
    return _prime_mask_numpy(limit)


def largest_factor_table(limit: int) -> np.ndarray:
    """int32 array a with a[k] = largest prime factor of k (a[0]=a[1]=0)."""
    if limit >= 2 ** 31:
        raise ValueError("largest_factor_table uses int32 entries; limit must be < 2^31")
    if active_backend() == "numba":
        return _largest_factor_numba(limit)
    return _largest_factor_numpy(limit)


def primes_up_to(limit: int) -> np.ndarray:
    """int64 array of all primes <= limit, ascending. Segmented above
    SEGMENT_THRESHOLD."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit <= SEGMENT_THRESHOLD:
        return np.flatnonzero(prime_mask(limit)).astype(np.int64)

    root = math.isqrt(limit)
    base = np.flatnonzero(prime_mask(root)).astype(np.int64)
    chunks = [base]
    segment = _segment_mask_numba if active_backend() == "numba" else _segment_mask_numpy
    low = root + 1
    while low <= limit:
        size = min(SEGMENT_SIZE, limit - low + 1)
        seg = segment(low, size, base)
        chunks.append(np.flatnonzero(seg).astype(np.int64) + low)
        low += size
    return np.concatenate(chunks)
