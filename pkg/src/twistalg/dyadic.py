"""Bit arithmetic on the dyadic group: non-negative integers under XOR."""

from __future__ import annotations

import numpy as np

MAX_N = 24


class DimensionTooLarge(ValueError):
    """A dimension exponent exceeded a table-size cap."""

    def __init__(self, n: int, cap: int, what: str = "n"):
        super().__init__(f"{what}={n} exceeds the cap {what} <= {cap}")
        self.n = n
        self.cap = cap


def check_n(n: int, cap: int = MAX_N, what: str = "n") -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"{what} must be non-negative, got {n}")
    if n > cap:
        raise DimensionTooLarge(n, cap, what)
    return n


def xor_mul(p: int, q: int) -> int:
    """Group product of two dyadic elements."""
    return p ^ q


def band(p: int, q: int) -> int:
    return p & q


def sob(p: int) -> int:
    """Sum of the bits of ``p``."""
    return int(p).bit_count()


def triangular(k: int) -> int:
    return k * (k - 1) // 2


def parity_sign(k: int) -> int:
    """(-1)**k as a small int."""
    return -1 if k & 1 else 1


def popcount(a: np.ndarray) -> np.ndarray:
    # np.bitwise_count needs numpy >= 2
    return np.bitwise_count(np.asarray(a, dtype=np.uint64)).astype(np.int64)


def xor_table(n: int) -> np.ndarray:
    """Cayley table of G_n, ``table[p, q] = p ^ q``."""
    idx = np.arange(1 << n, dtype=np.int64)
    return idx[:, None] ^ idx[None, :]
