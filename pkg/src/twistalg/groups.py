"""Finite groups given by an explicit Cayley table, elements numbered 0..order-1."""

from __future__ import annotations

import csv
import io
from functools import cached_property
from pathlib import Path

import numpy as np

from .dyadic import check_n, xor_table

MAX_ORDER = 256
MAX_DYADIC_N = 16


class NotAGroup(ValueError):
    def __init__(self, reason: str):
        super().__init__(f"not a group: {reason}")
        self.reason = reason


class GroupTooLarge(ValueError):
    pass


class FiniteGroup:
    """A validated finite group.

    ``table[p, q]`` is the index of the product ``pq``. Instances are immutable;
    the dyadic family skips the cubic validation and builds its table lazily.
    """

    def __init__(self, table, identity: int, inverse, *, dyadic_n: int | None = None, name: str = ""):
        self._table = None if table is None else np.asarray(table, dtype=np.int64)
        if self._table is not None:
            self._table.setflags(write=False)
        self.identity = int(identity)
        self.inverse = np.asarray(inverse, dtype=np.int64)
        self.inverse.setflags(write=False)
        self.order = len(self.inverse)
        self.dyadic_n = dyadic_n
        self.name = name or (f"G_{dyadic_n}" if dyadic_n is not None else f"group of order {self.order}")

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    @property
    def is_dyadic(self) -> bool:
        return self.dyadic_n is not None

    @cached_property
    def table(self) -> np.ndarray:
        if self._table is not None:
            return self._table
        t = xor_table(self.dyadic_n)
        t.setflags(write=False)
        return t

    def mul(self, p: int, q: int) -> int:
        if self.is_dyadic:
            return p ^ q
        return int(self._table[p, q])

    def inv(self, p: int) -> int:
        return int(self.inverse[p])

    def elements(self) -> range:
        return range(self.order)

    def same_as(self, other: "FiniteGroup") -> bool:
        if self is other:
            return True
        if self.order != other.order:
            return False
        if self.is_dyadic and other.is_dyadic:
            return True
        return bool(np.array_equal(self.table, other.table))

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.table.tolist())
        return buf.getvalue()


def from_table(table) -> FiniteGroup:
    """Validate a Cayley table and build the group it describes.

    Raises NotAGroup naming the first failed check (shape, range, Latin square,
    identity, inverses, associativity).
    """
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not a rectangular integer array ({exc})") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square array, got shape {t.shape}")
    order = t.shape[0]
    if order > MAX_ORDER:
        raise GroupTooLarge(f"order {order} exceeds the cap {MAX_ORDER}")
    if t.min() < 0 or t.max() >= order:
        raise NotAGroup("entries must lie in 0..order-1")

    full = np.arange(order)
    for p in range(order):
        if not np.array_equal(np.sort(t[p]), full):
            raise NotAGroup(f"row {p} is not a permutation")
        if not np.array_equal(np.sort(t[:, p]), full):
            raise NotAGroup(f"column {p} is not a permutation")

    ids = [e for e in range(order) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise NotAGroup("no two-sided identity")
    e = ids[0]

    inverse = np.empty(order, dtype=np.int64)
    for p in range(order):
        q = int(np.flatnonzero(t[p] == e)[0])
        if t[q, p] != e:
            raise NotAGroup(f"element {p} has no two-sided inverse")
        inverse[p] = q

    # (pq)r == p(qr) for all triples, one p-slice at a time
    for p in range(order):
        left = t[t[p]]            # left[q, r] = (pq) r
        right = t[p][t]           # right[q, r] = p (qr)
        bad = np.argwhere(left != right)
        if len(bad):
            q, r = bad[0]
            raise NotAGroup(f"not associative at ({p}, {q}, {r})")

    return FiniteGroup(t, e, inverse)


def dyadic(n: int) -> FiniteGroup:
    """G_n = Z_2^n under XOR; every element is its own inverse."""
    n = check_n(n, MAX_DYADIC_N)
    return FiniteGroup(None, 0, np.arange(1 << n), dyadic_n=n)


def cyclic(order: int) -> FiniteGroup:
    idx = np.arange(order)
    return from_table((idx[:, None] + idx[None, :]) % order)


def read_csv(source) -> FiniteGroup:
    """Read a Cayley table from a CSV path or text (one row of integers per line)."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        text = Path(source).read_text()
    else:
        text = source
    rows = [[int(c) for c in row] for row in csv.reader(io.StringIO(text)) if row]
    return from_table(rows)
