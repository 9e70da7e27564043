"""Pure-Python reference computations used as independent checks in the tests."""

import itertools

import numpy as np

from twistalg.algebra import Element


def naive_mul(sign, op, x, y):
    """Double sum over basis pairs, no vectorization, no shared code."""
    dim = len(x)
    out = [0] * dim
    for p in range(dim):
        for q in range(dim):
            out[op(p, q)] += sign(p, q) * x[p] * y[q]
    return out


def popcount(v):
    return bin(v).count("1")


def brute_proper(sign, order, op, inv):
    for p in range(order):
        for q in range(order):
            if sign(p, q) * sign(q, inv[q]) != sign(op(p, q), inv[q]):
                return False
            if sign(inv[p], p) * sign(p, q) != sign(inv[p], op(p, q)):
                return False
    return True


def brute_associative(sign, order, op):
    for p, q, r in itertools.product(range(order), repeat=3):
        if sign(p, q) * sign(op(p, q), r) != sign(p, op(q, r)) * sign(q, r):
            return False
    return True


def rand_int(rng, dim, lo=-9, hi=9):
    return Element(rng.integers(lo, hi + 1, size=dim))


def rand_float(rng, dim):
    return Element(rng.standard_normal(dim))


def as_list(x):
    return [int(v) if isinstance(v, (int, np.integer)) else float(v) for v in x.coeffs]
