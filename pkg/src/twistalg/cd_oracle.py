"""Brute-force Cayley-Dickson products on nested ordered pairs.

This is the reference the sign tables are checked against, so nothing here
touches :mod:`twistalg.twist`. A pair tree of depth k is either a real
leaf (k = 0) or a tuple ``(a, b)`` of two depth k-1 trees. Trees are
mapped to coefficient vectors by interleaving: the pair ``(x, y)`` becomes
``x_0, y_0, x_1, y_1, ...``, which gives ``i_{2n} = (i_n, 0)`` and
``i_{2n+1} = (0, i_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .algebra import Element
from .dyadic import check_n

PairTree = Union[int, float, tuple]

MAX_ORACLE_N = 8


class DepthMismatch(ValueError):
    pass


class NotSignedBasis(AssertionError):
    pass


def depth(x: PairTree) -> int:
    """Depth of a perfect pair tree; unbalanced trees raise DepthMismatch."""
    if not isinstance(x, tuple):
        return 0
    if len(x) != 2:
        raise DepthMismatch(f"tree nodes must be pairs, got {len(x)} children")
    da, db = depth(x[0]), depth(x[1])
    if da != db:
        raise DepthMismatch(f"unbalanced pair: subtrees of depth {da} and {db}")
    return da + 1


def _add(x, y):
    if isinstance(x, tuple):
        return (_add(x[0], y[0]), _add(x[1], y[1]))
    return x + y


def _sub(x, y):
    if isinstance(x, tuple):
        return (_sub(x[0], y[0]), _sub(x[1], y[1]))
    return x - y


def _neg(x):
    if isinstance(x, tuple):
        return (_neg(x[0]), _neg(x[1]))
    return -x


def cd_conj(x: PairTree) -> PairTree:
    """``(a, b)* = (a*, -b)``; leaves are self-conjugate."""
    if isinstance(x, tuple):
        return (cd_conj(x[0]), _neg(x[1]))
    return x


def _cd(x, y):
    if not isinstance(x, tuple):
        return x * y
    a, b = x
    c, d = y
    # (a,b)(c,d) = (ac - d b*, a* d + c b)
    return (_sub(_cd(a, c), _cd(d, cd_conj(b))), _add(_cd(cd_conj(a), d), _cd(c, b)))


def _hd(x, y):
    if not isinstance(x, tuple):
        return x * y
    a, b = x
    c, d = y
    # (a,b)(c,d) = (ac - bd, ad + bc), no conjugation
    return (_sub(_hd(a, c), _hd(b, d)), _add(_hd(a, d), _hd(b, c)))


def _same_depth(x, y):
    dx, dy = depth(x), depth(y)
    if dx != dy:
        raise DepthMismatch(f"pair trees have depths {dx} and {dy}")


def cd_mul(x: PairTree, y: PairTree) -> PairTree:
    """Cayley-Dickson product of two trees of equal depth."""
    _same_depth(x, y)
    return _cd(x, y)


def hadamard_mul(x: PairTree, y: PairTree) -> PairTree:
    """Pair product without conjugation, ``(a,b)(c,d) = (ac - bd, ad + bc)``."""
    _same_depth(x, y)
    return _hd(x, y)


def _flatten(x) -> list:
    if not isinstance(x, tuple):
        return [x]
    left, right = _flatten(x[0]), _flatten(x[1])
    out = [None] * (2 * len(left))
    out[0::2] = left
    out[1::2] = right
    return out


def shuffle(x: PairTree) -> Element:
    """Interleave a pair tree into a coefficient vector of length 2**depth."""
    return Element(_flatten(x))


def _build(c: list):
    if len(c) == 1:
        return c[0]
    return (_build(c[0::2]), _build(c[1::2]))


def unshuffle(e, depth: int | None = None) -> PairTree:
    """Inverse of :func:`shuffle`."""
    coeffs = e.coeffs if isinstance(e, Element) else np.asarray(e)
    if depth is None:
        depth = Element(coeffs).n
    if depth is None or len(coeffs) != 1 << depth:
        raise DepthMismatch(f"{len(coeffs)} coefficients do not fill a tree of depth {depth}")
    return _build([c.item() for c in coeffs])


def basis_tree(p: int, n: int) -> PairTree:
    c = [0] * (1 << n)
    c[p] = 1
    return _build(c)


def _basis_sign(product: Callable, p: int, q: int, n: int) -> int:
    n = check_n(n, MAX_ORACLE_N)
    dim = 1 << n
    if not (0 <= p < dim and 0 <= q < dim):
        raise ValueError(f"basis indices must lie in 0..{dim - 1}")
    flat = _flatten(product(basis_tree(p, n), basis_tree(q, n)))
    r = p ^ q
    nonzero = [k for k, v in enumerate(flat) if v != 0]
    if nonzero != [r] or flat[r] not in (1, -1):
        raise NotSignedBasis(f"i_{p} i_{q} is not +-i_{r}: {flat}")
    return int(flat[r])


def oracle_twist(p: int, q: int, n: int) -> int:
    """Sign of ``i_p i_q`` computed by the Cayley-Dickson recursion."""
    return _basis_sign(_cd, p, q, n)


def hadamard_oracle_twist(p: int, q: int, n: int) -> int:
    """Sign of ``i_p i_q`` under the conjugation-free pair product."""
    return _basis_sign(_hd, p, q, n)


@dataclass
class SweepResult:
    name: str
    n: int
    checked: int
    failed: int
    first_failure: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.first_failure is None else f", first mismatch at {self.first_failure}"
        return f"{status} {self.name} n={self.n}: {self.checked - self.failed}/{self.checked} pairs agree{tail}"


def sweep(name: str, oracle: Callable[[int, int, int], int], reference: Callable[[int, int], int], n: int) -> SweepResult:
    """Compare an oracle with a reference sign rule on every pair of G_n."""
    dim = 1 << check_n(n, MAX_ORACLE_N)
    failed, first = 0, None
    for p in range(dim):
        for q in range(dim):
            if oracle(p, q, n) != reference(p, q):
                failed += 1
                if first is None:
                    first = (p, q)
    return SweepResult(name, n, dim * dim, failed, first)
