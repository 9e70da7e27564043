"""Elements of a twisted group algebra over the reals and their arithmetic.

An element ``x = sum_p x_p i_p`` is stored as a dense coefficient vector
indexed by group element. Integer coefficient vectors stay integer through
every product, so identities can be checked exactly.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dyadic import check_n
from .groups import FiniteGroup, GroupTooLarge, MAX_ORDER, dyadic
from .twist import Kind, MAX_TABLE_N, PropertyResult, Twist, check_properties

# named twists restrict consistently to every G_m, so cubic checks above
# the order cap are run on this subgroup instead
_NAMED_CHECK_N = 8


class DimensionMismatch(ValueError):
    pass


class TwistNotInvertive(ValueError):
    pass


class TwistNotProper(ValueError):
    pass


class TwistNotAssociative(ValueError):
    pass


class ZeroElement(ZeroDivisionError):
    pass


def _coerce(coeffs) -> np.ndarray:
    a = np.array(coeffs)
    if a.ndim != 1:
        raise ValueError(f"coefficients must be a 1-d vector, got shape {a.shape}")
    if a.dtype.kind in "biu":
        return a.astype(np.int64)
    a = a.astype(np.float64)
    if not np.isfinite(a).all():
        raise ValueError("coefficients must be finite")
    return a


@dataclass(frozen=True, eq=False)
class Element:
    """Dense coefficient vector of a twisted group algebra element."""

    coeffs: np.ndarray

    # keep numpy from treating an Element as a sequence in mixed arithmetic
    __array_ufunc__ = None

    def __post_init__(self):
        a = _coerce(self.coeffs)
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @classmethod
    def zero(cls, dim: int, dtype=np.int64) -> "Element":
        return cls(np.zeros(dim, dtype=dtype))

    @classmethod
    def basis(cls, p: int, dim: int, coeff=1) -> "Element":
        if not 0 <= p < dim:
            raise IndexError(f"basis index {p} out of range for dimension {dim}")
        a = np.zeros(dim, dtype=np.asarray(coeff).dtype)
        a[p] = coeff
        return cls(a)

    @classmethod
    def scalar(cls, a, dim: int) -> "Element":
        return cls.basis(0, dim, a)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def n(self) -> int | None:
        d = self.dim
        return d.bit_length() - 1 if d & (d - 1) == 0 else None

    @property
    def real(self):
        return self.coeffs[0]

    def is_integral(self) -> bool:
        return self.coeffs.dtype.kind == "i"

    def __len__(self):
        return self.dim

    def __getitem__(self, p):
        return self.coeffs[p]

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.dim, self.coeffs.tobytes()))

    def allclose(self, other: "Element", rtol=1e-9, atol=1e-12) -> bool:
        _same_dim(self, other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_dim(self, other)
        return Element(self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_dim(self, other)
        return Element(self.coeffs - other.coeffs)

    def __neg__(self):
        return Element(-self.coeffs)

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return Element(self.coeffs * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Element(self.coeffs / c)

    def __repr__(self):
        return f"Element({format_element(self)!r}, dim={self.dim})"

    def __str__(self):
        return format_element(self)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "coeffs": self.coeffs.tolist()})

    @classmethod
    def from_json(cls, text) -> "Element":
        obj = json.loads(text) if isinstance(text, str) else text
        x = cls(obj["coeffs"])
        if obj.get("n") is not None and x.dim != 1 << int(obj["n"]):
            raise DimensionMismatch(f"n={obj['n']} but {x.dim} coefficients given")
        return x


def _same_dim(*xs: Element):
    dims = {x.dim for x in xs}
    if len(dims) != 1:
        raise DimensionMismatch(f"elements have different dimensions {sorted(dims)}")


# --- text format -------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<coef>{_NUM})\s*(?P<star>\*)?\s*)?(?:i\s*(?P<idx>\d+))?\s*"
)


def parse_element(text: str, dim: int) -> Element:
    """Parse ``"1 - 2*i3 + 0.5*i5"`` style text; repeated indices are summed."""
    s = text.strip()
    if not s:
        raise ValueError("empty element literal")
    terms: list[tuple[int, object]] = []
    pos, first = 0, True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse element {text!r} at position {pos}")
        sign, coef, idx = m.group("sign"), m.group("coef"), m.group("idx")
        if coef is None and idx is None:
            raise ValueError(f"dangling sign in element {text!r}")
        if m.group("star") and idx is None:
            raise ValueError(f"'*' must be followed by a basis vector in {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing '+' or '-' between terms in {text!r}")
        if coef is None:
            c = 1
        elif re.fullmatch(r"\d+", coef):
            c = int(coef)
        else:
            c = float(coef)
        if sign == "-":
            c = -c
        p = 0 if idx is None else int(idx)
        if p >= dim:
            raise ValueError(f"basis index i{p} out of range for dimension {dim}")
        terms.append((p, c))
        pos, first = m.end(), False

    if all(isinstance(c, int) for _, c in terms):
        a = np.zeros(dim, dtype=np.int64)
    else:
        a = np.zeros(dim, dtype=np.float64)
    for p, c in terms:
        a[p] += c
    return Element(a)


def _fmt_num(c) -> str:
    c = c.item() if hasattr(c, "item") else c
    if isinstance(c, float) and c.is_integer() and abs(c) < 2**53:
        c = int(c)
    return str(c) if isinstance(c, int) else repr(float(c))


def format_element(x: Element) -> str:
    parts: list[str] = []
    for p in np.flatnonzero(x.coeffs):
        c = x.coeffs[p]
        neg = c < 0
        mag = _fmt_num(-c if neg else c)
        if p == 0:
            body = mag
        elif mag == "1":
            body = f"i{p}"
        else:
            body = f"{mag}*i{p}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


# --- context -----------------------------------------------------------------

class AlgebraContext:
    """A group together with a twist on it: the algebra ``[G, sgn]`` over the reals."""

    def __init__(self, group: FiniteGroup, twist: Twist):
        if group.is_dyadic:
            check_n(group.dyadic_n, MAX_TABLE_N)
        self.group = group
        self.twist = twist
        self.signs = np.asarray(twist.signs_on(group), dtype=np.int64)
        self._verdicts: dict[str, PropertyResult] = {}

    @classmethod
    def dyadic(cls, kind, n: int) -> "AlgebraContext":
        t = kind if isinstance(kind, Twist) else Twist.of(kind)
        return cls(dyadic(check_n(n, MAX_TABLE_N)), t)

    def __repr__(self):
        return f"AlgebraContext({self.twist.name} on {self.group.name})"

    @property
    def dim(self) -> int:
        return self.group.order

    @cached_property
    def _idx(self) -> np.ndarray:
        return np.arange(self.dim)

    @cached_property
    def left_div(self) -> np.ndarray:
        """``left_div[p, r]`` is the ``q`` with ``pq = r``, i.e. ``p^-1 r``."""
        g = self.group
        if g.is_dyadic:
            return np.asarray(g.table)
        return np.asarray(g.table)[g.inverse[:, None], self._idx[None, :]]

    @cached_property
    def right_div(self) -> np.ndarray:
        """``right_div[q, r]`` is the ``p`` with ``pq = r``, i.e. ``r q^-1``."""
        g = self.group
        if g.is_dyadic:
            return np.asarray(g.table)
        return np.asarray(g.table)[self._idx[None, :], g.inverse[:, None]]

    def element(self, coeffs) -> Element:
        x = coeffs if isinstance(coeffs, Element) else Element(coeffs)
        self._check(x)
        return x

    def basis(self, p: int, coeff=1) -> Element:
        return Element.basis(p, self.dim, coeff)

    def one(self) -> Element:
        return Element.basis(self.group.identity, self.dim)

    def parse(self, text: str) -> Element:
        return parse_element(text, self.dim)

    def _check(self, *xs: Element):
        for x in xs:
            if x.dim != self.dim:
                raise DimensionMismatch(f"element has dimension {x.dim}, algebra has {self.dim}")

    def verdict(self, prop: str) -> PropertyResult:
        """Cached exhaustive check of one twist property."""
        if prop not in self._verdicts:
            cubic = prop in ("associative", "alt_associative")
            g = self.group
            if cubic and g.order > MAX_ORDER:
                if self.twist.kind is Kind.TABLE or not g.is_dyadic:
                    raise GroupTooLarge(f"cannot check {prop} on order {g.order} > {MAX_ORDER}")
                g = dyadic(_NAMED_CHECK_N)
            report = check_properties(self.twist, g, only=[prop])
            self._verdicts[prop] = report.results[prop]
        return self._verdicts[prop]

    def require(self, prop: str, exc: type[Exception]):
        v = self.verdict(prop)
        if not v.holds:
            raise exc(f"twist {self.twist.name} is not {prop} on {self.group.name} (counterexample {v.witness})")


# --- products ----------------------------------------------------------------

def mul(ctx: AlgebraContext, x: Element, y: Element) -> Element:
    """Twisted product: coefficient at r is the sum of sgn(p, q) x_p y_q over pq = r."""
    ctx._check(x, y)
    Q = ctx.left_div
    idx = ctx._idx[:, None]
    # terms[p, r] = sgn(p, p^-1 r) x_p y_{p^-1 r}
    terms = ctx.signs[idx, Q] * x.coeffs[:, None] * y.coeffs[Q]
    return Element(terms.sum(axis=0))


def conjugate(ctx: AlgebraContext, x: Element) -> Element:
    ctx._check(x)
    ctx.require("invertive", TwistNotInvertive)
    inv = ctx.group.inverse
    # xbar_p = sgn(p^-1, p) x_{p^-1}
    return Element(ctx.signs[inv, ctx._idx] * x.coeffs[inv])


def inner(x: Element, y: Element):
    _same_dim(x, y)
    return np.dot(x.coeffs, y.coeffs).item()


def norm_sq(x: Element):
    return inner(x, x)


def norm(x: Element) -> float:
    return math.sqrt(norm_sq(x))


def left_mul_matrix(ctx: AlgebraContext, z: Element) -> np.ndarray:
    """Rows are ``i_r z`` for every r."""
    Q = ctx.left_div                        # Q[r, p] = r^-1 p
    return ctx.signs[ctx._idx[:, None], Q] * z.coeffs[Q]


def right_mul_matrix(ctx: AlgebraContext, z: Element) -> np.ndarray:
    """Rows are ``z i_r`` for every r."""
    P = ctx.right_div                       # P[r, p] = p r^-1
    return ctx.signs[P, ctx._idx[:, None]] * z.coeffs[P]


def _agree(a: np.ndarray, b: np.ndarray) -> bool:
    if a.dtype.kind == "i" and b.dtype.kind == "i":
        return bool(np.array_equal(a, b))
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return bool(np.allclose(a, b, rtol=1e-9, atol=1e-12 * scale))


def mul_via_inner(ctx: AlgebraContext, x: Element, y: Element) -> Element:
    """Product from inner products: ``xy = sum_r <x, i_r ybar> i_r = sum_r <y, xbar i_r> i_r``.

    Only valid for proper twists. Both forms are evaluated and must agree.
    """
    ctx._check(x, y)
    ctx.require("proper", TwistNotProper)
    first = left_mul_matrix(ctx, conjugate(ctx, y)) @ x.coeffs
    second = right_mul_matrix(ctx, conjugate(ctx, x)) @ y.coeffs
    if not _agree(first, second):
        raise ArithmeticError("the two inner-product forms of the product disagree")
    return Element(first)


def convolution(x: Element, y: Element) -> Element:
    """Dyadic convolution ``(x*y)_r = sum_p x_p y_{p^r}``."""
    _same_dim(x, y)
    if x.n is None:
        raise DimensionMismatch("dyadic convolution needs a power-of-two dimension")
    idx = np.arange(x.dim)
    return Element((x.coeffs[:, None] * y.coeffs[idx[:, None] ^ idx[None, :]]).sum(axis=0))


def commutator(ctx: AlgebraContext, x: Element, y: Element) -> Element:
    return mul(ctx, x, y) - mul(ctx, y, x)


def _require_cyd(ctx: AlgebraContext):
    if ctx.twist.kind is not Kind.CAYLEY_DICKSON:
        raise ValueError(f"this operation needs the cyd twist, not {ctx.twist.name}")


def commutator_closed(ctx: AlgebraContext, x: Element, y: Element) -> Element:
    """``[x, y]_r = sum over 0 < p != r of cyd(p, r) (x_{pr} y_p - x_p y_{pr})``, zero at r = 0."""
    _require_cyd(ctx)
    ctx._check(x, y)
    idx = ctx._idx
    P, R = idx[:, None], idx[None, :]
    PR = P ^ R
    xs, ys = x.coeffs, y.coeffs
    terms = ctx.signs * (xs[PR] * ys[P] - xs[P] * ys[PR])
    terms = np.where((P > 0) & (P != R), terms, 0)
    out = terms.sum(axis=0)
    out[0] = 0
    return Element(out)


def cd_conjugate(x: Element) -> Element:
    a = x.coeffs.copy() if x.is_integral() else x.coeffs.astype(np.float64)
    a[1:] = -a[1:]
    return Element(a)


def inverse_cd(x: Element) -> Element:
    """Two-sided inverse ``xbar / |x|^2`` in a Cayley-Dickson algebra."""
    nsq = norm_sq(x)
    if nsq == 0:
        raise ZeroElement("zero has no inverse")
    return Element(cd_conjugate(x).coeffs / nsq)


@dataclass
class IdentityCheck:
    passed: bool
    residual: float


def square_identity_check(x: Element, tol: float | None = None) -> IdentityCheck:
    """Compare ``x^2`` with ``2 x_0 x - |x|^2`` under the Cayley-Dickson twist.

    Integer elements are compared exactly; floats against ``tol`` (default
    ``1e-12 * |x|^2``, floored at 1e-12).
    """
    if x.n is None:
        raise DimensionMismatch("needs a power-of-two dimension")
    ctx = AlgebraContext.dyadic(Kind.CAYLEY_DICKSON, x.n)
    sq = mul(ctx, x, x)
    nsq = norm_sq(x)
    expected = x * (2 * x.real) - Element.scalar(nsq, x.dim)
    diff = (sq - expected).coeffs
    residual = float(np.sqrt(np.dot(diff, diff)))
    if tol is None:
        tol = 0.0 if x.is_integral() else 1e-12 * max(1.0, float(nsq))
    return IdentityCheck(residual <= tol, residual)


# --- regular representation --------------------------------------------------

def matrix_rep(ctx: AlgebraContext, p: int) -> np.ndarray:
    """Left-regular matrix ``L_p``: entry (r, s) is sgn(p, s) when r = ps, else 0."""
    ctx.require("associative", TwistNotAssociative)
    if not 0 <= p < ctx.dim:
        raise IndexError(f"group element {p} out of range")
    L = np.zeros((ctx.dim, ctx.dim), dtype=np.int64)
    s = ctx._idx
    L[np.asarray(ctx.group.table)[p], s] = ctx.signs[p, s]
    return L


def regular_rep(ctx: AlgebraContext, x: Element) -> np.ndarray:
    """``sum_p x_p L_p``."""
    ctx._check(x)
    out = np.zeros((ctx.dim, ctx.dim), dtype=x.coeffs.dtype)
    for p in np.flatnonzero(x.coeffs):
        out = out + x.coeffs[p] * matrix_rep(ctx, int(p))
    return out


def mul_table(ctx: AlgebraContext) -> list[list[str]]:
    """Cells ``+k`` / ``-k`` meaning ``i_p i_q = +-i_k``, row p = left factor."""
    T = np.asarray(ctx.group.table)
    return [[("+" if ctx.signs[p, q] > 0 else "-") + str(int(T[p, q])) for q in range(ctx.dim)] for p in range(ctx.dim)]
