"""Sign functions (twists) on groups.

A twist maps pairs of group elements to -1 or +1 and deforms the group
algebra product into ``i_p i_q = sgn(p, q) i_{pq}``. The named twists live
on the dyadic group G (non-negative integers under XOR); table twists live
on any :class:`~twistalg.groups.FiniteGroup`.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .dyadic import check_n, parity_sign, popcount, sob
from .groups import MAX_ORDER, FiniteGroup, GroupTooLarge, dyadic

MAX_TABLE_N = 12
MAX_ENUM_ORDER = 4

PROPERTIES = ("positive", "identive", "invertive", "proper", "associative", "alt_associative")


class GroupMismatch(ValueError):
    pass


class Kind(str, Enum):
    CAYLEY_DICKSON = "cyd"
    CLIFFORD = "clf"
    HADAMARD = "hadamard"
    TRIVIAL = "trivial"
    GRADE_PARITY = "grade-parity"
    XOR_PARITY = "xor-parity"
    TABLE = "table"


_ALIASES = {
    "cayley-dickson": Kind.CAYLEY_DICKSON,
    "clifford": Kind.CLIFFORD,
    "eta": Kind.HADAMARD,
    "iota": Kind.TRIVIAL,
}


def parse_kind(name: str) -> Kind:
    key = name.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return Kind(key)
    except ValueError:
        names = ", ".join(k.value for k in Kind if k is not Kind.TABLE)
        raise ValueError(f"unknown twist {name!r}; expected one of {names}") from None


# --- scalar evaluation -------------------------------------------------------

def cyd(p: int, q: int) -> int:
    """Cayley-Dickson sign, by the seven-rule recursion on the low bits."""
    if p == 0 and q == 0:
        return 1
    r, s = p >> 1, q >> 1
    if not p & 1:
        if not q & 1:
            return cyd(r, s)
        # the r == 0 branch takes priority over -cyd(r, s)
        return 1 if r == 0 else -cyd(r, s)
    if not q & 1:
        return cyd(s, r)
    return -1 if r == 0 else cyd(s, r)


def clf(p: int, q: int) -> int:
    """Clifford sign for Cl(n, 0): clf(2u+a, 2v+b) = (-1)^(b*sob(u)) clf(u, v)."""
    if p == 0 and q == 0:
        return 1
    u, v = p >> 1, q >> 1
    if q & 1:
        return parity_sign(sob(u)) * clf(u, v)
    return clf(u, v)


def hadamard(p: int, q: int) -> int:
    return parity_sign(sob(p & q))


def trivial(p: int, q: int) -> int:
    return 1


def grade_parity(p: int, q: int) -> int:
    return parity_sign(sob(p) * sob(q))


def xor_parity(p: int, q: int) -> int:
    return parity_sign(sob(p ^ q))


_SCALAR = {
    Kind.CAYLEY_DICKSON: cyd,
    Kind.CLIFFORD: clf,
    Kind.HADAMARD: hadamard,
    Kind.TRIVIAL: trivial,
    Kind.GRADE_PARITY: grade_parity,
    Kind.XOR_PARITY: xor_parity,
}


def named(kind, p: int, q: int) -> int:
    kind = parse_kind(kind) if isinstance(kind, str) and not isinstance(kind, Kind) else Kind(kind)
    if kind is Kind.TABLE:
        raise ValueError("table twists have no closed rule; call the Twist directly")
    return _SCALAR[kind](p, q)


# --- tables ------------------------------------------------------------------

def _double_cyd(t: np.ndarray) -> np.ndarray:
    m = len(t)
    out = np.empty((2 * m, 2 * m), dtype=np.int8)
    tt = t.T
    out[0::2, 0::2] = t                 # cyd(2r, 2s) = cyd(r, s)
    out[0::2, 1::2] = -t                # cyd(2r, 2s+1) = -cyd(r, s), r != 0
    out[0, 1::2] = 1                    # cyd(0, 2s+1) = 1
    out[1::2, 0::2] = tt                # cyd(2r+1, 2s) = cyd(s, r)
    out[1::2, 1::2] = tt                # cyd(2r+1, 2s+1) = cyd(s, r), r != 0
    out[1, 1::2] = -1                   # cyd(1, 2s+1) = -1
    return out


def _double_clf(t: np.ndarray) -> np.ndarray:
    m = len(t)
    flip = np.where(popcount(np.arange(m)) & 1, -1, 1).astype(np.int8)[:, None]
    out = np.empty((2 * m, 2 * m), dtype=np.int8)
    out[0::2, 0::2] = out[1::2, 0::2] = t
    out[0::2, 1::2] = out[1::2, 1::2] = flip * t
    return out


def _closed_form(kind: Kind, n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    p, q = idx[:, None], idx[None, :]
    if kind is Kind.HADAMARD:
        e = popcount(p & q)
    elif kind is Kind.TRIVIAL:
        e = np.zeros((len(idx), len(idx)), dtype=np.int64)
    elif kind is Kind.GRADE_PARITY:
        e = popcount(p) * popcount(q)
    else:
        e = popcount(p ^ q)
    return np.where(e & 1, -1, 1).astype(np.int8)


@lru_cache(maxsize=64)
def _sign_matrix(kind: Kind, n: int) -> np.ndarray:
    if kind in (Kind.CAYLEY_DICKSON, Kind.CLIFFORD):
        step = _double_cyd if kind is Kind.CAYLEY_DICKSON else _double_clf
        t = np.ones((1, 1), dtype=np.int8)
        for _ in range(n):
            t = step(t)
    else:
        t = _closed_form(kind, n)
    t.setflags(write=False)
    return t


@dataclass(frozen=True, eq=False)
class TwistTable:
    """A twist cached as a sign matrix over G_n (or over an explicit group)."""

    kind: str
    n: int | None
    signs: np.ndarray

    def __getitem__(self, pq):
        return int(self.signs[pq])

    @property
    def order(self) -> int:
        return len(self.signs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.signs.astype(int).tolist())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "n": self.n, "signs": self.signs.astype(int).tolist()})

    @classmethod
    def from_json(cls, text: str) -> "TwistTable":
        obj = json.loads(text)
        signs = np.asarray(obj["signs"], dtype=np.int8)
        _check_signs(signs)
        return cls(obj["kind"], obj.get("n"), signs)

    @classmethod
    def from_csv(cls, text: str, kind: str = "table") -> "TwistTable":
        rows = [[int(c) for c in row] for row in csv.reader(io.StringIO(text)) if row]
        signs = np.asarray(rows, dtype=np.int8)
        _check_signs(signs)
        n = int(np.log2(len(signs))) if len(signs) & (len(signs) - 1) == 0 else None
        return cls(kind, n, signs)


def _check_signs(signs: np.ndarray):
    if signs.ndim != 2 or signs.shape[0] != signs.shape[1]:
        raise ValueError(f"sign matrix must be square, got shape {signs.shape}")
    if not np.isin(signs, (-1, 1)).all():
        raise ValueError("sign matrix entries must be -1 or +1")


@dataclass(frozen=True, eq=False)
class Twist:
    """A named dyadic twist, or an explicit sign table on a finite group."""

    kind: Kind
    group: FiniteGroup | None = None
    signs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind is Kind.TABLE:
            if self.group is None or self.signs is None:
                raise ValueError("a table twist needs a group and a sign matrix")
            s = np.array(self.signs, dtype=np.int8)
            _check_signs(s)
            if len(s) != self.group.order:
                raise GroupMismatch(f"sign matrix is {len(s)}x{len(s)} but the group has order {self.group.order}")
            s.setflags(write=False)
            object.__setattr__(self, "signs", s)

    @classmethod
    def of(cls, kind) -> "Twist":
        return cls(parse_kind(kind) if isinstance(kind, str) else Kind(kind))

    @classmethod
    def table(cls, group: FiniteGroup, signs) -> "Twist":
        return cls(Kind.TABLE, group, signs)

    @property
    def name(self) -> str:
        return self.kind.value

    def __call__(self, p: int, q: int) -> int:
        if self.kind is Kind.TABLE:
            return int(self.signs[p, q])
        return _SCALAR[self.kind](p, q)

    def signs_on(self, group: FiniteGroup) -> np.ndarray:
        """Sign matrix of this twist over the elements of ``group``."""
        if self.kind is Kind.TABLE:
            if not self.group.same_as(group):
                raise GroupMismatch(f"twist is defined on {self.group.name}, not {group.name}")
            return self.signs
        if not group.is_dyadic:
            raise GroupMismatch(f"the {self.name} twist is defined on dyadic groups only")
        return materialize(self, group.dyadic_n).signs


def materialize(t, n: int) -> TwistTable:
    """Cache a named twist over G_n (n <= 12) as a sign matrix."""
    n = check_n(n, MAX_TABLE_N)
    if not isinstance(t, Twist):
        t = Twist.of(t)
    if t.kind is Kind.TABLE:
        return TwistTable("table", n, t.signs_on(dyadic(n)))
    return TwistTable(t.name, n, _sign_matrix(t.kind, n))


# --- properties --------------------------------------------------------------

@dataclass
class PropertyResult:
    holds: bool
    witness: tuple | None = None


@dataclass
class PropertyReport:
    twist: str
    group: str
    results: dict[str, PropertyResult]

    def __getattr__(self, name):
        results = self.__dict__.get("results", {})
        if name in results:
            return results[name].holds
        raise AttributeError(name)

    def witness(self, name: str):
        return self.results[name].witness

    def as_dict(self) -> dict:
        return {
            "twist": self.twist,
            "group": self.group,
            "properties": {
                k: {"holds": v.holds, "witness": None if v.witness is None else list(v.witness)}
                for k, v in self.results.items()
            },
        }

    def to_text(self) -> str:
        lines = [f"twist {self.twist} on {self.group}"]
        for k, v in self.results.items():
            extra = "" if v.holds else f"  counterexample {v.witness}"
            lines.append(f"  {k:<16} {'yes' if v.holds else 'no'}{extra}")
        return "\n".join(lines)


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(i) for i in hits[0])


def _signs_for(t, g: FiniteGroup) -> np.ndarray:
    if isinstance(t, TwistTable):
        if len(t.signs) != g.order:
            raise GroupMismatch(f"table has size {len(t.signs)} but the group has order {g.order}")
        return t.signs
    if not isinstance(t, Twist):
        t = Twist.of(t)
    return t.signs_on(g)


def check_properties(t, g: FiniteGroup, only=None) -> PropertyReport:
    """Exhaustively test every twist axiom on ``g``.

    Each result carries the first counterexample in row-major ``(p, q, r)``
    order when the property fails. ``only`` restricts the report to a subset
    of :data:`PROPERTIES`. The associativity scans are cubic, so the group
    order is capped at 256 whenever they are requested.
    """
    wanted = set(PROPERTIES if only is None else only)
    cubic = bool(wanted & {"associative", "alt_associative"})
    if cubic and g.order > MAX_ORDER:
        raise GroupTooLarge(f"group order {g.order} exceeds the cap {MAX_ORDER}")
    S = np.asarray(_signs_for(t, g), dtype=np.int64)
    T = np.asarray(g.table)
    inv = np.asarray(g.inverse)
    e = g.identity
    idx = np.arange(g.order)
    res: dict[str, PropertyResult] = {}

    if "positive" in wanted:
        res["positive"] = PropertyResult(bool(S[e, e] == 1), None if S[e, e] == 1 else (e, e))

    if "identive" in wanted:
        ident = None
        for p in idx:
            if S[p, e] != 1:
                ident = (int(p), e)
                break
            if S[e, p] != 1:
                ident = (e, int(p))
                break
        res["identive"] = PropertyResult(ident is None, ident)

    if "invertive" in wanted:
        w = _first(S[idx, inv] != S[inv, idx])
        res["invertive"] = PropertyResult(w is None, w)

    if "proper" in wanted:
        # sgn(p,q) sgn(q,q^-1) = sgn(pq,q^-1)  and  sgn(p^-1,p) sgn(p,q) = sgn(p^-1,pq)
        law1 = S * S[idx, inv][None, :] != S[T, inv[None, :]]
        law2 = S[inv, idx][:, None] * S != S[inv[:, None], T]
        w1, w2 = _first(law1), _first(law2)
        if w1 is None:
            w = w2
        elif w2 is None:
            w = w1
        else:
            w = min(w1, w2)
        res["proper"] = PropertyResult(w is None, w)

    if not cubic:
        return PropertyReport(_twist_name(t), g.name, res)

    assoc = alt = None
    if "associative" not in wanted:
        assoc = ()
    if "alt_associative" not in wanted:
        alt = ()
    for p in idx:
        sp, tp = S[p], T[p]
        if assoc is None:
            # sgn(p,q) sgn(pq,r) = sgn(p,qr) sgn(q,r)
            bad = sp[:, None] * S[tp] != sp[T] * S
            w = _first(bad)
            if w is not None:
                assoc = (int(p),) + w
        if alt is None:
            # sgn(p,q) sgn(q,r) = sgn(p,qr) sgn(pq,r)
            bad = sp[:, None] * S != sp[T] * S[tp]
            w = _first(bad)
            if w is not None:
                alt = (int(p),) + w
        if assoc is not None and alt is not None:
            break
    if "associative" in wanted:
        res["associative"] = PropertyResult(assoc is None, assoc)
    if "alt_associative" in wanted:
        res["alt_associative"] = PropertyResult(alt is None, alt)
    return PropertyReport(_twist_name(t), g.name, res)


def _twist_name(t) -> str:
    if isinstance(t, TwistTable):
        return t.kind
    if isinstance(t, Twist):
        return t.name
    return str(t)


def pointwise_product(a: Twist, b: Twist, group: FiniteGroup | None = None) -> Twist:
    """The twist ``(a*b)(p, q) = a(p, q) * b(p, q)`` as a table on a common group."""
    groups = [t.group for t in (a, b) if t.kind is Kind.TABLE]
    if group is None:
        if not groups:
            raise ValueError("two named twists need an explicit group to form a table")
        group = groups[0]
    for g in groups:
        if not g.same_as(group):
            raise GroupMismatch(f"twists live on different groups ({g.name} vs {group.name})")
    sa = np.asarray(a.signs_on(group), dtype=np.int8)
    sb = np.asarray(b.signs_on(group), dtype=np.int8)
    return Twist.table(group, sa * sb)


def _batch_mask(cands: np.ndarray, g: FiniteGroup, wanted: set[str]) -> np.ndarray:
    S = cands
    T, inv, e = np.asarray(g.table), np.asarray(g.inverse), g.identity
    idx = np.arange(g.order)
    ok = np.ones(len(S), dtype=bool)
    if "positive" in wanted:
        ok &= S[:, e, e] == 1
    if "identive" in wanted:
        ok &= (S[:, :, e] == 1).all(1) & (S[:, e, :] == 1).all(1)
    if "invertive" in wanted:
        ok &= (S[:, idx, inv] == S[:, inv, idx]).all(1)
    if "proper" in wanted:
        ok &= (S * S[:, idx, inv][:, None, :] == S[:, T, inv[None, :]]).all((1, 2))
        ok &= (S[:, inv, idx][:, :, None] * S == S[:, inv[:, None], T]).all((1, 2))
    if "associative" in wanted or "alt_associative" in wanted:
        P, Q, R = np.meshgrid(idx, idx, idx, indexing="ij")
        PQ, QR = T[P, Q], T[Q, R]
        ok &= (S[:, P, Q] * S[:, PQ, R] == S[:, P, QR] * S[:, Q, R]).all((1, 2, 3))
    return ok


def enumerate_twists(g: FiniteGroup, properties=()) -> list[Twist]:
    """Every sign function on ``g`` having all of ``properties``.

    Candidates are ordered by reading the row-major table as a binary counter
    with +1 as digit 0 and -1 as digit 1, so the all-positive table comes first.
    """
    wanted = set(properties)
    unknown = wanted - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    if g.order > MAX_ENUM_ORDER:
        raise GroupTooLarge(f"enumeration needs order <= {MAX_ENUM_ORDER}, got {g.order}")
    cells = g.order * g.order
    k = np.arange(1 << cells, dtype=np.int64)
    bits = (k[:, None] >> np.arange(cells - 1, -1, -1)) & 1
    cands = np.where(bits == 1, -1, 1).astype(np.int8).reshape(-1, g.order, g.order)
    keep = _batch_mask(cands, g, wanted)
    return [Twist.table(g, c) for c in cands[keep]]
