"""Blades of Cl(n, 0) and the translation between e-notation and i-notation.

The blade ``e_{a1 a2 ... ak}`` (1-based, increasing factors) is ``i_p`` with
bits ``a1-1, ..., ak-1`` of ``p`` set. The factor-sorting product here is an
independent oracle for :func:`twistalg.twist.clf`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .dyadic import parity_sign, sob


class MalformedENotation(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Blade:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("blade index must be non-negative")

    @property
    def grade(self) -> int:
        return sob(self.index)

    @property
    def factors(self) -> list[int]:
        return factors(self.index)

    @classmethod
    def from_factors(cls, fs) -> "Blade":
        idx = 0
        for f in fs:
            idx |= 1 << (f - 1)
        return cls(idx)

    def __str__(self):
        return format_e(self)


class SignedBlade(NamedTuple):
    sign: int
    blade: Blade

    def __str__(self):
        return ("-" if self.sign < 0 else "") + format_e(self.blade)


def factors(p: int) -> list[int]:
    """1-based 1-blade factors of ``i_p`` in increasing order."""
    out, k = [], 1
    while p:
        if p & 1:
            out.append(k)
        p >>= 1
        k += 1
    return out


_COMPACT = re.compile(r"e([1-9]+)")
_BRACKET = re.compile(r"e\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]")


def parse_e(text: str) -> Blade:
    """``"e134"`` -> Blade(13), ``"e[2,10]"`` -> Blade(514), ``"1"`` -> Blade(0)."""
    s = text.strip()
    if s == "1":
        return Blade(0)
    if m := _COMPACT.fullmatch(s):
        fs = [int(c) for c in m.group(1)]
    elif m := _BRACKET.fullmatch(s):
        fs = [int(c) for c in m.group(1).split(",")]
    else:
        raise MalformedENotation(f"cannot read {text!r} as a blade (try e134 or e[2,10])")
    if any(f == 0 for f in fs):
        raise MalformedENotation(f"1-blade indices start at 1 in {text!r}")
    if any(a >= b for a, b in zip(fs, fs[1:])):
        raise MalformedENotation(f"factors must be strictly increasing in {text!r}")
    return Blade.from_factors(fs)


def format_e(b: Blade) -> str:
    fs = factors(b.index)
    if not fs:
        return "1"
    if fs[-1] <= 9:
        return "e" + "".join(map(str, fs))
    return "e[" + ",".join(map(str, fs)) + "]"


def format_i(b: Blade) -> str:
    return f"i{b.index}"


def parse_i(text: str) -> Blade:
    m = re.fullmatch(r"\s*i(\d+)\s*", text)
    if m is None:
        raise ValueError(f"cannot read {text!r} as i-notation")
    return Blade(int(m.group(1)))


def translate(term: str) -> str:
    """Translate one optionally signed term between e- and i-notation."""
    s = term.strip()
    sign = ""
    if s[:1] in "+-":
        sign = "-" if s[0] == "-" else ""
        s = s[1:].strip()
    if s.startswith("i"):
        return sign + format_e(parse_i(s))
    return sign + format_i(parse_e(s))


def blade_mul_oracle(a: Blade, b: Blade) -> SignedBlade:
    """Multiply by sorting 1-blade factors.

    Each adjacent transposition of distinct factors flips the sign, and each
    adjacent equal pair cancels (``e_k e_k = +1``).
    """
    seq = factors(a.index) + factors(b.index)
    sign = 1
    for end in range(len(seq) - 1, 0, -1):
        for i in range(end):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
    out: list[int] = []
    for f in seq:
        if out and out[-1] == f:
            out.pop()
        else:
            out.append(f)
    return SignedBlade(sign, Blade.from_factors(out))


@dataclass
class LemmaCheck:
    p: int
    left_even: bool     # e1 i_{2p} = i_{2p+1}
    left_odd: bool      # e1 i_{2p+1} = i_{2p}
    right_even: bool    # i_{2p} e1 = (-1)^sob(p) i_{2p+1}
    right_odd: bool     # i_{2p+1} e1 = (-1)^sob(p) i_{2p}

    @property
    def passed(self) -> bool:
        return self.left_even and self.left_odd and self.right_even and self.right_odd


def e1_lemma_check(p: int) -> LemmaCheck:
    if not 0 <= p < 1 << 10:
        raise ValueError("p must lie in 0..1023")
    e1 = Blade(1)
    even, odd = Blade(2 * p), Blade(2 * p + 1)
    s = parity_sign(sob(p))
    return LemmaCheck(
        p,
        blade_mul_oracle(e1, even) == SignedBlade(1, odd),
        blade_mul_oracle(e1, odd) == SignedBlade(1, even),
        blade_mul_oracle(even, e1) == SignedBlade(s, odd),
        blade_mul_oracle(odd, e1) == SignedBlade(s, even),
    )
