"""Numerical experiments on truncated square-summable sequences.

Sequences are truncated to 2**n terms and multiplied under a twist or by
dyadic convolution. Nothing here decides whether products of square-summable
sequences stay square-summable; the growth tables are data.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import AlgebraContext, Element, commutator, convolution, left_mul_matrix, mul, norm
from .dyadic import check_n
from .twist import Kind, parse_kind

DEFAULT_TRIALS = 64
EXPLORATORY = "exploratory: no acceptance threshold"
ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Profile:
    """Decay envelope ``|x_p| ~ r**p`` (geometric) or ``(p+1)**-s`` (power)."""

    kind: str
    rate: float

    def __post_init__(self):
        if self.kind == "geometric" and not 0 < abs(self.rate) < 1:
            raise ValueError("geometric decay needs 0 < |r| < 1")
        if self.kind == "power" and not self.rate > 0.5:
            raise ValueError("power-law decay needs s > 1/2 to be square summable")
        if self.kind not in ("geometric", "power"):
            raise ValueError(f"unknown decay profile {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Profile":
        kind, _, rate = text.partition(":")
        defaults = {"geometric": 0.5, "power": 1.0}
        if kind not in defaults:
            raise ValueError(f"unknown decay profile {text!r}; use geometric[:r] or power[:s]")
        return cls(kind, float(rate) if rate else defaults[kind])

    @property
    def label(self) -> str:
        return f"{self.kind}:{self.rate:g}"

    def envelope(self, dim: int) -> np.ndarray:
        p = np.arange(dim, dtype=np.float64)
        if self.kind == "geometric":
            return self.rate ** p
        return (p + 1.0) ** (-self.rate)


@dataclass
class TruncatedSequence:
    element: Element
    profile: str


def truncated_sequence(n: int, profile: Profile, rng: np.random.Generator) -> TruncatedSequence:
    dim = 1 << n
    return TruncatedSequence(Element(rng.standard_normal(dim) * profile.envelope(dim)), profile.label)


@dataclass
class ExperimentReport:
    experiment: str
    twist: str
    n: list[int]
    trials: int
    seed: int
    columns: list[str]
    rows: list[list]
    stats: dict = field(default_factory=dict)
    verdicts: list[str] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(v.startswith("FAIL") for v in self.verdicts)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        head = [f"{self.experiment}  twist={self.twist}  trials={self.trials}  seed={self.seed}"]
        head += [f"{k}={v}" for k, v in self.config.items()]
        cells = [self.columns] + [[_cell(v) for v in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        table = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
        return "\n".join(head + table + self.verdicts) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6e}"
    return str(v)


def _rng(seed: int, n: int) -> np.random.Generator:
    return np.random.default_rng([seed, n])


def orthogonality_ratios(x: Element, ctx: AlgebraContext) -> np.ndarray:
    """``|<i_p x, i_q x>| / |x|^2`` for all p, q (diagonal and p=0 or q=0 zeroed)."""
    rows = left_mul_matrix(ctx, x).astype(np.float64)
    gram = np.abs(rows @ rows.T) / float(np.dot(x.coeffs, x.coeffs))
    gram[0, :] = 0.0
    gram[:, 0] = 0.0
    np.fill_diagonal(gram, 0.0)
    return gram


def orthogonality_scan(n: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> ExperimentReport:
    """Largest off-diagonal inner product among the family ``i_p x`` (cyd twist)."""
    n = check_n(n, 6)
    ctx = AlgebraContext.dyadic(Kind.CAYLEY_DICKSON, n)
    rng = _rng(seed, n)
    worst, worst_pair = 0.0, None
    witness_vals = []
    for _ in range(trials):
        x = Element(rng.standard_normal(1 << n))
        g = orthogonality_ratios(x, ctx)
        k = int(np.argmax(g))
        if g.flat[k] > worst:
            worst, worst_pair = float(g.flat[k]), divmod(k, g.shape[1])
        if n >= 3:
            witness_vals.append(float(g[2, 5]))

    stats = {"max_ratio": worst, "max_pair": None if worst_pair is None else [int(v) for v in worst_pair]}
    row = [n, trials, worst]
    columns = ["n", "trials", "max_ratio"]
    verdicts = []
    if n < 4:
        ok = worst <= ORTHO_TOL
        verdicts.append(f"{'PASS' if ok else 'FAIL'} n={n}: i_p x family orthogonal (max ratio {worst:.3e} <= {ORTHO_TOL:g})")
    if witness_vals:
        nonzero = sum(v > ORTHO_TOL for v in witness_vals)
        stats.update(witness_pair=[2, 5], witness_nonzero=nonzero, witness_max=max(witness_vals))
        columns += ["ratio(2,5) max", "nonzero(2,5)"]
        row += [max(witness_vals), nonzero]
        if n >= 4:
            verdicts.append(f"INFO n={n}: <i2 x, i5 x> nonzero in {nonzero}/{trials} trials")
    return ExperimentReport("orthogonality", "cyd", [n], trials, seed, columns, [row], stats, verdicts)


def product_ratio(op: str, x: Element, y: Element, ctx: AlgebraContext | None = None) -> float:
    """``|x . y| / (|x| |y|)`` where ``.`` is the twisted product or convolution."""
    if op == "convolution":
        z = convolution(x, y)
    else:
        if ctx is None:
            ctx = AlgebraContext.dyadic(op, x.n)
        z = mul(ctx, x, y)
    return norm(z) / (norm(x) * norm(y))


def _op_name(kind: str) -> str:
    return "convolution" if kind in ("convolution", "conv") else parse_kind(kind).value


def norm_growth(kind: str = "convolution", ns=range(4, 11), profile: Profile | str = "geometric:0.5",
                trials: int = DEFAULT_TRIALS, seed: int = 0) -> ExperimentReport:
    """Trend table of ``|x . y| / (|x| |y|)`` as the truncation length grows."""
    op = _op_name(kind)
    if isinstance(profile, str):
        profile = Profile.parse(profile)
    ns = [check_n(n, 12) for n in ns]
    rows = []
    for n in ns:
        rng = _rng(seed, n)
        ctx = None if op == "convolution" else AlgebraContext.dyadic(op, n)
        ratios = []
        for _ in range(trials):
            x = truncated_sequence(n, profile, rng).element
            y = truncated_sequence(n, profile, rng).element
            ratios.append(product_ratio(op, x, y, ctx))
        r = np.asarray(ratios)
        rows.append([n, float(r.min()), float(r.mean()), float(r.max())])
    stats = {"overall_max": max(row[3] for row in rows) if rows else None}
    return ExperimentReport(
        "norm-growth", op, ns, trials, seed, ["n", "min_ratio", "mean_ratio", "max_ratio"], rows, stats,
        [f"NOTE {EXPLORATORY}"], {"profile": profile.label},
    )


def square_bound_check(ns=range(1, 9), profile: Profile | str = "geometric:0.5",
                       trials: int = DEFAULT_TRIALS, seed: int = 0, rtol: float = 1e-9) -> ExperimentReport:
    """Check ``|x^2| <= 2|x_0| |x| + |x|^2`` under the cyd twist."""
    if isinstance(profile, str):
        profile = Profile.parse(profile)
    rows, worst = [], 0.0
    for n in ns:
        n = check_n(n, 12)
        ctx = AlgebraContext.dyadic(Kind.CAYLEY_DICKSON, n)
        rng = _rng(seed, n)
        slack = []
        for _ in range(trials):
            x = truncated_sequence(n, profile, rng).element
            nx = norm(x)
            bound = 2 * abs(float(x.real)) * nx + nx * nx
            slack.append(norm(mul(ctx, x, x)) / bound if bound else 0.0)
        m = max(slack)
        worst = max(worst, m)
        rows.append([n, m])
    ok = worst <= 1 + rtol
    return ExperimentReport("square-bound", "cyd", list(ns), trials, seed, ["n", "max |x^2|/bound"], rows,
                            {"max_fraction": worst},
                            [f"{'PASS' if ok else 'FAIL'} |x^2| within the bound (max fraction {worst:.6f})"],
                            {"profile": profile.label})


def commutator_bound_check(ns=range(1, 9), profile: Profile | str = "geometric:0.5",
                           trials: int = DEFAULT_TRIALS, seed: int = 0) -> ExperimentReport:
    """Check ``|[x,y]_r| <= 2 (|x| * |y|)_r`` coefficient-wise under the cyd twist."""
    if isinstance(profile, str):
        profile = Profile.parse(profile)
    rows, ok = [], True
    for n in ns:
        n = check_n(n, 12)
        ctx = AlgebraContext.dyadic(Kind.CAYLEY_DICKSON, n)
        rng = _rng(seed, n)
        worst = 0.0
        for _ in range(trials):
            x = truncated_sequence(n, profile, rng).element
            y = truncated_sequence(n, profile, rng).element
            c = np.abs(commutator(ctx, x, y).coeffs)
            bound = 2 * convolution(Element(np.abs(x.coeffs)), Element(np.abs(y.coeffs))).coeffs
            ok &= bool(np.all(c <= bound * (1 + 1e-12) + 1e-15))
            nz = bound > 0
            if nz.any():
                worst = max(worst, float((c[nz] / bound[nz]).max()))
        rows.append([n, worst])
    return ExperimentReport("commutator-bound", "cyd", list(ns), trials, seed, ["n", "max |[x,y]_r|/bound_r"],
                            rows, {}, [f"{'PASS' if ok else 'FAIL'} commutator dominated by 2(|x|*|y|)"],
                            {"profile": profile.label})
