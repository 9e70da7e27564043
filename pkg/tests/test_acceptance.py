"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
collected in the "acceptance criteria" section at the end of the run.
"""

import itertools

import numpy as np

from _oracles import brute_associative, brute_proper, popcount, rand_int
from twistalg import cd_oracle
from twistalg.algebra import (
    AlgebraContext,
    Element,
    commutator,
    commutator_closed,
    conjugate,
    inner,
    matrix_rep,
    mul,
    mul_via_inner,
    regular_rep,
    square_identity_check,
)
from twistalg.clifford import Blade, SignedBlade, blade_mul_oracle, parse_e
from twistalg.dyadic import sob, triangular
from twistalg.experiments import norm_growth, orthogonality_scan
from twistalg.groups import dyadic
from twistalg.twist import (
    Twist,
    check_properties,
    clf,
    cyd,
    enumerate_twists,
    materialize,
    pointwise_product,
)

TRIALS = 200
PROPER_BUILTINS = ["cyd", "clf", "hadamard", "trivial", "grade-parity"]


def test_ac01_worked_example(criterion):
    ctx = AlgebraContext.dyadic("cyd", 4)
    a, b = ctx.basis(9), ctx.basis(11)
    mul(ctx, a, b)      # warm the index caches
    with criterion("AC1 cyd(9,11) = -1 and i9 i11 = -i2 at n=4", limit=1e-3):
        assert cyd(9, 11) == -1
        assert mul(ctx, a, b) == -ctx.basis(2)


def test_ac02_clifford_worked_example(criterion):
    with criterion("AC2 e134 e23 = -e124 and clf(13,6) = -1"):
        assert blade_mul_oracle(parse_e("e134"), parse_e("e23")) == SignedBlade(-1, parse_e("e124"))
        assert clf(13, 6) == -1


def test_ac03_cayley_dickson_oracle(criterion):
    rng = np.random.default_rng(3)
    with criterion("AC3 pair-recursion oracle = cyd on G_5, element transport at n=4", limit=5):
        bad = [(p, q) for p in range(32) for q in range(32) if cd_oracle.oracle_twist(p, q, 5) != cyd(p, q)]
        assert not bad, f"first mismatch {bad[0]}"
        ctx = AlgebraContext.dyadic("cyd", 4)
        for _ in range(100):
            x, y = rand_int(rng, 16), rand_int(rng, 16)
            via_pairs = cd_oracle.shuffle(cd_oracle.cd_mul(cd_oracle.unshuffle(x), cd_oracle.unshuffle(y)))
            assert via_pairs == mul(ctx, x, y)


def test_ac04_clifford_oracle(criterion):
    with criterion("AC4 blade factor oracle = clf on all 4096 pairs of G_6", limit=1):
        for p in range(64):
            for q in range(64):
                assert blade_mul_oracle(Blade(p), Blade(q)) == SignedBlade(clf(p, q), Blade(p ^ q))


def test_ac05_twist_axioms(criterion):
    with criterion("AC5 cyd proper on G_8, clf associative on G_6, cyd not associative on G_3, "
                   "xor-parity not associative with witness", limit=30):
        assert check_properties(Twist.of("cyd"), dyadic(8), only=["proper"]).proper
        assert check_properties(Twist.of("clf"), dyadic(6), only=["associative"]).associative
        r = check_properties(Twist.of("cyd"), dyadic(3), only=["associative"])
        assert not r.associative
        p, q, s = r.witness("associative")
        assert cyd(p, q) * cyd(p ^ q, s) != cyd(p, q ^ s) * cyd(q, s)
        x = check_properties(Twist.of("xor-parity"), dyadic(6), only=["associative"])
        assert not x.associative and x.witness("associative") is not None


def test_ac05_xor_parity_proper(criterion):
    # Stated claim: the xor-parity twist is proper on G_6. The checker reports
    # the counterexample (0, 1): sgn(0,1) = -1, so it is not even identive.
    # Kept as stated; expected to fail.
    with criterion("AC5 xor-parity proper on G_6"):
        r = check_properties(Twist.of("xor-parity"), dyadic(6), only=["proper"])
        assert r.proper, f"not proper, counterexample {r.witness('proper')}"


def test_ac06_quaternion_properties(criterion):
    with criterion("AC6 cyd quaternion identities on G_8"):
        S = materialize("cyd", 8).signs.astype(int)
        idx = np.arange(256)
        P, Q = idx[:, None], idx[None, :]
        off = (P != 0) & (Q != 0) & (P != Q)
        assert (np.diag(S)[1:] == -1).all()
        assert (S == -S.T)[off].all()
        assert (S == S[Q, P ^ Q])[off].all() and (S == S[P ^ Q, P])[off].all()


def test_ac07_clifford_signs(criterion):
    with criterion("AC7 clf(p,p) on G_10 and reversal sign on G_8"):
        assert all(clf(p, p) == (-1) ** triangular(sob(p)) for p in range(1 << 10))
        for p in range(256):
            for q in range(256):
                e = popcount(p) * popcount(q) - popcount(p & q)
                assert clf(q, p) == clf(p, q) * (-1) ** e


def test_ac08_algebra_identities(criterion):
    rng = np.random.default_rng(8)
    ctxs = {(k, n): AlgebraContext.dyadic(k, n) for k in PROPER_BUILTINS for n in range(6)}
    with criterion(f"AC8 algebra identities, {TRIALS} integer trials each"):
        for t in range(TRIALS):
            n = t % 6
            c, dim = ctxs["cyd", n], 1 << n
            x = rand_int(rng, dim)
            s = Element.scalar(inner(x, x), dim)
            assert mul(c, x, conjugate(c, x)) == s == mul(c, conjugate(c, x), x)
        for t in range(TRIALS):
            assert square_identity_check(rand_int(rng, 1 << (t % 5))).residual == 0
        for t in range(TRIALS):
            n = t % 5
            c, dim = ctxs["cyd", n], 1 << n
            x, y = rand_int(rng, dim), rand_int(rng, dim)
            rhs = x * (2 * y.real) + y * (2 * x.real) + Element.scalar(inner(x, x) + inner(y, y) - inner(x + y, x + y), dim)
            assert mul(c, x, y) + mul(c, y, x) == rhs
        for t in range(TRIALS):
            n = t % 5
            c = ctxs["cyd", n]
            x, y = rand_int(rng, 1 << n), rand_int(rng, 1 << n)
            assert commutator_closed(c, x, y) == commutator(c, x, y)
        for kind in ("cyd", "clf"):
            for t in range(TRIALS):
                n = t % 5
                c = ctxs[kind, n]
                x, y = rand_int(rng, 1 << n), rand_int(rng, 1 << n)
                assert mul_via_inner(c, x, y) == mul(c, x, y)
        for kind in PROPER_BUILTINS:
            for t in range(TRIALS):
                n = t % 4
                c = ctxs[kind, n]
                x, y = rand_int(rng, 1 << n), rand_int(rng, 1 << n)
                assert conjugate(c, mul(c, x, y)) == mul(c, conjugate(c, y), conjugate(c, x))


def test_ac09_orthogonality(criterion):
    with criterion("AC9 i_p x orthogonal for n<=3; <i2 x, i5 x> nonzero at n=4"):
        for n in (1, 2, 3):
            assert orthogonality_scan(n, trials=64, seed=n).stats["max_ratio"] <= 1e-12
        hits = sum(orthogonality_scan(4, trials=1, seed=s).stats["witness_nonzero"] for s in range(64))
        assert hits >= 63, f"nonzero for only {hits}/64 seeds"


def test_ac10_matrix_representation(criterion):
    rng = np.random.default_rng(10)
    with criterion("AC10 L_p L_q = clf(p,q) L_pq on G_4, regular representation at n=3"):
        c = AlgebraContext.dyadic("clf", 4)
        L = [matrix_rep(c, p) for p in range(16)]
        for p in range(16):
            for q in range(16):
                assert np.array_equal(L[p] @ L[q], clf(p, q) * L[p ^ q])
        c3 = AlgebraContext.dyadic("clf", 3)
        for _ in range(50):
            x, y = rand_int(rng, 8), rand_int(rng, 8)
            assert np.array_equal(regular_rep(c3, x) @ regular_rep(c3, y), regular_rep(c3, mul(c3, x, y)))


def test_ac11_enumeration_and_closure(criterion):
    with criterion("AC11 two proper twists on G_1, closure of proper/associative built-ins on G_3"):
        brute = sum(
            brute_proper(lambda p, q: bits[2 * p + q], 2, lambda p, q: p ^ q, [0, 1])
            for bits in itertools.product([1, -1], repeat=4)
        )
        assert brute == 2 == len(enumerate_twists(dyadic(1), ["proper"]))
        g = dyadic(3)
        op = lambda p, q: p ^ q
        for prop in ("proper", "associative"):
            members = [k for k in PROPER_BUILTINS + ["xor-parity"]
                       if check_properties(Twist.of(k), g).results[prop].holds]
            for a, b in itertools.combinations_with_replacement(members, 2):
                S = pointwise_product(Twist.of(a), Twist.of(b), g).signs
                sign = lambda p, q: int(S[p, q])
                ok = brute_proper(sign, 8, op, list(range(8))) if prop == "proper" else brute_associative(sign, 8, op)
                assert ok, f"{a} x {b} is not {prop}"


def test_ac12_norm_growth_exploration(criterion):
    with criterion("AC12 norm-growth tables deterministic per seed; cyd n<=3 ratio 1"):
        for profile in ("geometric:0.5", "power:1"):
            a = norm_growth("convolution", range(4, 11), profile, trials=32, seed=12)
            b = norm_growth("convolution", range(4, 11), profile, trials=32, seed=12)
            assert a.to_json() == b.to_json() and a.seed == 12
            assert [row[0] for row in a.rows] == list(range(4, 11))
            anchor = norm_growth("cyd", [1, 2, 3], profile, trials=32, seed=12)
            for row in anchor.rows:
                assert abs(row[1] - 1) <= 1e-9 and abs(row[3] - 1) <= 1e-9
