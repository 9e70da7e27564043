import numpy as np
import pytest

from _oracles import popcount, rand_int
from twistalg.algebra import AlgebraContext, Element, conjugate, mul
from twistalg.cd_oracle import (
    DepthMismatch,
    basis_tree,
    cd_conj,
    cd_mul,
    depth,
    hadamard_mul,
    hadamard_oracle_twist,
    oracle_twist,
    shuffle,
    sweep,
    unshuffle,
)
from twistalg.dyadic import DimensionTooLarge
from twistalg.twist import cyd, hadamard


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_depth_one_is_complex_product():
    a, b, c, d = 2, -3, 5, 7
    assert cd_mul((a, b), (c, d)) == (a * c - d * b, a * d + c * b)
    assert hadamard_mul((a, b), (c, d)) == (a * c - b * d, a * d + b * c)


def test_right_identity():
    one = unshuffle(Element.basis(0, 8))
    x = ((1, 2), (3, 4)), ((5, 6), (7, 8))
    assert cd_mul(x, one) == x
    assert depth(x) == 3


def test_quaternion_basis_product():
    assert shuffle(cd_mul(basis_tree(1, 2), basis_tree(2, 2))) == Element.basis(3, 4)
    i1, i2 = ((0, 0), (1, 0)), ((0, 1), (0, 0))
    assert cd_mul(i1, i2) == ((0, 0), (0, 1))
    assert cd_mul(i2, i1) == ((0, 0), (0, -1))


def test_unshuffle_basis():
    assert unshuffle(Element.basis(2, 4)) == ((0, 1), (0, 0))      # (i_1, 0)
    assert unshuffle(Element.basis(3, 4), 2) == ((0, 0), (0, 1))   # (0, i_1)
    assert unshuffle(Element.basis(1, 2)) == (0, 1)


def test_shuffle_round_trip(rng):
    for n in range(6):
        e = rand_int(rng, 1 << n)
        assert shuffle(unshuffle(e)) == e
    with pytest.raises(DepthMismatch):
        unshuffle(Element([1, 2, 3, 4]), 3)


def test_depth_mismatch():
    with pytest.raises(DepthMismatch):
        cd_mul((1, 2), ((1, 2), (3, 4)))
    with pytest.raises(DepthMismatch):
        depth(((1, 2), 3))


def test_conj():
    assert cd_conj(5) == 5
    assert cd_conj(((1, 2), (3, 4))) == ((1, -2), (-3, -4))


@pytest.mark.parametrize("p,q,n,expected", [(9, 11, 4, -1), (0, 5, 3, 1), (1, 2, 2, 1)])
def test_oracle_examples(p, q, n, expected):
    assert oracle_twist(p, q, n) == expected


def test_oracle_squares():
    assert all(oracle_twist(p, p, 3) == -1 for p in range(1, 8))


@pytest.mark.parametrize("p,q,n,expected", [(1, 1, 1, -1), (1, 2, 2, 1), (3, 3, 2, 1)])
def test_hadamard_oracle_examples(p, q, n, expected):
    assert hadamard_oracle_twist(p, q, n) == expected


def test_oracle_equivalence_g5():
    for p in range(32):
        for q in range(32):
            assert oracle_twist(p, q, 5) == cyd(p, q)


def test_hadamard_oracle_equivalence_g5():
    for p in range(32):
        for q in range(32):
            assert hadamard_oracle_twist(p, q, 5) == (-1) ** popcount(p & q) == hadamard(p, q)


@pytest.mark.parametrize("n", range(5))
def test_full_product_transport(n, rng):
    ctx = AlgebraContext.dyadic("cyd", n)
    for _ in range(20):
        x, y = rand_int(rng, 1 << n), rand_int(rng, 1 << n)
        assert shuffle(cd_mul(unshuffle(x), unshuffle(y))) == mul(ctx, x, y)


@pytest.mark.parametrize("n", range(5))
def test_hadamard_product_transport(n, rng):
    ctx = AlgebraContext.dyadic("hadamard", n)
    x, y = rand_int(rng, 1 << n), rand_int(rng, 1 << n)
    assert shuffle(hadamard_mul(unshuffle(x), unshuffle(y))) == mul(ctx, x, y)


@pytest.mark.parametrize("n", range(6))
def test_conjugate_transport(n, rng):
    ctx = AlgebraContext.dyadic("cyd", n)
    x = rand_int(rng, 1 << n)
    assert shuffle(cd_conj(unshuffle(x))) == conjugate(ctx, x)


def test_sweep_reports():
    ok = sweep("cyd", oracle_twist, cyd, 3)
    assert ok.passed and ok.checked == 64 and ok.line().startswith("PASS")
    bad = sweep("flipped", oracle_twist, lambda p, q: -cyd(p, q), 2)
    assert not bad.passed and bad.failed == 16 and bad.first_failure == (0, 0)
    assert bad.line().startswith("FAIL")


def test_oracle_caps():
    with pytest.raises(DimensionTooLarge):
        oracle_twist(0, 0, 9)
    with pytest.raises(ValueError):
        oracle_twist(8, 0, 3)
