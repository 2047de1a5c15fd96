import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from .seqcore import (
    FiniteSequence,
    add,
    canonical,
    kyfan_norm,
    lp_norm,
    ones,
    parse_p,
    parse_sequence,
    same_up_to_permutation,
    sign_symmetrize,
    tensor,
)

P_VALUES = [1, 1.5, 2, 3, math.inf]

# multiples of 1/8 keep every product exact
snapped = st.integers(-16, 16).map(lambda v: v / 8)
sequences = st.lists(snapped, max_size=6).map(lambda v: FiniteSequence(tuple(v)))
nonneg = st.lists(st.integers(0, 16).map(lambda v: v / 8), min_size=1, max_size=6)


def seq(*values):
    return FiniteSequence.of(*values)


def test_trailing_zeros():
    assert seq(1, 2, 0, 0) == seq(1, 2)
    assert seq(0, 0) == FiniteSequence()
    assert seq(0, 1) != seq(1)


def test_canonical():
    assert canonical(seq(0, -3, 1, 0)) == seq(3, 1)
    assert canonical(seq(1, 1)) == seq(1, 1)
    assert canonical(FiniteSequence()) == FiniteSequence()


def test_tensor():
    assert tensor(seq(2, 1), seq(3, 1)) == seq(6, 3, 2, 1)
    assert tensor(seq(-2, 0, 1), seq(1)) == seq(2, 1)
    assert tensor(seq(1, 1), seq(1, 1)) == ones(4)


def test_lp_norm():
    assert lp_norm(seq(3, 4), 2) == 5
    assert lp_norm(seq(2, 1), math.inf) == 2
    assert lp_norm(FiniteSequence(), 3) == 0
    for n in (1, 2, 7, 64):
        assert lp_norm(ones(n), 3) == pytest.approx(n ** (1 / 3), rel=1e-14)
    with pytest.raises(ValueError, match='p must be'):
        lp_norm(seq(1), 0.5)


def test_lp_norm_overflow():
    assert lp_norm(seq(1e200, 1e200), 2) == pytest.approx(math.sqrt(2) * 1e200)


def test_kyfan_norm():
    assert kyfan_norm(seq(1, 1), 2) == 2
    assert kyfan_norm(seq(5, 3, 1), 1) == 5
    assert kyfan_norm(seq(-5, 3, 1), 2) == 8
    # multiplicativity fails: 2 instead of 2*2
    assert kyfan_norm(tensor(seq(1, 1), seq(1, 1)), 2) == 2
    with pytest.raises(ValueError, match='k must be'):
        kyfan_norm(seq(1), 0)


def test_parse():
    assert parse_p('inf') == math.inf
    assert parse_p(' 1.5 ') == 1.5
    assert parse_sequence('2, 1.5,-3') == seq(2, 1.5, -3)
    with pytest.raises(ValueError, match='p must be'):
        parse_p('0.9')
    with pytest.raises(ValueError, match='x:'):
        parse_sequence('1;2')


def test_json():
    assert FiniteSequence.from_json([2, 1, 0]).to_json() == [2.0, 1.0]
    with pytest.raises(ValueError):
        FiniteSequence.from_json({'x': 1})


@given(sequences, sequences)
def test_tensor_commutes(x, y):
    assert tensor(x, y) == tensor(y, x)


@given(sequences, sequences, sequences)
@settings(max_examples=50)
def test_tensor_associates(x, y, z):
    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))


@given(sequences, sequences, st.sampled_from(P_VALUES))
def test_lp_multiplicative(x, y, p):
    assert lp_norm(tensor(x, y), p) == pytest.approx(
        lp_norm(x, p) * lp_norm(y, p), rel=1e-12, abs=0
    )


def test_lp_norm_tiny_coordinates():
    assert lp_norm(seq(1e-200), 2) == 1e-200
    assert lp_norm(seq(1e-250), 1.5) == 1e-250
    assert lp_norm(seq(1e-170, 1e-170), 2) == pytest.approx(math.sqrt(2) * 1e-170, rel=1e-15)
    assert lp_norm(seq(1e-200, 0, 1e-200), 3) > 0


@given(sequences, st.sampled_from(P_VALUES))
def test_lp_unconditional(x, p):
    assert lp_norm(canonical(x), p) == lp_norm(x, p)


@settings(max_examples=500)
@given(nonneg, st.data(), st.sampled_from(P_VALUES))
def test_lp_monotone(a, data, p):
    bumps = data.draw(st.lists(st.integers(0, 16), min_size=len(a), max_size=len(a)))
    b = [ai + bump / 8 for ai, bump in zip(a, bumps)]
    assert lp_norm(FiniteSequence(tuple(a)), p) <= lp_norm(FiniteSequence(tuple(b)), p)


@given(sequences)
def test_sign_symmetrize(x):
    absx = FiniteSequence(tuple(abs(c) for c in x))
    assert same_up_to_permutation(sign_symmetrize(x), sign_symmetrize(absx))


def test_add_pads():
    assert add(seq(1), seq(0, 2)) == seq(1, 2)
