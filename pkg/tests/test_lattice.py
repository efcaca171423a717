import itertools

import pytest

from qtoroidal.lattice import ALPHA0, RootElt, Weight, basis, bilinear, cocycle, fold, root_of, valuation, zero_mode
from qtoroidal.qscalar import ONE, q_pow

E1, E2 = basis(1), basis(2)


def test_bilinear_examples():
    assert bilinear(E1, E2) == 0
    assert bilinear(ALPHA0, ALPHA0) == 2
    # e0 folds to e2
    assert bilinear(basis(0), E2) == 1


def test_folding():
    assert fold(0) == 2 and fold(2) == 2 and fold(1) == 1 and fold(-1) == 1
    assert basis(0) == E2


def test_root_of():
    assert root_of(1, 0) == RootElt(1)
    assert root_of(0, 1) == RootElt(-1)
    assert root_of(1, 0).weight() == ALPHA0


def test_cocycle_examples():
    a = RootElt(1)
    assert cocycle(a, a) == -1
    assert cocycle(RootElt(0), RootElt(5)) == 1
    assert cocycle(RootElt(2), a) == cocycle(a, a) ** 2 == 1


def test_cocycle_is_bimultiplicative():
    # brute-force oracle: eps(a+b, c) = eps(a, c) eps(b, c) and the same in the second slot
    rng = range(-3, 4)
    for a, b, c in itertools.product(rng, repeat=3):
        A, B, C = RootElt(a), RootElt(b), RootElt(c)
        assert cocycle(A + B, C) == cocycle(A, C) * cocycle(B, C)
        assert cocycle(A, B + C) == cocycle(A, B) * cocycle(A, C)
        # eps(a, a) = (-1)^{(a,a)/2}
        assert cocycle(A, A) == (-1) ** (bilinear(A.weight(), A.weight()) // 2)


@pytest.mark.parametrize(
    "b,point,expect",
    [(E1, RootElt(1), 1), (ALPHA0, RootElt(0), 0), (ALPHA0, RootElt(1), 2)],
)
def test_zero_mode(b, point, expect):
    assert zero_mode(b, point) == expect


def test_valuation():
    assert valuation(q_pow(1), E1, RootElt(1)) == q_pow(1)
    assert valuation(q_pow(7), Weight(0, 0), RootElt(3)) == ONE
    assert valuation(-ONE, ALPHA0, RootElt(1)) == ONE
    with pytest.raises(ValueError):
        valuation(0, E1, RootElt(1))
