import random
from fractions import Fraction

import pytest

from rigidcoh import (
    FiniteGroup,
    GaloisLattice,
    LaurentSeries,
    ValuedNumber,
    abs_value,
    char_value,
    delta_IV,
    is_strongly_regular,
    valuation,
)
from rigidcoh.catalog import cartan_matrix, simply_connected_datum
from rigidcoh.errors import (
    NotStronglyRegular,
    PrecisionInsufficient,
    ZeroWithinPrecision,
)
from rigidcoh.rootdata import RootDatum

P = 3
ONE = LaurentSeries.constant(P, 1)
T = LaurentSeries.t_power(P, 1)
TRIV = FiniteGroup.trivial()
SL2 = simply_connected_datum(cartan_matrix("A", 1), GaloisLattice.with_trivial_action(TRIV, 1))
TORUS1 = RootDatum(GaloisLattice.with_trivial_action(TRIV, 1), [], [], [])


def test_valuation_examples():
    assert valuation(LaurentSeries(P, 2, [1, 1])) == 2  # t^2 + t^3
    assert valuation(ONE + T) == 0
    prod = (ONE + T) * (ONE + T).inverse()
    with pytest.raises(ZeroWithinPrecision):
        valuation(prod - ONE)


def test_abs_value_examples():
    assert abs_value(T) == ValuedNumber(3, Fraction(-1))
    assert abs_value(LaurentSeries.constant(3, 5)) == ValuedNumber(3, Fraction(0))
    assert abs_value(LaurentSeries.t_power(3, -2)) == ValuedNumber(3, Fraction(2))


def test_arithmetic_properties():
    rng = random.Random(6)
    for _ in range(150):
        a = LaurentSeries(P, rng.randint(-3, 3), [rng.randint(0, 2) for _ in range(5)])
        b = LaurentSeries(P, rng.randint(-3, 3), [rng.randint(0, 2) for _ in range(5)])
        if a.is_zero_like() or b.is_zero_like():
            continue
        assert valuation(a * b) == valuation(a) + valuation(b)
        assert abs_value(a * b) == abs_value(a) * abs_value(b)
        s = a + b
        if not s.is_zero_like():
            assert valuation(s) >= min(valuation(a), valuation(b))
            if valuation(a) != valuation(b):
                assert valuation(s) == min(valuation(a), valuation(b))


def test_inverse_and_power():
    u = ONE + T
    # single-term series invert exactly
    m = LaurentSeries(P, -2, [2])
    inv = m.inverse()
    assert inv.is_exact() and (m * inv) == ONE
    assert u.power(0) == ONE
    assert valuation(u.power(3) - ONE) == 3  # (1+t)^3 = 1 + t^3 over F_3
    assert valuation(u.power(2) - ONE) == 1
    with pytest.raises(ZeroWithinPrecision):
        LaurentSeries.zero(P).inverse()


def test_coefficient_access():
    x = LaurentSeries(P, -1, [1, 0, 2])
    assert x.coefficient(-1) == 1 and x.coefficient(0) == 0 and x.coefficient(1) == 2
    assert x.coefficient(5) == 0  # exact: implicit zeros everywhere
    trunc = LaurentSeries(P, 0, [1], precision=2)
    assert trunc.coefficient(1) == 0  # within the known window
    with pytest.raises(PrecisionInsufficient):
        trunc.coefficient(2)


def test_exactness_tracking():
    exact_zero = ONE - ONE
    assert exact_zero.is_zero_like() and exact_zero.is_exact()
    trunc = LaurentSeries(P, 0, [1, 1], precision=4)
    assert not trunc.is_exact()
    diff = trunc - trunc
    assert diff.is_zero_like() and not diff.is_exact()


def test_strong_regularity():
    assert is_strongly_regular(SL2, (ONE + T,))
    assert not is_strongly_regular(SL2, (ONE,))  # central
    assert not is_strongly_regular(SL2, (LaurentSeries.constant(P, -1),))  # (-1)^2 = 1
    # inexact coincidence with 1 raises
    approx_one = LaurentSeries(P, 0, [1], precision=3)
    with pytest.raises(PrecisionInsufficient):
        is_strongly_regular(SL2, (approx_one,))
    with pytest.raises(ValueError):
        # non-split datum rejected
        c2 = FiniteGroup.cyclic(2)
        from rigidcoh.intmatrix import IntMatrix

        twisted = RootDatum(
            GaloisLattice(c2, 1, [IntMatrix.identity(1), IntMatrix([[-1]])]), [], [], []
        )
        is_strongly_regular(twisted, (ONE,))


def test_char_value():
    val = char_value((2,), (ONE + T,))
    assert valuation(val - ONE) == 1  # (1+t)^2 - 1 = 2t + t^2


def test_delta_iv_instances():
    d = delta_IV(SL2, TORUS1, (ONE + T,))
    assert d == ValuedNumber(3, Fraction(-1))
    d2 = delta_IV(SL2, TORUS1, (T,))
    assert d2 == ValuedNumber(3, Fraction(1))
    assert delta_IV(SL2, SL2, (ONE + T,)).is_one()
    with pytest.raises(NotStronglyRegular):
        delta_IV(SL2, TORUS1, (ONE,))


def test_delta_iv_precision_stability():
    for prec in (8, 12, 16, 24, 32):
        gamma = (LaurentSeries(P, 0, [1, 1], precision=prec),)
        assert delta_IV(SL2, TORUS1, gamma) == ValuedNumber(3, Fraction(-1))
        gamma_t = (LaurentSeries(P, 1, [1], precision=prec),)
        assert delta_IV(SL2, TORUS1, gamma_t) == ValuedNumber(3, Fraction(1))


def test_delta_iv_weyl_invariance():
    # replacing gamma by w.gamma permutes the root values when R_H is w-stable
    sp4 = simply_connected_datum(
        cartan_matrix("C", 2), GaloisLattice.with_trivial_action(TRIV, 2)
    )
    torus2 = RootDatum(GaloisLattice.with_trivial_action(TRIV, 2), [], [], [])
    gamma = (ONE + T, T)
    base = delta_IV(sp4, torus2, gamma)
    from rigidcoh import weyl_group

    for w in weyl_group(sp4):
        # the moved point satisfies a(w.gamma) = (w^T a)(gamma), and w^T
        # permutes the root set, so the total valuation is unchanged
        moved = tuple(char_value(w[i], gamma) for i in range(2))
        assert delta_IV(sp4, torus2, moved) == base


def test_half_integer_exponent():
    # an odd total valuation leaves an exact half-integer exponent
    a2 = simply_connected_datum(cartan_matrix("A", 2), GaloisLattice.with_trivial_action(TRIV, 2))
    torus2 = RootDatum(GaloisLattice.with_trivial_action(TRIV, 2), [], [], [])
    gamma = (ONE + T, LaurentSeries.constant(P, 2))
    val = delta_IV(a2, torus2, gamma)
    assert val.base == 3 and val.exponent.denominator in (1, 2)
