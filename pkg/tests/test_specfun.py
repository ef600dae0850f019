import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixnorm.specfun import (
    P0_BRACKET,
    Regime,
    critical_p,
    find_p0,
    gamma,
    khinchine_A,
    khinchine_regime,
)

from oracles import A_1_9, A_1_95, CRITICAL_P, GAMMA_TABLE, P0


@pytest.mark.parametrize("x,expected", sorted(GAMMA_TABLE.items()))
def test_gamma_against_mpmath(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-12)


def test_gamma_identities():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(1.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert gamma(1.42371) < math.sqrt(math.pi) / 2


def test_gamma_below_half_uses_reflection():
    assert gamma(0.25) == pytest.approx(3.6256099082219083119, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, float("nan")])
def test_gamma_domain(x):
    with pytest.raises(ValueError):
        gamma(x)


@given(st.floats(0.5, 5.0))
def test_gamma_recurrence(x):
    assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-11)


def test_find_p0_value_and_residual():
    assert find_p0(1e-6) == pytest.approx(1.84742, abs=1e-5)
    p = find_p0(1e-10)
    assert abs(gamma((p + 1) / 2) - math.sqrt(math.pi) / 2) < 1e-9
    assert find_p0() == pytest.approx(P0, abs=1e-12)


def test_find_p0_skips_the_root_at_two():
    # gamma(3/2) = sqrt(pi)/2 as well
    p = find_p0(1e-6)
    assert 1 < p < 2
    assert abs(p - 2) > 0.1


@pytest.mark.parametrize("bracket", [(1.70, 1.95), (1.75, 1.90), (1.80, 1.85), (1.72, 1.93)])
def test_find_p0_bracket_invariance(bracket):
    assert find_p0(1e-9, bracket) == pytest.approx(find_p0(1e-9, P0_BRACKET), abs=2e-9)


@pytest.mark.parametrize("tol", [0.0, -1e-6, 1e-2])
def test_find_p0_rejects_tolerance(tol):
    with pytest.raises(ValueError):
        find_p0(tol)


def test_critical_p():
    c = critical_p()
    assert c == pytest.approx(2.18006, abs=1e-4)
    assert c == pytest.approx(CRITICAL_P, abs=1e-11)
    assert 1 / c + 1 / find_p0() == pytest.approx(1.0, abs=1e-12)
    assert c > 2


def test_khinchine_values():
    assert khinchine_A(1) == pytest.approx(2**-0.5, rel=1e-15)
    assert khinchine_A(2) == pytest.approx(1.0, abs=1e-14)
    assert khinchine_A(1.9) == pytest.approx(A_1_9, rel=1e-12)
    assert khinchine_A(1.95) == pytest.approx(A_1_95, rel=1e-12)
    assert khinchine_A(1.5) == pytest.approx(2 ** (0.5 - 1 / 1.5), rel=1e-15)


def test_khinchine_regimes():
    p0 = find_p0()
    assert khinchine_regime(1.2).regime is Regime.CLOSED_POWER
    assert khinchine_regime(p0).regime is Regime.CLOSED_POWER
    assert khinchine_regime(1.9).regime is Regime.GAMMA_FORMULA


def test_khinchine_continuity_at_p0():
    p0 = find_p0()
    for eps in (1e-3, 1e-5, 1e-7):
        assert abs(khinchine_A(p0 - eps) - khinchine_A(p0 + eps)) < 10 * eps


def test_khinchine_both_formulas_agree_at_two():
    closed = 2 ** (0.5 - 1 / 2)
    gamma_form = math.sqrt(2) * (gamma(1.5) / math.sqrt(math.pi)) ** 0.5
    assert closed == pytest.approx(gamma_form, abs=1e-14)


def test_khinchine_monotone():
    qs = np.linspace(1, 2, 4001)
    vals = np.array([khinchine_A(q) for q in qs])
    assert np.all(np.diff(vals) >= -1e-14)


@pytest.mark.parametrize("q", [0.99, 2.01, -1.0])
def test_khinchine_domain(q):
    with pytest.raises(ValueError):
        khinchine_A(q)


@settings(max_examples=50)
@given(st.floats(1.0, 2.0))
def test_khinchine_between_half_root_and_one(q):
    assert 2**-0.5 - 1e-15 <= khinchine_A(q) <= 1 + 1e-14
