"""Real Gamma function, Haagerup's lower Khinchine constants and the
critical exponent ``p0`` where the two Khinchine regimes meet.

``p0`` is the root in (1, 2) of ``gamma((q + 1) / 2) = sqrt(pi) / 2``;
``critical_p()`` is its conjugate exponent ``p0 / (p0 - 1)``.
"""
import enum
import functools
import math
from dataclasses import dataclass

__all__ = [
    "KhinchineRegime",
    "Regime",
    "critical_p",
    "find_p0",
    "gamma",
    "khinchine_A",
    "khinchine_regime",
]

SQRT_PI_HALF = 0.5 * math.sqrt(math.pi)

# Lanczos approximation, g = 7, n = 9 (double precision).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# q -> gamma((q + 1) / 2) is strictly decreasing here, which keeps the
# spurious root q = 2 out of the bracket.
P0_BRACKET = (1.70, 1.95)


def gamma(x):
    """Gamma function for real ``x > 0``.

    Uses the Lanczos sum for ``x >= 0.5`` and the reflection formula below
    that. Relative error is around 1e-15 on [0.5, 10].
    """
    x = float(x)
    if not x > 0.0 or math.isnan(x):
        raise ValueError(f"gamma is only defined here for x > 0, got {x!r}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def _p0_residual(q):
    return gamma(0.5 * (q + 1.0)) - SQRT_PI_HALF


def find_p0(tolerance=1e-14, bracket=P0_BRACKET):
    """Bisect for ``p0`` in ``bracket`` until the interval is below ``tolerance``.

    The defining equation is also solved by q = 2, so the bracket must stay
    inside the monotone stretch of ``gamma((q+1)/2)``; the default does.
    """
    if not 0.0 < tolerance <= 1e-3:
        raise ValueError("tolerance must lie in (0, 1e-3]")
    return _bisect_p0(float(tolerance), tuple(bracket))


@functools.lru_cache(maxsize=32)
def _bisect_p0(tolerance, bracket):
    lo, hi = bracket
    f_lo = _p0_residual(lo)
    if f_lo * _p0_residual(hi) > 0:
        raise ValueError(f"bracket {bracket} does not enclose a sign change")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = _p0_residual(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_p():
    """Conjugate exponent of ``p0`` (about 2.18006)."""
    p0 = find_p0()
    return p0 / (p0 - 1.0)


class Regime(enum.Enum):
    CLOSED_POWER = "ClosedPower"
    GAMMA_FORMULA = "GammaFormula"


@dataclass(frozen=True)
class KhinchineRegime:
    q: float
    regime: Regime


def khinchine_regime(q):
    """Which of Haagerup's two formulas governs ``A_q``."""
    q = _check_q(q)
    regime = Regime.CLOSED_POWER if q <= find_p0() else Regime.GAMMA_FORMULA
    return KhinchineRegime(q, regime)


def _check_q(q):
    q = float(q)
    if not 1.0 <= q <= 2.0:
        raise ValueError(f"khinchine_A needs 1 <= q <= 2, got {q!r}")
    return q


def khinchine_A(q):
    """Best lower Khinchine constant ``A_q`` for real scalars, ``1 <= q <= 2``.

    ``2**(1/2 - 1/q)`` for ``q <= p0`` and
    ``sqrt(2) * (gamma((q+1)/2) / sqrt(pi))**(1/q)`` for ``p0 < q <= 2``.
    """
    q = _check_q(q)
    if khinchine_regime(q).regime is Regime.CLOSED_POWER:
        return 2.0 ** (0.5 - 1.0 / q)
    return math.sqrt(2.0) * (gamma(0.5 * (q + 1.0)) / math.sqrt(math.pi)) ** (1.0 / q)
