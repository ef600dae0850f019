"""Optimal constants of the mixed Littlewood-type inequality on ``l_p x c_0^{m-1}``.

The constant ``C_(m),p`` is sandwiched between the ratio attained by the
extremal form ``T_m`` (lower) and ``A_{p*}^{-(m-1)}`` from the multiple
Khinchine inequality (upper).  For ``p >= critical_p()`` both equal
``(2**(1/2 - 1/p))**(m-1)``.
"""
import enum
import functools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .forms import (
    SPARSE_EXTREMAL_CAP,
    MixedNormScheme,
    SpaceSignature,
    build_extremal,
    conjugate_exponent,
    lp_norm,
    mixed_norm,
    parse_exponent,
)
from .norms import ascent_norm, exact_norm
from .specfun import critical_p, khinchine_A

__all__ = [
    "EXACT_NORM_MAX_M",
    "ConstantReport",
    "GapCurve",
    "Regime",
    "SandwichBounds",
    "bilinear_sandwich",
    "constant_report",
    "gap_curve",
    "predicted_constant",
    "ratio_certificate",
]

EXACT_NORM_MAX_M = 4


def _exponent(p):
    p = parse_exponent(p)
    if not p >= 2.0:
        raise ValueError(f"p must be in [2, inf], got {p}")
    return p


def _inv(p):
    return 0.0 if math.isinf(p) else 1.0 / p


def predicted_constant(m, p):
    """``(2**(1/2 - 1/p))**(m-1)``."""
    return 2.0 ** ((m - 1) * (0.5 - _inv(_exponent(p))))


@functools.lru_cache(maxsize=64)
def _exact_extremal_norm(m, p):
    return exact_norm(build_extremal(m), p).value


def _extremal_ratio(m, p):
    """(ratio, norm_source) for the extremal form ``T_m``."""
    form = build_extremal(m)
    numerator = mixed_norm(form, MixedNormScheme.littlewood(p, m))
    if m <= EXACT_NORM_MAX_M:
        return numerator / _exact_extremal_norm(m, p), "exact"
    norm = 2.0 ** (m - 1)
    cert = ascent_norm(form, SpaceSignature.mixed(p, m), restarts=1, max_iters=3)
    if cert.value < norm - 1e-6:
        raise RuntimeError(f"ascent reached {cert.value} < 2**{m - 1} on T_{m}")
    return numerator / norm, "closed-form+ascent"


def ratio_certificate(m, p):
    """Mixed norm of ``T_m`` over its operator norm.

    The norm comes from the exact sign enumeration for ``m <= 4``; beyond
    that the closed form ``2**(m-1)`` is used after checking that block
    ascent attains it.
    """
    m = int(m)
    if not 2 <= m <= SPARSE_EXTREMAL_CAP:
        raise ValueError(f"m must be in [2, {SPARSE_EXTREMAL_CAP}], got {m}")
    return _extremal_ratio(m, _exponent(p))[0]


class Regime(enum.Enum):
    OPTIMAL_KNOWN = "OptimalKnown"
    GAP_REGIME = "GapRegime"
    TRIVIAL = "Trivial"


@dataclass(frozen=True)
class ConstantReport:
    m: int
    p: float
    lower_bound: float
    upper_bound: float
    predicted: float
    regime: Regime
    witness_form_dims: int
    norm_source: str

    def to_dict(self):
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


def constant_report(m, p):
    """Lower and upper bounds for ``C_(m),p`` with the predicted closed form.

    Past the extremal-form cap the lower bound is the closed-form ratio
    (``norm_source == "closed-form"``).
    """
    m = int(m)
    if m < 2:
        raise ValueError("m must be >= 2")
    p = _exponent(p)
    predicted = predicted_constant(m, p)
    if m <= SPARSE_EXTREMAL_CAP:
        lower, source = _extremal_ratio(m, p)
    else:
        lower, source = predicted, "closed-form"
    upper = khinchine_A(conjugate_exponent(p)) ** (-(m - 1))
    if p == 2.0:
        regime = Regime.TRIVIAL
    elif p >= critical_p():
        regime = Regime.OPTIMAL_KNOWN
    else:
        regime = Regime.GAP_REGIME
    return ConstantReport(m, p, lower, upper, predicted, regime, 2 ** (m - 1), source)


@dataclass(frozen=True)
class SandwichBounds:
    lower: float
    upper: float
    exponent: float


def bilinear_sandwich(p):
    """Bounds ``2**(1/2 - 1/p) <= C_{p,inf} <= 2**(1/2 - 1/(2p))`` for ``p >= critical_p()``.

    ``C_{p,inf}`` is the constant of the ``4p/(3p-2)`` inequality for
    bilinear forms on ``l_p x c_0``.  The lower bound is measured on
    ``T_2`` rather than taken from the formula.
    """
    p = _exponent(p)
    if p < critical_p():
        raise ValueError(f"bilinear sandwich needs p >= {critical_p():.6f}, got {p}")
    s = _inv(p)
    exponent = 4.0 / (3.0 - 2.0 * s)
    t2 = build_extremal(2)
    lower = float(lp_norm(t2.entries, exponent)) / exact_norm(t2, p).value
    return SandwichBounds(lower, 2.0 ** (0.5 - 0.5 * s), exponent)


@dataclass(frozen=True, eq=False)
class GapCurve:
    """Upper ``1/A_{x/(x-1)}`` and lower ``2**(1/2 - 1/x)`` bases on ``[2, critical_p()]``."""

    x: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @property
    def diff(self):
        return self.upper - self.lower

    @property
    def max_diff(self):
        return float(self.diff.max())

    @property
    def argmax(self):
        return float(self.x[int(np.argmax(self.diff))])

    def rows(self):
        return zip(self.x.tolist(), self.upper.tolist(), self.lower.tolist(), self.diff.tolist())

    def __len__(self):
        return len(self.x)


def gap_curve(samples):
    """Uniform grid in ``x`` over ``[2, critical_p()]``, endpoints included."""
    samples = int(samples)
    if samples < 2:
        raise ValueError("samples must be >= 2")
    x = np.linspace(2.0, critical_p(), samples)
    upper = np.array([1.0 / khinchine_A(conjugate_exponent(v)) for v in x])
    lower = 2.0 ** (0.5 - 1.0 / x)
    return GapCurve(x, upper, lower)
