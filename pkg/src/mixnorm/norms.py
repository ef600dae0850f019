"""Operator norms of m-linear forms.

``exact_norm`` handles ``l_p x l_inf x ... x l_inf``: the form is convex in
each sup-norm argument, so the supremum over those balls sits at sign
vectors, and for fixed signs the first slot is a linear functional on
``l_p`` whose norm is the dual ``l_{p*}`` norm of its coefficients.  The
sign hypercube is walked in Gray-code order with incremental updates.

``ascent_norm`` is an alternating maximisation for arbitrary slot
exponents and only certifies lower bounds.
"""
import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .forms import (
    SpaceSignature,
    conjugate_exponent,
    evaluate,
    lp_norm,
    parse_exponent,
    partial_contraction,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "CertificateKind",
    "NormCertificate",
    "ascent_norm",
    "dual_norm_witness",
    "exact_norm",
    "extremal_start",
    "sign_space_bits",
]

DEFAULT_BUDGET = 2**26
_BATCH_BITS = 10
# full recontraction every this many Gray steps to bound drift
_REFRESH = 4096


class BudgetExceeded(RuntimeError):
    pass


class CertificateKind(enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"


@dataclass(frozen=True, eq=False)
class NormCertificate:
    value: float
    kind: CertificateKind
    witnesses: tuple
    evaluations: int

    def to_dict(self):
        return {
            "value": self.value,
            "kind": self.kind.value,
            "witnesses": [w.tolist() for w in self.witnesses],
            "evaluations": self.evaluations,
        }


def dual_norm_witness(coefficients, p):
    """Norm of ``x -> sum c_i x_i`` on ``l_p`` and a maximiser in the unit ball.

    The value is ``||c||_{p*}``.  For finite ``p`` the witness is
    ``sign(c) |c|^{p*-1} / ||c||_{p*}^{p*-1}``; for ``p = inf`` it is
    ``sign(c)``.
    """
    c = np.asarray(coefficients, dtype=float).ravel()
    p = parse_exponent(p)
    r = conjugate_exponent(p)
    scale = float(np.abs(c).max(initial=0.0))
    if scale == 0.0:
        return 0.0, np.zeros_like(c)
    u = c / scale
    if r == 1.0:
        return float(np.abs(c).sum()), np.sign(c)
    if math.isinf(r):
        k = int(np.argmax(np.abs(u)))
        x = np.zeros_like(c)
        x[k] = np.sign(u[k])
        return scale, x
    nu = float(lp_norm(u, r))
    x = np.sign(u) * np.power(np.abs(u) / nu, r - 1.0)
    return scale * nu, x


def sign_space_bits(dims):
    """Free sign coordinates once the first sign of every sup-norm slot is fixed."""
    return sum(n - 1 for n in dims[1:])


@dataclass(frozen=True)
class _Layout:
    arity: int
    r: float
    gray: tuple  # (slot, coord) flipped by Gray bit t
    batch: tuple  # coords of slot 1 enumerated all at once
    rest: tuple  # remaining coords of slot 1

    @classmethod
    def build(cls, dims, r):
        m = len(dims)
        free1 = list(range(1, dims[1])) if m >= 2 else []
        nb = min(_BATCH_BITS, len(free1))
        batch = tuple(free1[len(free1) - nb:])
        gray = [(1, i) for i in free1[: len(free1) - nb]]
        for j in range(2, m):
            gray.extend((j, i) for i in range(1, dims[j]))
        rest = tuple(i for i in range(dims[1]) if i not in batch) if m >= 2 else ()
        return cls(m, r, tuple(gray), batch, rest)

    def batch_signs(self):
        b = len(self.batch)
        cols = np.arange(2**b)
        return 1.0 - 2.0 * ((cols[None, :] >> np.arange(b)[:, None]) & 1)

    def signs_for(self, dims, k, col=0):
        signs = [None] + [np.ones(n) for n in dims[1:]]
        g = k ^ (k >> 1)
        for t, (j, i) in enumerate(self.gray):
            if (g >> t) & 1:
                signs[j][i] = -1.0
        for t, i in enumerate(self.batch):
            if (col >> t) & 1:
                signs[1][i] = -1.0
        return signs


def _outer_matrix(A, signs):
    out = A
    for j in range(A.ndim - 1, 1, -1):
        out = out @ signs[j]
    return out


def _flip_slice(A, signs, slot, coord):
    out = np.take(A, coord, axis=slot)
    for j in range(A.ndim - 1, 1, -1):
        if j != slot:
            out = out @ signs[j]
    return out


def _scan(A, layout, k0, k1):
    """Best (value, k, column) over Gray indices ``k0 <= k < k1``."""
    dims = A.shape
    signs = layout.signs_for(dims, k0)
    rest = list(layout.rest)
    batch = list(layout.batch)
    E = layout.batch_signs()

    def recompute():
        M = _outer_matrix(A, signs)
        return M, M[:, rest] @ signs[1][rest]

    M, base = recompute()
    best = (-1.0, k0, 0)
    for k in range(k0, k1):
        if k > k0:
            t = (k & -k).bit_length() - 1
            j, i = layout.gray[t]
            signs[j][i] = -signs[j][i]
            step = 2.0 * signs[j][i]
            if (k - k0) % _REFRESH == 0:
                M, base = recompute()
            elif j == 1:
                base = base + step * M[:, i]
            else:
                d = _flip_slice(A, signs, j, i)
                M = M + step * d
                base = base + step * (d[:, rest] @ signs[1][rest])
        C = base[:, None] + M[:, batch] @ E
        norms = lp_norm(C, layout.r, axis=0)
        col = int(np.argmax(norms))
        if norms[col] > best[0]:
            best = (float(norms[col]), k, col)
    return best


def _scan_args(args):
    return _scan(*args)


def exact_norm(form, p, budget=DEFAULT_BUDGET, workers=None):
    """Exact norm of ``form`` on ``l_p x l_inf x ... x l_inf``.

    The first slot must be the ``l_p`` slot (see ``forms.permute_slots``).
    Raises ``BudgetExceeded`` when the reduced sign space
    ``2**sign_space_bits(dims)`` is larger than ``budget``.  ``workers``
    defaults to ``$MIXNORM_WORKERS`` or 1; ties go to the first maximiser
    in enumeration order either way.
    """
    p = parse_exponent(p)
    if not p >= 2.0:
        raise ValueError(f"p must be in [2, inf], got {p}")
    dims = tuple(form.dims)
    bits = sign_space_bits(dims)
    total = 2**bits
    if total > budget:
        raise BudgetExceeded(
            f"sign space 2**{bits} exceeds budget {budget}; use ascent_norm for a lower bound"
        )
    A = form.to_dense().dense
    if form.arity == 1:
        value, x = dual_norm_witness(A, p)
        return NormCertificate(value, CertificateKind.EXACT, (x,), 1)

    layout = _Layout.build(dims, conjugate_exponent(p))
    n_outer = 2 ** len(layout.gray)
    if workers is None:
        workers = int(os.environ.get("MIXNORM_WORKERS", "1"))
    workers = max(1, min(int(workers), n_outer))
    if workers == 1:
        results = [_scan(A, layout, 0, n_outer)]
    else:
        cuts = [n_outer * w // workers for w in range(workers + 1)]
        jobs = [(A, layout, cuts[w], cuts[w + 1]) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_args, jobs))

    best = results[0]
    for res in results[1:]:
        if res[0] > best[0]:
            best = res
    _, k, col = best
    signs = layout.signs_for(dims, k, col)
    args = [np.zeros(dims[0])] + signs[1:]
    value, x = dual_norm_witness(partial_contraction(form, args, 0), p)
    return NormCertificate(value, CertificateKind.EXACT, tuple([x] + signs[1:]), total)


def extremal_start(dims, space):
    """Witness chain of the extremal family: ``e_1`` in slot 1, normalised ``e_1 + e_2`` elsewhere."""
    start = []
    for j, (n, p) in enumerate(zip(dims, space.exponents)):
        x = np.zeros(n)
        x[0] = 1.0
        if j > 0 and n > 1:
            x[1] = 1.0
            x /= lp_norm(x, p)
        start.append(x)
    return start


def _random_start(rng, dims, space):
    start = []
    for n, p in zip(dims, space.exponents):
        if math.isinf(p):
            x = rng.choice([-1.0, 1.0], size=n)
        else:
            x = rng.uniform(-1.0, 1.0, size=n)
            x /= lp_norm(x, p)
        start.append(x)
    return start


def ascent_norm(form, space, restarts=8, max_iters=100, tol=1e-10, seed=0,
                witness_start=True, history=None):
    """Lower bound for the norm of ``form`` on the domain ``space`` by block ascent.

    Each sweep replaces slot ``j`` (in order 1..m) by the dual maximiser of
    the functional left when the other slots are fixed, so within a run the
    value never decreases.  A run stops when a sweep improves by less than
    ``tol`` relative, or after ``max_iters`` sweeps.  Runs: the extremal
    witness chain (if ``witness_start``) followed by ``restarts`` seeded
    random starts; the best is returned.

    If ``history`` is a list, ``(run, value)`` is appended after every slot
    update.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not isinstance(space, SpaceSignature):
        space = SpaceSignature(tuple(space))
    if len(space) != form.arity:
        raise ValueError(f"space has {len(space)} slots, form has arity {form.arity}")
    dims = tuple(form.dims)
    rng = np.random.default_rng(seed)
    starts = [extremal_start(dims, space)] if witness_start else []
    starts += [_random_start(rng, dims, space) for _ in range(restarts)]

    best_value, best_x, sweeps = -1.0, None, 0
    for run, xs in enumerate(starts):
        prev = -math.inf
        for _ in range(max_iters):
            for j in range(form.arity):
                val, xs[j] = dual_norm_witness(partial_contraction(form, xs, j), space.exponents[j])
                if history is not None:
                    history.append((run, val))
            sweeps += 1
            if val - prev <= tol * max(abs(val), 1e-300):
                break
            prev = val
        value = evaluate(form, xs)
        if value > best_value:
            best_value, best_x = value, [x.copy() for x in xs]
    return NormCertificate(best_value, CertificateKind.LOWER_BOUND, tuple(best_x), sweeps)
