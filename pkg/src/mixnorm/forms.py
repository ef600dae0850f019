"""Coefficient tensors of m-linear forms and the norms computed from them.

A form ``T`` on ``R^{n_1} x ... x R^{n_m}`` is stored through its
coefficients ``T(e_{i_1}, ..., e_{i_m})``.  Indices are 1-based in every
public entry point (``entry``, sparse entry lists, the JSON format) and
0-based internally.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = [
    "DENSE_EXTREMAL_CAP",
    "INF",
    "SPARSE_EXTREMAL_CAP",
    "Admissibility",
    "CoefficientTensor",
    "HLExponents",
    "MixedNormScheme",
    "SpaceSignature",
    "admissibility",
    "admissible",
    "build_extremal",
    "conjugate_exponent",
    "evaluate",
    "hl_exponents",
    "lp_norm",
    "make_form",
    "make_sparse_form",
    "mixed_norm",
    "parse_exponent",
    "partial_contraction",
    "permute_slots",
]

INF = math.inf

# Dense T_m has 2**(m*(m-1)) entries; T_6 would need 8 GiB.
DENSE_EXTREMAL_CAP = 5
SPARSE_EXTREMAL_CAP = 12
_DENSE_ENTRY_LIMIT = 2**27


def parse_exponent(text):
    """Parse an exponent token; ``inf`` (any case) means infinity."""
    if isinstance(text, str):
        t = text.strip().lower()
        if t in ("inf", "infinity", "+inf"):
            return INF
        return float(t)
    return float(text)


def conjugate_exponent(p):
    """``p / (p - 1)`` with ``1 <-> inf``."""
    p = float(p)
    if p < 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    if p == 1.0:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def lp_norm(v, r, axis=None):
    """(Quasi-)norm ``(sum |v|^r)^(1/r)``; ``r = inf`` gives the max norm."""
    a = np.abs(np.asarray(v, dtype=float))
    if math.isinf(r):
        return a.max(axis=axis, initial=0.0)
    if r == 1.0:
        return a.sum(axis=axis)
    if r == 2.0:
        return np.sqrt(np.square(a).sum(axis=axis))
    return np.power(np.power(a, r).sum(axis=axis), 1.0 / r)


@dataclass(frozen=True, eq=False)
class CoefficientTensor:
    """Coefficients of an m-linear form, dense or as a sparse entry list.

    Exactly one representation is held: ``dense`` (an ndarray of shape
    ``dims``) or ``indices``/``values`` (0-based ``(nnz, m)`` index rows
    and their coefficients).  Instances are immutable.
    """

    dims: tuple
    dense: np.ndarray | None = field(default=None, repr=False)
    indices: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        for arr in (self.dense, self.indices, self.values):
            if arr is not None:
                arr.flags.writeable = False

    @property
    def arity(self):
        return len(self.dims)

    @property
    def is_sparse(self):
        return self.dense is None

    @property
    def size(self):
        return math.prod(self.dims)

    @property
    def nnz(self):
        if self.is_sparse:
            return int(np.count_nonzero(self.values))
        return int(np.count_nonzero(self.dense))

    @property
    def entries(self):
        """Flat row-major coefficient array (last index fastest)."""
        return self.to_dense().dense.ravel()

    def entry(self, *index):
        """Coefficient ``T(e_{i_1}, ..., e_{i_m})`` for a 1-based index."""
        if len(index) != self.arity:
            raise ValueError(f"expected {self.arity} indices, got {len(index)}")
        idx = tuple(int(i) - 1 for i in index)
        for i, n in zip(idx, self.dims):
            if not 0 <= i < n:
                raise IndexError(f"index {index} out of range for dims {self.dims}")
        if not self.is_sparse:
            return float(self.dense[idx])
        hit = np.all(self.indices == np.asarray(idx), axis=1)
        return float(self.values[hit].sum())

    def to_dense(self):
        if not self.is_sparse:
            return self
        if self.size > _DENSE_ENTRY_LIMIT:
            raise MemoryError(f"dense array with {self.size} entries is too large")
        arr = np.zeros(self.dims)
        np.add.at(arr, tuple(self.indices.T), self.values)
        return CoefficientTensor(self.dims, dense=arr)

    def to_sparse(self):
        if self.is_sparse:
            return self
        idx = np.argwhere(self.dense != 0)
        vals = self.dense[tuple(idx.T)] if len(idx) else np.zeros(0)
        return CoefficientTensor(self.dims, indices=_index_array(idx, self.dims), values=vals)

    def sparse_entries(self):
        """``(1-based index tuple, value)`` for nonzero coefficients, row-major order."""
        sp = self.to_sparse()
        order = np.lexsort(sp.indices.T[::-1]) if len(sp.values) else []
        return [
            (tuple(int(i) + 1 for i in sp.indices[k]), float(sp.values[k]))
            for k in order
            if sp.values[k] != 0
        ]

    def scaled(self, c):
        c = float(c)
        if self.is_sparse:
            return CoefficientTensor(self.dims, indices=self.indices, values=c * self.values)
        return CoefficientTensor(self.dims, dense=c * self.dense)


def _index_array(idx, dims):
    dtype = np.int32 if max(dims, default=1) < 2**31 else np.int64
    return np.asarray(idx, dtype=dtype).reshape(-1, len(dims))


def _check_dims(dims):
    dims = tuple(int(n) for n in dims)
    if not dims:
        raise ValueError("a form needs at least one slot")
    if any(n < 1 for n in dims):
        raise ValueError(f"dims must be positive, got {dims}")
    return dims


def make_form(dims, entries):
    """Dense form from ``dims`` and a flat row-major coefficient list."""
    dims = _check_dims(dims)
    arr = np.array(entries, dtype=float).ravel()
    if arr.size != math.prod(dims):
        raise ValueError(
            f"dimension mismatch: {arr.size} entries for dims {dims} "
            f"(need {math.prod(dims)})"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    return CoefficientTensor(dims, dense=arr.reshape(dims))


def make_sparse_form(dims, sparse_entries):
    """Sparse form from ``(1-based index tuple, value)`` pairs.

    Repeated indices are summed.
    """
    dims = _check_dims(dims)
    pairs = list(sparse_entries)
    idx = np.array([list(ix) for ix, _ in pairs], dtype=np.int64).reshape(-1, len(dims))
    vals = np.array([v for _, v in pairs], dtype=float)
    if idx.shape[0] and idx.shape[1] != len(dims):
        raise ValueError("index tuples must have one entry per slot")
    if not np.all(np.isfinite(vals)):
        raise ValueError("coefficients must be finite")
    idx = idx - 1
    if np.any(idx < 0) or np.any(idx >= np.asarray(dims)):
        raise ValueError(f"sparse index out of range for dims {dims}")
    if len(idx):
        idx, inverse = np.unique(idx, axis=0, return_inverse=True)
        vals = np.bincount(inverse.ravel(), weights=vals, minlength=len(idx))
    return CoefficientTensor(dims, indices=_index_array(idx, dims), values=vals)


def _check_args(form, args):
    if len(args) != form.arity:
        raise ValueError(f"expected {form.arity} arguments, got {len(args)}")
    out = []
    for j, (x, n) in enumerate(zip(args, form.dims)):
        x = np.asarray(x, dtype=float).ravel()
        if x.size != n:
            raise ValueError(f"argument {j + 1} has length {x.size}, slot needs {n}")
        out.append(x)
    return out


def evaluate(form, args):
    """T(x_1, ..., x_m) = sum_i T(e_i) * prod_j x_j[i_j]."""
    args = _check_args(form, args)
    if form.is_sparse:
        prod = form.values.copy()
        for j, x in enumerate(args):
            prod *= x[form.indices[:, j]]
        return float(prod.sum())
    out = form.dense
    for x in reversed(args):
        out = out @ x
    return float(out)


def partial_contraction(form, args, slot):
    """Coefficient vector of the linear functional left in ``slot``.

    ``args[slot]`` is ignored; the result ``c`` satisfies
    ``evaluate(form, args) == c @ args[slot]``.
    """
    m = form.arity
    if form.is_sparse:
        w = form.values.copy()
        for j in range(m):
            if j != slot:
                w *= np.asarray(args[j], dtype=float)[form.indices[:, j]]
        return np.bincount(form.indices[:, slot], weights=w, minlength=form.dims[slot])
    out = form.dense
    for j in range(m - 1, slot, -1):
        out = out @ np.asarray(args[j], dtype=float)
    for j in range(slot):
        out = np.tensordot(np.asarray(args[j], dtype=float), out, axes=(0, 0))
    return np.asarray(out, dtype=float)


def permute_slots(form, order):
    """Form ``S`` with ``S(x_0, ..., x_{m-1}) = T`` evaluated with slot ``order[k]`` fed ``x_k``."""
    order = [int(k) for k in order]
    if sorted(order) != list(range(form.arity)):
        raise ValueError(f"{order} is not a permutation of the slots")
    dims = tuple(form.dims[k] for k in order)
    if form.is_sparse:
        return CoefficientTensor(dims, indices=form.indices[:, order].copy(), values=form.values)
    return CoefficientTensor(dims, dense=np.ascontiguousarray(np.transpose(form.dense, order)))


def build_extremal(m, sparse=None):
    """The extremal form ``T_m`` (all dims ``2**(m-1)``, norm ``2**(m-1)``).

    ``T_2(x, y) = (y1 + y2) x1 + (y1 - y2) x2``.  ``T_m`` is
    ``(x_m^1 + x_m^2) T_{m-1}(x_1, ..., x_{m-1})`` plus
    ``(x_m^1 - x_m^2) T_{m-1}`` applied to backward-shifted arguments,
    the shifts being ``2**(m-2)`` in slots 1 and 2 and ``2**(m-j)`` in slot
    ``j >= 3``.  The two copies have disjoint supports, so every nonzero
    coefficient is +-1 and there are ``4**(m-1)`` of them.

    ``sparse=None`` picks dense storage for ``m <= 4``.
    """
    m = int(m)
    if not 2 <= m <= SPARSE_EXTREMAL_CAP:
        raise ValueError(f"m must be in [2, {SPARSE_EXTREMAL_CAP}], got {m}")
    if sparse is None:
        sparse = m >= 5
    if not sparse and m > DENSE_EXTREMAL_CAP:
        raise ValueError(f"dense T_m is capped at m <= {DENSE_EXTREMAL_CAP}; use sparse=True")

    idx = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=np.int64)
    vals = np.array([1.0, 1.0, 1.0, -1.0])
    for k in range(3, m + 1):
        half = 2 ** (k - 2)
        shift = np.array([half] + [2 ** (k - j) for j in range(2, k)], dtype=np.int64)
        shifted = idx + shift
        plane_1 = np.zeros((2 * len(idx), 1), dtype=np.int64)
        plane_2 = np.ones((2 * len(idx), 1), dtype=np.int64)
        both = np.vstack([idx, shifted])
        idx = np.vstack([np.hstack([both, plane_1]), np.hstack([both, plane_2])])
        vals = np.concatenate([vals, vals, vals, -vals])

    dims = (2 ** (m - 1),) * m
    form = CoefficientTensor(dims, indices=_index_array(idx, dims), values=vals)
    return form if sparse else form.to_dense()


@dataclass(frozen=True)
class SpaceSignature:
    """Domain exponents per slot; ``inf`` stands for c_0 / l_inf."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(parse_exponent(p) for p in self.exponents)
        for p in exps:
            if not (p >= 2.0):
                raise ValueError(f"slot exponents must be >= 2 or inf, got {p}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def mixed(cls, p, m):
        """``l_p x c_0 x ... x c_0`` with ``m`` slots."""
        return cls((p,) + (INF,) * (m - 1))

    def __len__(self):
        return len(self.exponents)

    @property
    def reciprocal_sum(self):
        return sum(0.0 if math.isinf(p) else 1.0 / p for p in self.exponents)


@dataclass(frozen=True)
class MixedNormScheme:
    """Block partition ``(n_1, ..., n_k)`` of the slots with outer exponents.

    With ``diagonal=False`` a block sums over every index tuple of its
    slots.  With ``diagonal=True`` a block of ``n_j`` slots repeats a
    single basis index across them (``T(e_i, e_i, ...)``), which needs
    equal dims inside the block.
    """

    partition: tuple
    exponents: tuple
    diagonal: bool = False

    def __post_init__(self):
        part = tuple(int(n) for n in self.partition)
        exps = tuple(parse_exponent(q) for q in self.exponents)
        if not part or any(n < 1 for n in part):
            raise ValueError(f"partition must be non-empty positive integers, got {part}")
        if len(part) != len(exps):
            raise ValueError("partition and exponents differ in length")
        if any(not q > 0 for q in exps):
            raise ValueError(f"exponents must be positive, got {exps}")
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def littlewood(cls, p, m):
        """Scheme of the ``l_p x c_0^{m-1}`` inequality: ``(p*, 2)`` on ``(1, m-1)``."""
        return cls((1, m - 1), (conjugate_exponent(p), 2.0))

    @property
    def arity(self):
        return sum(self.partition)

    @property
    def k(self):
        return len(self.partition)

    def blocks(self):
        start = 0
        for n in self.partition:
            yield tuple(range(start, start + n))
            start += n


def _check_scheme(form, scheme):
    if scheme.arity != form.arity:
        raise ValueError(
            f"partition {scheme.partition} sums to {scheme.arity}, form has arity {form.arity}"
        )
    if scheme.diagonal:
        for block in scheme.blocks():
            if len({form.dims[j] for j in block}) > 1:
                raise ValueError(f"diagonal block {block} mixes dims {form.dims}")


def mixed_norm(form, scheme):
    """Nested mixed norm; the innermost block uses the last exponent.

    ``(sum_{i_1} ( ... (sum_{i_k} |T|^{q_k})^{q_{k-1}/q_k} ... )^{q_1/q_2})^{1/q_1}``
    """
    _check_scheme(form, scheme)
    if form.is_sparse:
        return _mixed_norm_sparse(form, scheme)
    arr = form.dense
    if scheme.diagonal:
        letters = []
        for b, block in enumerate(scheme.blocks()):
            letters.extend([chr(ord("a") + b)] * len(block))
        arr = np.einsum("".join(letters) + "->" + "".join(sorted(set(letters))), arr)
    else:
        shape = [math.prod(form.dims[j] for j in block) for block in scheme.blocks()]
        arr = arr.reshape(shape)
    for q in reversed(scheme.exponents):
        arr = lp_norm(arr, q, axis=-1)
    return float(arr)


def _mixed_norm_sparse(form, scheme):
    idx, vals = form.indices, np.abs(form.values)
    keep = vals != 0
    if scheme.diagonal:
        for block in scheme.blocks():
            for j in block[1:]:
                keep &= idx[:, j] == idx[:, block[0]]
    idx, vals = idx[keep], vals[keep]
    # one key column per block is enough once the block is diagonal;
    # product blocks keep all their columns
    key_cols = [[b[0]] if scheme.diagonal else list(b) for b in scheme.blocks()]
    for level in range(scheme.k - 1, -1, -1):
        q = scheme.exponents[level]
        if level == 0:
            return float(lp_norm(vals, q))
        cols = [c for block in key_cols[:level] for c in block]
        if len(vals) == 0:
            return 0.0
        keys, inverse = np.unique(idx[:, cols], axis=0, return_inverse=True)
        inverse = inverse.ravel()
        if math.isinf(q):
            red = np.zeros(len(keys))
            np.maximum.at(red, inverse, vals)
        else:
            red = np.bincount(inverse, weights=np.power(vals, q), minlength=len(keys))
            red = np.power(red, 1.0 / q)
        first = np.unique(inverse, return_index=True)[1]
        idx, vals = idx[first], red
    return 0.0


class Admissibility(NamedTuple):
    ok: bool
    violated: str | None


def admissibility(space, scheme, rtol=1e-12):
    """Check the exponent conditions of the multiple Hardy-Littlewood theorem.

    With ``s = sum 1/p_i``: ``0 <= s <= 1/2``; every ``q_j`` in
    ``[1/(1 - s), 2]``; ``sum 1/q_j <= (k+1)/2 - s``.  Comparisons allow a
    relative slack of ``rtol`` so equality cases survive rounding.
    """
    if len(space) != scheme.arity:
        raise ValueError(f"space has {len(space)} slots, scheme covers {scheme.arity}")
    s = space.reciprocal_sum
    if not (s <= 0.5 * (1 + rtol)):
        return Admissibility(False, f"sum of 1/p_i = {s:.17g} exceeds 1/2")
    q_min = 1.0 / (1.0 - s)
    for j, q in enumerate(scheme.exponents, start=1):
        if q < q_min * (1 - rtol) or q > 2.0 * (1 + rtol):
            return Admissibility(False, f"q_{j} = {q:.17g} outside [{q_min:.17g}, 2]")
    lhs = sum(1.0 / q for q in scheme.exponents)
    rhs = 0.5 * (scheme.k + 1) - s
    if lhs > rhs + rtol * max(1.0, abs(rhs)):
        return Admissibility(False, f"sum of 1/q_j = {lhs:.17g} exceeds {rhs:.17g}")
    return Admissibility(True, None)


def admissible(space, scheme):
    return admissibility(space, scheme).ok


class HLExponents(NamedTuple):
    first_regime: float
    second_regime: float
    mixed_lambda: float
    regime: str


def hl_exponents(p, q):
    """Optimal exponents of the bilinear Hardy-Littlewood inequalities on ``l_p x l_q``.

    ``first_regime = pq/(pq - p - q)`` applies when ``1/2 < 1/p + 1/q < 1``,
    ``second_regime = 4pq/(3pq - 2p - 2q)`` when ``1/p + 1/q <= 1/2``;
    ``mixed_lambda`` equals ``first_regime``.  ``regime`` names the one
    that applies ("first" or "second").
    """
    p, q = parse_exponent(p), parse_exponent(q)
    if p < 2 or q < 2:
        raise ValueError("p and q must be >= 2")
    s = (0.0 if math.isinf(p) else 1.0 / p) + (0.0 if math.isinf(q) else 1.0 / q)
    if s >= 1.0:
        raise ValueError(f"degenerate exponents: 1/p + 1/q = {s}")
    first = 1.0 / (1.0 - s)
    second = 4.0 / (3.0 - 2.0 * s)
    return HLExponents(first, second, first, "second" if s <= 0.5 else "first")
