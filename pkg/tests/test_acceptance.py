"""Acceptance criteria; each test prints one PASS/FAIL line in the summary.

Timings are best-of-N wall clock so a single scheduler hiccup does not
decide a runtime bound.
"""
import math
import time

import numpy as np
import pytest

from mixnorm.forms import (
    INF,
    MixedNormScheme,
    SpaceSignature,
    admissibility,
    build_extremal,
    evaluate,
    lp_norm,
    make_form,
    mixed_norm,
)
from mixnorm.lab import bilinear_sandwich, gap_curve, ratio_certificate
from mixnorm.norms import ascent_norm, exact_norm, sign_space_bits
from mixnorm.specfun import _bisect_p0, critical_p, find_p0, gamma

from oracles import naive_exact_norm, random_tensor


def best_time(fn, repeats=5, setup=None):
    best, out = math.inf, None
    for _ in range(repeats):
        if setup:
            setup()
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def test_c01_p0_and_critical_exponent(criterion):
    elapsed, (p0, cp) = best_time(lambda: (find_p0(), critical_p()), setup=_bisect_p0.cache_clear)
    residual = abs(gamma((p0 + 1) / 2) - math.sqrt(math.pi) / 2)
    ok = abs(p0 - 1.84742) <= 1e-4 and abs(cp - 2.18006) <= 1e-4 and residual <= 1e-9 and elapsed < 1e-3
    criterion("C1 p0/critical_p", ok,
              f"p0={p0:.8f} critical_p={cp:.8f} residual={residual:.1e} time={elapsed * 1e3:.3f}ms")


def test_c02_t2_norm(criterion):
    t2 = build_extremal(2)
    worst, slowest = 0.0, 0.0
    for p in (2, 2.5, 3, 4, 10, INF):
        elapsed, cert = best_time(lambda: exact_norm(t2, p))
        worst = max(worst, abs(cert.value - 2))
        slowest = max(slowest, elapsed)
    criterion("C2 ||T_2|| = 2", worst <= 1e-12 and slowest < 1e-3,
              f"max |err|={worst:.1e} slowest={slowest * 1e3:.3f}ms")


def test_c03_tm_norms_exact(criterion):
    t3, t4 = build_extremal(3), build_extremal(4)
    assert 2 ** sign_space_bits(t3.dims) <= 2**6
    assert 2 ** sign_space_bits(t4.dims) <= 2**21
    errs = [abs(exact_norm(t3, p).value - 4) for p in (2, 2.2, 2.5, 3, 7, INF)]
    t0 = time.perf_counter()
    single = exact_norm(t4, 2.5, workers=1)
    t_single = time.perf_counter() - t0
    t0 = time.perf_counter()
    multi = exact_norm(t4, INF, workers=8)
    t_multi = time.perf_counter() - t0
    errs += [abs(single.value - 8), abs(multi.value - 8)]
    ok = max(errs) <= 1e-9 and t_single < 60 and t_multi < 10
    criterion("C3 ||T_3||=4, ||T_4||=8 exact", ok,
              f"max |err|={max(errs):.1e} m=4 single={t_single:.2f}s 8 workers={t_multi:.2f}s")


def test_c04_tm_norms_witness(criterion):
    t0 = time.perf_counter()
    vals = {}
    for m in (5, 6):
        form = build_extremal(m)
        assert form.is_sparse
        vals[m] = ascent_norm(form, SpaceSignature.mixed(2.5, m), restarts=1, max_iters=20).value
    elapsed = time.perf_counter() - t0
    ok = all(vals[m] >= 2 ** (m - 1) - 1e-6 for m in vals) and elapsed < 10
    criterion("C4 ascent reaches 2^(m-1) for m=5,6", ok, f"values={vals} time={elapsed:.2f}s")


def test_c05_extremal_ratio(criterion):
    worst = 0.0
    for m in (2, 3, 4):
        for p in (2.2, 2.5, 3, 4, 10, INF):
            s = 0 if p == INF else 1 / p
            worst = max(worst, abs(ratio_certificate(m, p) - 2 ** ((0.5 - s) * (m - 1))))
        worst = max(worst, abs(ratio_certificate(m, INF) - 2 ** ((m - 1) / 2)))
        worst = max(worst, abs(ratio_certificate(m, 2) - 1))
    criterion("C5 ratio = (2^(1/2-1/p))^(m-1)", worst <= 1e-9, f"max |err|={worst:.1e}")


def test_c06_gap_claim(criterion):
    t0 = time.perf_counter()
    g = gap_curve(10001)
    elapsed = time.perf_counter() - t0
    ends = max(abs(g.diff[0]), abs(g.diff[-1]))
    ok = 0 < g.max_diff <= 4e-4 and ends <= 1e-9 and elapsed < 1
    criterion("C6 gap <= 4e-4", ok,
              f"max diff={g.max_diff:.6e} at x={g.argmax:.6f} endpoints={ends:.1e} time={elapsed:.3f}s")


def test_c07_bilinear_sandwich(criterion):
    worst = 0.0
    for p in (2.2, 3, 4, 10, INF):
        s = 0 if p == INF else 1 / p
        b = bilinear_sandwich(p)
        t2 = build_extremal(2)
        measured = float(lp_norm(t2.entries, 4 / (3 - 2 * s))) / exact_norm(t2, p).value
        closed = 4 ** ((3 - 2 * s) / 4) / 2
        worst = max(worst, abs(measured - 2 ** (0.5 - s)), abs(closed - 2 ** (0.5 - s)),
                    abs(b.lower - 2 ** (0.5 - s)), abs(b.upper - 2 ** (0.5 - s / 2)))
    b = bilinear_sandwich(INF)
    ok = worst <= 1e-12 and abs(b.lower - math.sqrt(2)) <= 1e-12 and abs(b.upper - math.sqrt(2)) <= 1e-12
    criterion("C7 bilinear sandwich", ok, f"max |err|={worst:.1e}")


def test_c08_admissibility(criterion):
    fails = []
    for m in (2, 3, 4, 6):
        for p in (2, 2.1, 2.5, 3, 4, 10, INF):
            space = SpaceSignature.mixed(p, m)
            scheme = MixedNormScheme.littlewood(p, m)
            lhs = sum(1 / q for q in scheme.exponents)
            rhs = 1.5 - space.reciprocal_sum
            if not admissibility(space, scheme).ok or abs(lhs - rhs) > 1e-12:
                fails.append((m, p, "equality"))
            lowered = MixedNormScheme((1, m - 1), (scheme.exponents[0] - 1e-6, 2))
            if admissibility(space, lowered).ok:
                fails.append((m, p, "perturbed"))
    criterion("C8 admissibility with equality", not fails, f"failures={fails}")


def test_c09_gray_code_matches_naive(criterion):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        arr = random_tensor(rng, max_dim=3, max_arity=3)
        p = float(rng.choice([2, 2.5, 3, 5, INF]))
        got = exact_norm(make_form(arr.shape, arr.ravel()), p).value
        ref = naive_exact_norm(arr, p)
        worst = max(worst, abs(got - ref) / max(1.0, ref))
    criterion("C9 Gray-code vs naive enumeration", worst <= 1e-12, f"max rel err={worst:.1e}")


def test_c10_property_suite(criterion):
    rng = np.random.default_rng(7)
    failures = {k: 0 for k in ("monotone", "collapse", "soundness", "scaling", "sign")}
    for _ in range(200):
        arr = random_tensor(rng, max_dim=3, max_arity=3, min_arity=2)
        m = arr.ndim
        form = make_form(arr.shape, arr.ravel())
        p = float(rng.choice([2, 2.5, 3, 6, INF]))

        q = float(rng.uniform(0.5, 4))
        exps = tuple(float(v) for v in rng.uniform(0.5, 4, size=m))
        lowered = list(exps)
        j = int(rng.integers(m))
        lowered[j] *= float(rng.uniform(0.3, 1.0))
        base = mixed_norm(form, MixedNormScheme((1,) * m, exps))
        if mixed_norm(form, MixedNormScheme((1,) * m, tuple(lowered))) < base * (1 - 1e-12):
            failures["monotone"] += 1

        flat = mixed_norm(form, MixedNormScheme((1,) * m, (q,) + (2,) * (m - 1)))
        if abs(flat - mixed_norm(form, MixedNormScheme((1, m - 1), (q, 2)))) > 1e-12 * max(1, flat):
            failures["collapse"] += 1

        exact = exact_norm(form, p)
        lower = ascent_norm(form, SpaceSignature.mixed(p, m), restarts=2, max_iters=30,
                            seed=int(rng.integers(1 << 30)))
        for cert in (exact, lower):
            v = evaluate(form, cert.witnesses)
            if abs(v - cert.value) > 1e-9 * max(1, abs(cert.value)):
                failures["soundness"] += 1
        if lower.value > exact.value + 1e-9:
            failures["soundness"] += 1

        c = float(rng.uniform(-5, 5))
        if abs(exact_norm(form.scaled(c), p).value - abs(c) * exact.value) > 1e-12 * max(1, abs(c) * exact.value):
            failures["scaling"] += 1
        if abs(exact_norm(form.scaled(-1), p).value - exact.value) > 1e-12 * max(1, exact.value):
            failures["sign"] += 1
    criterion("C10 property suite (200 instances)", not any(failures.values()), f"failures={failures}")
