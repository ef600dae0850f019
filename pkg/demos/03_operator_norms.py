# Operator norms on l_p x c_0 x ... x c_0
#
# exact_norm walks the sign hypercube of the sup-norm slots (Gray code,
# first sign of each slot fixed) and solves the l_p slot by duality.
# ascent_norm gives lower bounds on any domain.
import time

import numpy as np

from mixnorm import SpaceSignature, ascent_norm, build_extremal, exact_norm, make_form
from mixnorm.norms import sign_space_bits

for m in (2, 3, 4):
    t = build_extremal(m)
    t0 = time.perf_counter()
    cert = exact_norm(t, 2.5)
    print(f"||T_{m}|| = {cert.value}  (2^{sign_space_bits(t.dims)} sign patterns, "
          f"{time.perf_counter() - t0:.2f}s)")

# beyond m = 4 the sign space is hopeless, so only a lower bound
for m in (5, 6, 7):
    cert = ascent_norm(build_extremal(m), SpaceSignature.mixed(2.5, m), restarts=2)
    print(f"||T_{m}|| >= {cert.value}")

# a random trilinear form: exact vs heuristic
rng = np.random.default_rng(0)
arr = rng.standard_normal((4, 4, 4))
f = make_form(arr.shape, arr.ravel())
ex = exact_norm(f, 3)
lo = ascent_norm(f, SpaceSignature.mixed(3, 3), restarts=16, seed=1)
print(f"random 4x4x4: exact {ex.value:.10f}  ascent {lo.value:.10f}")
print("witness signs:", [w.tolist() for w in ex.witnesses[1:]])

# general domain, e.g. l_3 x l_4 x l_inf, only ascent applies
print("l_3 x l_4 x c_0 lower bound:", ascent_norm(f, SpaceSignature((3, 4, "inf")), restarts=16).value)
