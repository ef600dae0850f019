# Haagerup's lower Khinchine constants and the exponent p0
#
# A_q has two closed forms on [1, 2].  They meet at p0, the root in (1, 2)
# of gamma((q+1)/2) = sqrt(pi)/2.  Note q = 2 solves the same equation, so
# the root finder brackets away from it.
import math

import numpy as np

from mixnorm.specfun import critical_p, find_p0, gamma, khinchine_A, khinchine_regime

p0 = find_p0()
print(f"p0          = {p0:.12f}")
print(f"p0/(p0 - 1) = {critical_p():.12f}")
print(f"residual    = {gamma((p0 + 1) / 2) - math.sqrt(math.pi) / 2:.2e}")
print(f"q = 2 also solves it: gamma(3/2) - sqrt(pi)/2 = {gamma(1.5) - math.sqrt(math.pi) / 2:.2e}")

# A_q over [1, 2] with the regime that applies
for q in np.linspace(1, 2, 11):
    reg = khinchine_regime(q).regime.value
    print(f"  A_{q:.1f} = {khinchine_A(q):.10f}   ({reg})")

# both branches coincide at p0
eps = 1e-8
print("jump at p0:", abs(khinchine_A(p0 - eps) - khinchine_A(p0 + eps)))
