# Optimal constants C_(m),p
#
# lower: mixed norm of T_m over ||T_m||; upper: A_{p*}^{-(m-1)}.  They meet
# for p >= p0/(p0-1) and stay within 4e-4 per factor below it.
from mixnorm import bilinear_sandwich, constant_report, critical_p

print(f"critical p = {critical_p():.6f}")
print(f"{'m':>2} {'p':>6} {'lower':>14} {'upper':>14} {'predicted':>14}  regime")
for m in (2, 3, 4, 6):
    for p in (2, 2.1, 2.18, 2.5, 4, float("inf")):
        r = constant_report(m, p)
        print(f"{m:>2} {p:>6} {r.lower_bound:14.10f} {r.upper_bound:14.10f} "
              f"{r.predicted:14.10f}  {r.regime.value} ({r.norm_source})")

# bilinear 4p/(3p-2) inequality on l_p x c_0
for p in (2.2, 3, 10, float("inf")):
    b = bilinear_sandwich(p)
    print(f"p={p}: {b.lower:.10f} <= C_p,inf <= {b.upper:.10f}  (exponent {b.exponent:.6f})")
