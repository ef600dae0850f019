# The extremal forms T_m
#
# T_2(x, y) = (y1 + y2) x1 + (y1 - y2) x2, and T_m doubles T_{m-1}: one
# copy multiplied by (x_m^1 + x_m^2), a shifted copy by (x_m^1 - x_m^2).
import numpy as np

from mixnorm import MixedNormScheme, build_extremal, evaluate, mixed_norm

t2 = build_extremal(2)
print("T_2 coefficients:\n", t2.dense)

t3 = build_extremal(3)
print("T_3 dims:", t3.dims, " nonzeros:", t3.nnz)
print("T_3 slice i3 = 1:\n", t3.dense[:, :, 0])
print("T_3 slice i3 = 2:\n", t3.dense[:, :, 1])

# dense storage stops at m = 5; larger m come back as sparse entry lists
for m in range(2, 9):
    t = build_extremal(m)
    print(f"m={m}: dims {t.dims[0]}^{m}, nnz {t.nnz} (= 4^{m - 1}), sparse={t.is_sparse}")

# witness chain: x_1 = e_1 and x_j = e_1 + e_2 gives T_m = 2^(m-1)
m = 6
t = build_extremal(m)
n = t.dims[0]
e1 = np.eye(n)[0]
e12 = np.eye(n)[0] + np.eye(n)[1]
print(f"T_{m}(e1, e1+e2, ...) =", evaluate(t, [e1] + [e12] * (m - 1)))

# the mixed sum on the left of the inequality
p = 3.0
print(f"mixed norm of T_{m} with (p*, 2):", mixed_norm(t, MixedNormScheme.littlewood(p, m)))
