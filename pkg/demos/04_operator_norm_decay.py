"""
Operator-norm decay in lambda
=============================

Largest singular values of the symmetrized kernel matrices, swept over
lambda. For ``T_lambda`` with ``Q = xy`` the scaled norm
``sqrt(lambda) ||T_lambda||`` approaches ``sqrt(2 pi) sup|psi|``, as
stationary phase predicts. For the homogeneous phase ``x^2 y + x y^2`` the
quantity ``lambda^(1/3) ||T_lambda||`` still grows over the sweep.
"""

import math

from quadhy.phases import HomogeneousPhase, QuadraticPhase
from quadhy.sampling import Window
from quadhy.verify import check_T_lambda_L2_decay, estimate_oscillatory_decay

w = Window.separable(0, 1, 0, 1)
r = check_T_lambda_L2_decay(QuadraticPhase(0, 1, 0, 0, 0), w, [1, 4, 16, 64, 128])
print("T_lambda, Q = xy")
for lam, s in zip(r.lambdas, r.scaled):
    print(f"  lambda {lam:6g}  sqrt(lambda) ||T|| = {s:.6f}")
print(f"  fitted slope {r.slope:.4f}; sqrt(2 pi) = {math.sqrt(2 * math.pi):.6f}")

# %%
chi = Window.bump1d(0, 1)
for s, lams in [(HomogeneousPhase(2, (1.0,)), [16, 64, 256, 1024]),
                (HomogeneousPhase(3, (1.0, 1.0)), [2, 4, 8, 16, 32])]:
    r = estimate_oscillatory_decay(s, chi, lams)
    print(f"degree {s.degree}, coefficients {s.coeffs}")
    for lam, v in zip(r.lambdas, r.scaled):
        print(f"  lambda {lam:6g}  lambda^(1/{s.degree}) ||T|| = {v:.6f}")
    print(f"  slope {r.slope:.4f} (target {r.target_slope:.4f}), verdict {r.verdict}")
