"""
The quadratic Hartley operator
==============================

``H_Q f(x) = sqrt(|b| / 2 pi) integral [exp(-i Q(x, y)) + z exp(-i Q(-x, y))] / 2 f(y) dy``
with ``z = +-i``. Both exponentials are unitary Fourier transforms after a
chirp, but their cross term is real and gets multiplied by ``z``. It therefore
drops out of ``|H_Q f|^2``, and the operator has L2 norm exactly ``1/sqrt 2``.
"""

import math

import numpy as np

from quadhy.norms import lp_norm
from quadhy.phases import QuadraticPhase
from quadhy.sampling import GridSpec, default_corpus, make_modulated_gaussian
from quadhy.transforms import TransformSpec, apply, build_kernel_matrix
from quadhy.verify import check_hausdorff_young

corpus = default_corpus()

# %%
# Norm ratios for several phases and both choices of ``z``.
for phase in [(1, 1, 1, 1, 1), (1, -1, 0, 2, 0), (0, 1, 0, 0, 0)]:
    for z_sign in (1, -1):
        spec = TransformSpec("HQ", QuadraticPhase(*phase), z_sign=z_sign)
        ratios = [lp_norm(apply(e.function, spec), 2) / lp_norm(e.function, 2) for e in corpus]
        print(f"Q={phase} z={z_sign:+d}i  ratios {np.round(ratios, 9)}")
print("1/sqrt(2) =", 1 / math.sqrt(2))

# %%
# For ``Q = xy`` and ``z = i`` the kernel is ``(1 + i)/2`` times the cas kernel
# ``cos(xy) - sin(xy)`` of a reflected unitary Hartley transform.
grid = GridSpec(-6, 6, 512)
f = make_modulated_gaussian(grid, 0.8, 0.4, 1.5)
out = apply(f, TransformSpec("HQ", QuadraticPhase(0, 1, 0, 0, 0)))
x, y = grid.nodes()[:, None], grid.nodes()[None, :]
hartley = ((np.cos(x * y) - np.sin(x * y)) @ (f.values * grid.weights())) / math.sqrt(2 * math.pi)
print("max |H f - (1+i)/2 Hart f| :", np.max(np.abs(out.values - 0.5 * (1 + 1j) * hartley)))

# %%
# The largest singular value of the discretized kernel agrees.
g = GridSpec(-8, 8, 400)
km = build_kernel_matrix(TransformSpec("HQ", QuadraticPhase(1, 1, 1, 1, 1)), g, g)
print("sigma_max :", np.linalg.svd(km.symmetrized(), compute_uv=False)[0])

# %%
# The Hausdorff-Young inequality itself holds with room to spare.
spec = TransformSpec("HQ", QuadraticPhase(1, 1, 1, 1, 1))
for r in check_hausdorff_young(spec, corpus[:2], [1, 4 / 3, 2]):
    print(f"{r.corpus:12s} p={r.p:.4f} lhs {r.lhs:.6f} rhs {r.rhs_proof:.6f} {r.verdict}")
