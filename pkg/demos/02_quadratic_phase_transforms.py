"""
Quadratic-phase transforms
==========================

``T_lambda``, ``F1`` and ``F2`` all reduce to a Fourier evaluation after a
chirp premodulation. This script compares each fast path with direct
quadrature and checks the closed-form reductions.
"""

import math

import numpy as np

from quadhy.phases import QuadraticPhase
from quadhy.sampling import DEFAULT_GRID, GridSpec, Window, make_gaussian, make_modulated_gaussian
from quadhy.transforms import TransformSpec, apply

grid = GridSpec(-6, 6, 512)
f = make_modulated_gaussian(grid, 1.0, 0.3, 1.5)
w = Window.separable(0.0, 2.0, 0.0, 2.5, 1.0, 1.0)

specs = [
    TransformSpec("T_lambda", QuadraticPhase(0.5, 1.0, -0.3, 0.2, 0.1), w, 2.0),
    TransformSpec("F1", QuadraticPhase(0.0, 1.5, 0.4, 0.0, 0.0), w),
    TransformSpec("F2", QuadraticPhase(0.0, -1.0, 0.5, 0.0, 0.0), w),
    TransformSpec("F2", QuadraticPhase(0.3, -1.0, 0.5, 0.0, 0.0), w),
]

# %%
# Fast paths agree with quadrature at rounding level.
for spec in specs:
    fast = apply(f, spec, method="fast")
    quad = apply(f, spec, method="quadrature")
    err = np.max(np.abs(fast.values - quad.values)) / np.max(np.abs(quad.values))
    print(f"{spec.label():24s} phase {tuple(spec.phase.to_dict().values())}  rel err {err:.2e}")

# %%
# A nonzero ``a`` in ``F1`` makes the chirp depend on the target, so the
# request for a fast path falls back to quadrature and says so.
out = apply(f, TransformSpec("F1", QuadraticPhase(1.0, 1.0, 0.0, 0.0, 0.0), w), method="fast")
print("F1 with a != 0 fell back:", out.fell_back)

# %%
# With ``Q = xy`` and a window equal to one on the whole grid, ``T_1`` is
# ``sqrt(2 pi)`` times the unitary Fourier transform.
g = make_gaussian(DEFAULT_GRID, 1.0)
flat = Window.box2d(-17, 17, -17, 17)
out = apply(g, TransformSpec("T_lambda", QuadraticPhase(0, 1, 0, 0, 0), flat, 1.0))
want = math.sqrt(2 * math.pi) * np.exp(-out.nodes() ** 2 / 2)
print("T_1 vs sqrt(2 pi) e^{-x^2/2}:", np.max(np.abs(out.values - want)))
