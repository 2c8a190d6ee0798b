"""
Discrete Fourier transforms and the sharp constant
==================================================

The unitary transform ``(2 pi)^(-1/2) integral exp(i x y) f(y) dy`` is
evaluated on a uniform grid by the trapezoid rule. Chirp-z makes the sum
exact at any uniform set of frequencies, and the FFT handles the canonical
dual grid.
"""

import math

import numpy as np

from quadhy.norms import beckner_constant, bound_fourier, conjugate_exponent, lp_norm
from quadhy.sampling import DEFAULT_GRID, make_gaussian, make_modulated_gaussian
from quadhy.transforms import fourier_ordinary, fourier_unitary

# %%
# The unit Gaussian is a fixed point of the unitary convention.
f = make_gaussian(DEFAULT_GRID, 1.0)
F = fourier_unitary(f)
print("max |F f - f|          :", np.max(np.abs(F.values - f.values)))

# %%
# A modulation shifts the spectrum.
g = make_modulated_gaussian(DEFAULT_GRID, 1.0, 0.0, 3.0)
G = fourier_unitary(g)
print("max |F g - shifted|    :", np.max(np.abs(G.values - np.exp(-(G.nodes() + 3) ** 2 / 2))))

# %%
# Fast path against direct summation.
Q = fourier_unitary(g, method="quadrature")
print("fast vs quadrature     :", np.max(np.abs(G.values - Q.values)))

# %%
# With ``exp(-2 pi i x y)`` and no prefactor, ``exp(-pi x^2)`` attains the
# sharp Hausdorff-Young constant.
b = make_gaussian(DEFAULT_GRID, 1.0 / math.sqrt(2.0 * math.pi))
for p in (1.1, 4 / 3, 1.5, 1.9):
    p1 = conjugate_exponent(p)
    ratio = lp_norm(fourier_ordinary(b), p1) / lp_norm(b, p)
    print(f"p = {p:.4f}  ratio {ratio:.9f}  constant {beckner_constant(p):.9f}")

# %%
# The same constant rescaled for the unitary convention.
for p in (1.1, 4 / 3, 1.5, 1.9):
    p1 = conjugate_exponent(p)
    ratio = lp_norm(fourier_unitary(f), p1) / lp_norm(f, p)
    print(f"p = {p:.4f}  unitary ratio {ratio:.9f}  bound {bound_fourier(p):.9f}")
