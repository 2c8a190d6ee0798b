"""L_p norms on grids, the bound constants of the Hausdorff-Young type
inequalities, and spectral-norm estimation for discretized operators."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "check_exponent",
    "conjugate_exponent",
    "alpha_from_p",
    "InterpolationParams",
    "lp_norm",
    "riesz_thorin_constant",
    "bound_T_lambda",
    "bound_T_lambda_statement",
    "bound_F",
    "bound_F_statement",
    "bound_HQ",
    "bound_oscillatory",
    "bound_fourier",
    "beckner_constant",
    "PowerIterationError",
    "power_iteration",
    "operator_norm_2",
]


def check_exponent(p):
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"exponent must satisfy p >= 1, got {p}")
    return p


def _check_hy_range(p):
    p = check_exponent(p)
    if p > 2.0:
        raise ValueError(f"exponent must lie in [1, 2], got {p}")
    return p


def conjugate_exponent(p):
    """p1 with 1/p + 1/p1 = 1; 1 and inf are conjugate."""
    p = check_exponent(p)
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def alpha_from_p(p):
    """Interpolation parameter alpha = 2/p - 1 between L1->Linf and L2->L2."""
    return 2.0 / _check_hy_range(p) - 1.0


@dataclass(frozen=True)
class InterpolationParams:
    alpha: float
    m0: float
    m1: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")

    @classmethod
    def from_p(cls, p, m0, m1):
        return cls(alpha_from_p(p), m0, m1)


def lp_norm(f, p):
    """Trapezoid L_p norm of a sampled function; p = inf is the node maximum."""
    p = check_exponent(p)
    mod = np.abs(f.values)
    if math.isinf(p):
        return float(np.max(mod)) if mod.size else 0.0
    w = f.grid.weights()
    if p == 1.0:
        return float(np.sum(mod * w))
    return float(np.sum(mod**p * w) ** (1.0 / p))


def riesz_thorin_constant(params):
    """M0^alpha * M1^(1 - alpha)."""
    a = params.alpha
    if a == 1.0:
        return float(params.m0)
    if a == 0.0:
        return float(params.m1)
    return float(params.m0**a * params.m1 ** (1.0 - a))


def bound_T_lambda(c1, lam, p):
    """C1^alpha (C1 / sqrt(lam))^(1 - alpha): interpolation between the
    L1 -> Linf bound C1 and the L2 bound C1 / sqrt(lam)."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return riesz_thorin_constant(InterpolationParams.from_p(p, c1, c1 / math.sqrt(lam)))


def bound_T_lambda_statement(c1, lam, p):
    """Statement-form variant C1^(2/p - 1) (C1 / lam)^(2 (1/p - 1)); reported, never used for verdicts."""
    p = _check_hy_range(p)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return float(c1 ** (2.0 / p - 1.0) * (c1 / lam) ** (2.0 * (1.0 / p - 1.0)))


def bound_F(c1, diameter, p):
    """C1^alpha (C1 R)^(1 - alpha) = C1 R^(2 - 2/p)."""
    p = _check_hy_range(p)
    if not diameter > 0:
        raise ValueError("diameter must be positive")
    return float(c1 * diameter ** (2.0 - 2.0 / p))


def bound_F_statement(c1, diameter, p):
    """Statement-form variant C1 R^(2 (1/p - 1)); reported, never used for verdicts."""
    p = _check_hy_range(p)
    if not diameter > 0:
        raise ValueError("diameter must be positive")
    return float(c1 * diameter ** (2.0 * (1.0 / p - 1.0)))


def bound_HQ(b, p):
    """(|b| / 2 pi)^(alpha / 2)."""
    if b == 0:
        raise ValueError("b must be nonzero")
    return float((abs(b) / (2.0 * math.pi)) ** (0.5 * alpha_from_p(p)))


def bound_oscillatory(c1, support_length, p):
    """C1 |M_y|^(1/p1) for the polynomial-phase operator."""
    p1 = conjugate_exponent(p)
    if math.isinf(p1):
        return float(c1)
    return float(c1 * support_length ** (1.0 / p1))


def beckner_constant(p, n=1):
    """(p^(1/p) / p1^(1/p1))^(n/2); p1^(1/p1) -> 1 as p1 -> inf."""
    p = _check_hy_range(p)
    if int(n) != n or n < 1:
        raise ValueError("dimension must be a positive integer")
    p1 = conjugate_exponent(p)
    num = p ** (1.0 / p)
    den = 1.0 if math.isinf(p1) else p1 ** (1.0 / p1)
    return float((num / den) ** (0.5 * n))


def bound_fourier(p):
    """Sharp L_p -> L_p1 norm of the unitary transform (2 pi)^(-1/2) e^{ixy}.

    Rescaling frequencies by 2 pi turns it into the e^{-2 pi i x y} transform,
    which multiplies the Beckner constant by (2 pi)^(1/p1 - 1/2).
    """
    p1 = conjugate_exponent(p)
    inv_p1 = 0.0 if math.isinf(p1) else 1.0 / p1
    return beckner_constant(p) * (2.0 * math.pi) ** (inv_p1 - 0.5)


class PowerIterationError(RuntimeError):
    """Power iteration hit the iteration cap before converging."""

    def __init__(self, msg, estimate, residual, vector):
        super().__init__(msg)
        self.estimate = estimate
        self.residual = residual
        self.vector = vector


def power_iteration(a, tol=1e-10, max_iter=10000, seed=0):
    """Largest singular value of ``a`` by power iteration on ``a^H a``.

    Stops when the relative change of the estimate drops below ``tol``.
    Returns ``(sigma, v, iterations)``; the start vector is drawn from a
    fixed seed so repeated calls are bit-identical.
    """
    a = np.asarray(a)
    n = a.shape[1]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    sigma = 0.0
    rel = math.inf
    for it in range(1, max_iter + 1):
        av = a @ v
        new = float(np.linalg.norm(av))
        if new == 0.0:
            return 0.0, v, it
        rel = abs(new - sigma) / new
        sigma = new
        if rel < tol:
            return sigma, v, it
        u = a.conj().T @ av
        v = u / np.linalg.norm(u)
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} steps (rel. change {rel:.3e})",
        sigma, rel, v)


def operator_norm_2(k, tol=1e-10, max_iter=10000):
    """Spectral norm of a kernel matrix.

    A ``KernelMatrix`` is first symmetrized with sqrt quadrature weights on
    both sides so the value approximates the continuum L2 operator norm; a
    plain array is used as is.
    """
    a = k.symmetrized() if hasattr(k, "symmetrized") else np.asarray(k)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    sigma, _, _ = power_iteration(a, tol=tol, max_iter=max_iter)
    return sigma
