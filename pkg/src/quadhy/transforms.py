"""Quadratic-phase integral operators.

Every family has a direct trapezoid-quadrature path. Where the phase lets
the operator factor as chirp x Fourier x chirp, a fast path evaluates the
Fourier sum at the required frequencies exactly: by FFT when the targets are
the canonical dual grid of the sources, by chirp-z otherwise (the targets
are uniform, so the frequencies are too), and by direct summation when the
frequency map is nonlinear.

The Fourier convention is the unitary one,

    (F g)(w) = (2 pi)^(-1/2) * integral exp(i w y) g(y) dy.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from .phases import HomogeneousPhase, QuadraticPhase
from .sampling import GridSpec, SampledFunction1D, Window

__all__ = [
    "FAMILIES",
    "TransformSpec",
    "TransformResult",
    "KernelMatrix",
    "kernel",
    "phase_rate",
    "resolution_check",
    "dual_grid",
    "exp_sum",
    "exp_sum_direct",
    "fourier_unitary",
    "fourier_ordinary",
    "apply_T_lambda",
    "apply_F1",
    "apply_F2",
    "apply_HQ",
    "apply_oscillatory",
    "apply",
    "build_kernel_matrix",
    "MAX_KERNEL_ENTRIES",
]

FAMILIES = ("fourier", "T_lambda", "F1", "F2", "HQ", "oscillatory")
MAX_KERNEL_ENTRIES = 10**8
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_ROW_BLOCK = 512


@dataclass(frozen=True, eq=False)
class TransformSpec:
    """Which operator to apply and with what parameters.

    ``lam`` is used by ``T_lambda`` and ``oscillatory``; ``z_sign`` selects
    ``z = i * z_sign`` for ``HQ``.
    """

    family: str
    phase: object = None
    window: Window = None
    lam: float = None
    z_sign: int = 1

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; expected one of {FAMILIES}")
        if fam == "fourier":
            if self.phase is not None or self.window is not None:
                raise ValueError("the fourier family takes no phase or window")
            return
        if fam == "oscillatory":
            if not isinstance(self.phase, HomogeneousPhase):
                raise ValueError("oscillatory needs a HomogeneousPhase")
        elif not isinstance(self.phase, QuadraticPhase):
            raise ValueError(f"{fam} needs a QuadraticPhase")
        if fam in ("T_lambda", "oscillatory"):
            if self.lam is None or not float(self.lam) > 0:
                raise ValueError(f"{fam} requires lambda > 0")
            object.__setattr__(self, "lam", float(self.lam))
        if fam == "HQ":
            if self.window is not None:
                raise ValueError("HQ carries no window")
            if self.z_sign not in (1, -1):
                raise ValueError("z_sign must be +1 or -1")
        elif self.window is None:
            raise ValueError(f"{fam} needs a window")

    @property
    def z(self):
        return 1j * self.z_sign

    def label(self):
        if self.lam is not None:
            return f"{self.family}(lambda={self.lam:g})"
        return self.family

    def to_dict(self):
        return {
            "family": self.family,
            "phase": None if self.phase is None else self.phase.to_dict(),
            "window": None if self.window is None else self.window.to_dict(),
            "lambda": self.lam,
            "z_sign": self.z_sign,
        }

    @classmethod
    def from_dict(cls, data):
        fam = data["family"]
        phase = data.get("phase")
        if phase is not None:
            phase = (HomogeneousPhase.from_dict(phase) if fam == "oscillatory"
                     else QuadraticPhase.from_dict(phase))
        window = data.get("window")
        if window is not None:
            window = Window.from_dict(window)
        return cls(fam, phase, window, data.get("lambda"), int(data.get("z_sign", 1)))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class TransformResult(SampledFunction1D):
    """Transform output plus how it was computed.

    ``fell_back`` is set when a fast path was requested but the spec does not
    admit one; ``resolved`` is False when the source spacing does not resolve
    the kernel's oscillation (the values are then untrusted).
    """

    path: str = "quadrature"
    fell_back: bool = False
    resolved: bool = True


# kernels -----------------------------------------------------------------

def kernel(spec, x, y):
    """Kernel values K(x, y) including window and prefactor; broadcasts."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fam = spec.family
    if fam == "fourier":
        return _INV_SQRT_2PI * np.exp(1j * x * y)
    q = spec.phase
    if fam == "HQ":
        pref = math.sqrt(abs(q.b) / (2.0 * math.pi))
        return pref * 0.5 * (np.exp(-1j * q(x, y)) + spec.z * np.exp(-1j * q(-x, y)))
    if fam == "T_lambda":
        ph = np.exp(1j * spec.lam * q(x, y))
    elif fam == "F1":
        ph = np.exp(-1j * x * ((q.a * y + q.b) * y + q.c))
    elif fam == "F2":
        ph = np.exp(-1j * ((q.a * x + q.b) * x + q.c) * y)
    else:
        ph = np.exp(1j * spec.lam * q(x, y))
    return ph * spec.window(x, y)


def phase_rate(spec, x, y):
    """|d(phase)/dy| of the kernel, elementwise over broadcast ``x, y``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fam = spec.family
    q = spec.phase
    if fam == "fourier":
        return np.abs(x) + 0.0 * y
    if fam == "T_lambda":
        return spec.lam * np.abs(q.b * x + 2.0 * q.c * y + q.e)
    if fam == "F1":
        return np.abs(x * (2.0 * q.a * y + q.b))
    if fam == "F2":
        return np.abs((q.a * x + q.b) * x + q.c) + 0.0 * y
    if fam == "HQ":
        return np.maximum(np.abs(q.b * x + 2.0 * q.c * y + q.e),
                          np.abs(-q.b * x + 2.0 * q.c * y + q.e))
    return spec.lam * np.abs(q.d_dy(x, y))


def _active_ranges(spec, sources, targets):
    """Nodes of ``targets`` and ``sources`` where the window can be nonzero."""
    x = targets.nodes()
    y = sources.nodes()
    if spec.window is not None:
        x0, x1, y0, y1 = spec.window.support_box
        x = x[(x >= x0) & (x <= x1)]
        y = y[(y >= y0) & (y <= y1)]
    return x, y


def resolution_check(spec, sources, targets, samples_per_radian=4.0):
    """Return ``(ok, max_rate, h_max)``.

    ``h_max = pi / (samples_per_radian * max_rate)`` is the largest source
    spacing that keeps the kernel phase step below ``pi/4`` with the default
    setting.
    """
    x, y = _active_ranges(spec, sources, targets)
    if x.size == 0 or y.size == 0:
        return True, 0.0, math.inf
    ys = np.linspace(y[0], y[-1], min(y.size, 257))
    rate = 0.0
    for start in range(0, x.size, 1024):
        block = phase_rate(spec, x[start:start + 1024, None], ys[None, :])
        rate = max(rate, float(np.max(block)))
    if rate == 0.0:
        return True, 0.0, math.inf
    h_max = math.pi / (samples_per_radian * rate)
    return sources.spacing <= h_max, rate, h_max


# exponential sums ----------------------------------------------------------

def dual_grid(grid):
    """Canonical FFT dual grid of ``grid``: ``N`` frequencies spaced 2 pi/(N h)."""
    n = grid.count
    step = 2.0 * math.pi / (n * grid.spacing)
    lo = -(n // 2) * step
    return GridSpec(lo, lo + (n - 1) * step, n)


def _on_dual_grid(grid, targets, scale, shift):
    if shift != 0.0 or scale != 1.0 or targets.count != grid.count:
        return False
    dual = dual_grid(grid)
    return (math.isclose(targets.spacing, dual.spacing, rel_tol=1e-13)
            and math.isclose(targets.lo, dual.lo, rel_tol=1e-13))


def exp_sum_direct(g, grid, omega):
    """``sum_j g_j exp(i omega_k y_j)`` by direct summation, ascending ``j``."""
    y = grid.nodes()
    omega = np.asarray(omega, dtype=float)
    out = np.zeros(omega.shape, dtype=complex)
    if not np.any(g):
        return out
    for start in range(0, omega.size, _ROW_BLOCK):
        w = omega[start:start + _ROW_BLOCK]
        out[start:start + _ROW_BLOCK] = np.exp(1j * w[:, None] * y[None, :]) @ g
    return out


def exp_sum(g, grid, targets, scale=1.0, shift=0.0):
    """``sum_j g_j exp(i omega_k y_j)`` at ``omega_k = scale * x_k + shift``.

    ``x_k`` are the nodes of ``targets`` so the frequencies are uniform and
    chirp-z evaluates the sum exactly in O((N + M) log(N + M)).
    """
    g = np.asarray(g, dtype=complex)
    m = targets.count
    if not np.any(g):
        return np.zeros(m, dtype=complex)
    y0, h = grid.lo, grid.spacing
    omega = scale * targets.nodes() + shift
    if _on_dual_grid(grid, targets, scale, shift):
        n = grid.count
        j = np.arange(n)
        c = g * np.exp(-2j * math.pi * j * (n // 2) / n)
        return n * np.fft.ifft(c) * np.exp(1j * omega * y0)
    w0 = scale * targets.lo + shift
    step = scale * targets.spacing
    vals = czt(g, m=m, w=np.exp(1j * step * h), a=np.exp(-1j * w0 * h))
    return vals * np.exp(1j * omega * y0)


# transforms ----------------------------------------------------------------

def _quadrature(spec, f, targets):
    x = targets.nodes()
    y = f.nodes()
    gw = f.values * f.grid.weights()
    out = np.zeros(targets.count, dtype=complex)
    rows = np.arange(targets.count)
    cols = np.flatnonzero(gw)
    if spec.window is not None:
        x0, x1, y0, y1 = spec.window.support_box
        rows = rows[(x >= x0) & (x <= x1)]
        cols = cols[(y[cols] >= y0) & (y[cols] <= y1)]
    if cols.size == 0:
        return out
    yc, gc = y[cols], gw[cols]
    for start in range(0, rows.size, _ROW_BLOCK):
        r = rows[start:start + _ROW_BLOCK]
        out[r] = kernel(spec, x[r, None], yc[None, :]) @ gc
    return out


def _finish(values, targets, spec, f, path, fell_back):
    ok, _, _ = resolution_check(spec, f.grid, targets)
    return TransformResult(targets, values, path=path, fell_back=fell_back, resolved=ok)


def _dispatch(spec, f, targets, method, fast_ok, fast):
    if method not in ("auto", "fast", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if targets is None:
        targets = f.grid
    if method != "quadrature" and fast_ok:
        return _finish(fast(targets), targets, spec, f, "fast", False)
    fell_back = method == "fast"
    return _finish(_quadrature(spec, f, targets), targets, spec, f, "quadrature", fell_back)


def _check_family(spec, family):
    if spec.family != family:
        raise ValueError(f"expected a {family} spec, got {spec.family}")


def fourier_unitary(f, targets=None, method="fast"):
    """(2 pi)^(-1/2) sum_j exp(i x y_j) f(y_j) w_j at every target ``x``."""
    if targets is not None and not isinstance(targets, GridSpec):
        raise TypeError("targets must be a GridSpec")
    spec = TransformSpec("fourier")

    def fast(t):
        return _INV_SQRT_2PI * exp_sum(f.values * f.grid.weights(), f.grid, t)

    return _dispatch(spec, f, targets, method, True, fast)


def fourier_ordinary(f, targets=None):
    """``sum_j exp(-2 pi i xi y_j) f(y_j) w_j``: no prefactor, 2 pi in the
    exponent. Under this convention ``exp(-pi x^2)`` is its own transform."""
    targets = f.grid if targets is None else targets
    vals = exp_sum(f.values * f.grid.weights(), f.grid, targets, scale=-2.0 * math.pi)
    return SampledFunction1D(targets, vals)


def apply_T_lambda(f, spec, targets=None, method="auto"):
    """integral exp(i lam Q(x, y)) psi(x, y) f(y) dy.

    The fast path writes the operator as
    ``exp(i lam (a x^2 + d x)) psi1(x) * G(b lam x)`` where ``G`` is the
    exponential sum of the premodulated ``exp(i lam (c y^2 + e y)) psi2 f``.
    """
    _check_family(spec, "T_lambda")
    q, lam, win = spec.phase, spec.lam, spec.window

    def fast(t):
        y = f.nodes()
        g = f.values * np.exp(1j * lam * (q.c * y + q.e) * y) * win.y_factor(y)
        x = t.nodes()
        G = exp_sum(g * f.grid.weights(), f.grid, t, scale=q.b * lam)
        return np.exp(1j * lam * (q.a * x + q.d) * x) * win.x_factor(x) * G

    return _dispatch(spec, f, targets, method, win.is_separable(), fast)


def apply_F1(f, spec, targets=None, method="auto"):
    """integral exp(-i x (a y^2 + b y + c)) psi(x, y) f(y) dy.

    The chirp ``exp(-i a x y^2)`` depends on the target, so a fast path only
    exists for ``a = 0``.
    """
    _check_family(spec, "F1")
    q, win = spec.phase, spec.window

    def fast(t):
        y = f.nodes()
        g = f.values * win.y_factor(y) * f.grid.weights()
        x = t.nodes()
        return np.exp(-1j * q.c * x) * win.x_factor(x) * exp_sum(g, f.grid, t, scale=-q.b)

    return _dispatch(spec, f, targets, method, win.is_separable() and q.a == 0.0, fast)


def apply_F2(f, spec, targets=None, method="auto"):
    """integral exp(-i (a x^2 + b x + c) y) psi(x, y) f(y) dy.

    A Fourier evaluation at the warped frequency ``-(a x^2 + b x + c)``;
    uniform (chirp-z) when ``a = 0``, direct summation otherwise.
    """
    _check_family(spec, "F2")
    q, win = spec.phase, spec.window

    def fast(t):
        y = f.nodes()
        g = f.values * win.y_factor(y) * f.grid.weights()
        x = t.nodes()
        if q.a == 0.0:
            G = exp_sum(g, f.grid, t, scale=-q.b, shift=-q.c)
        else:
            G = exp_sum_direct(g, f.grid, -((q.a * x + q.b) * x + q.c))
        return win.x_factor(x) * G

    return _dispatch(spec, f, targets, method, win.is_separable(), fast)


def apply_HQ(f, spec, targets=None, method="auto"):
    """Quadratic Hartley operator

        sqrt(|b| / 2 pi) integral [exp(-i Q(x, y)) + z exp(-i Q(-x, y))] / 2 f(y) dy.

    Fast path: with ``g1 = exp(-i (c y^2 + e y)) f`` and ``G`` its exponential
    sum,

        (sqrt(|b|) / 2) (2 pi)^(-1/2) [exp(-i (a x^2 + d x)) G(-b x)
                                        + z exp(-i (a x^2 - d x)) G(b x)].
    """
    _check_family(spec, "HQ")
    q = spec.phase

    def fast(t):
        y = f.nodes()
        g1 = f.values * np.exp(-1j * (q.c * y + q.e) * y) * f.grid.weights()
        x = t.nodes()
        g_minus = exp_sum(g1, f.grid, t, scale=-q.b)
        g_plus = exp_sum(g1, f.grid, t, scale=q.b)
        pref = 0.5 * math.sqrt(abs(q.b)) * _INV_SQRT_2PI
        return pref * (np.exp(-1j * (q.a * x + q.d) * x) * g_minus
                       + spec.z * np.exp(-1j * (q.a * x - q.d) * x) * g_plus)

    return _dispatch(spec, f, targets, method, True, fast)


def apply_oscillatory(phi, spec, targets=None, method="auto"):
    """integral exp(i lam S(x, y)) chi(y) phi(y) dy.

    A 2-D window is used as the weight psi(x, y) instead of chi(y). The
    result carries ``resolved=False`` when the source spacing exceeds
    ``pi / (4 lam max |dS/dy|)`` over the active box.
    """
    _check_family(spec, "oscillatory")
    s, lam, win = spec.phase, spec.lam, spec.window

    def fast(t):
        y = phi.nodes()
        g = phi.values * win.y_factor(y) * phi.grid.weights()
        G = exp_sum(g, phi.grid, t, scale=lam * s.coeffs[0])
        return win.x_factor(t.nodes()) * G

    fast_ok = s.degree == 2 and win.is_separable()
    return _dispatch(spec, phi, targets, method, fast_ok, fast)


_APPLY = {
    "T_lambda": apply_T_lambda,
    "F1": apply_F1,
    "F2": apply_F2,
    "HQ": apply_HQ,
    "oscillatory": apply_oscillatory,
}


def apply(f, spec, targets=None, method="auto"):
    """Apply whichever family ``spec`` names."""
    if spec.family == "fourier":
        return fourier_unitary(f, targets, "fast" if method == "auto" else method)
    return _APPLY[spec.family](f, spec, targets, method)


# kernel matrices -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Discretized operator: ``kernel[i, j] = K(x_i, y_j)``.

    ``entries`` folds the source trapezoid weights in, so ``entries @ f``
    reproduces the quadrature path. ``symmetrized()`` also scales rows by
    ``sqrt(w_x)`` and columns by ``sqrt(w_y)`` so that its spectral norm
    approximates the continuum L2 operator norm.
    """

    sources: GridSpec
    targets: GridSpec
    kernel: np.ndarray
    resolved: bool = True

    @property
    def shape(self):
        return self.kernel.shape

    @property
    def entries(self):
        return self.kernel * self.sources.weights()[None, :]

    def symmetrized(self):
        wx = np.sqrt(self.targets.weights())
        wy = np.sqrt(self.sources.weights())
        return wx[:, None] * self.kernel * wy[None, :]

    def apply(self, f):
        return self.entries @ np.asarray(getattr(f, "values", f))


def build_kernel_matrix(spec, sources, targets):
    """Dense kernel of ``spec`` on ``targets x sources``.

    Refuses more than ``MAX_KERNEL_ENTRIES`` entries. Under-resolved grids are
    flagged through ``resolved`` rather than rejected.
    """
    n = sources.count * targets.count
    if n > MAX_KERNEL_ENTRIES:
        raise ValueError(f"kernel matrix would have {n} entries (limit {MAX_KERNEL_ENTRIES})")
    x = targets.nodes()
    y = sources.nodes()
    k = np.empty((targets.count, sources.count), dtype=complex)
    for start in range(0, targets.count, _ROW_BLOCK):
        k[start:start + _ROW_BLOCK] = kernel(spec, x[start:start + _ROW_BLOCK, None], y[None, :])
    ok, _, _ = resolution_check(spec, sources, targets)
    return KernelMatrix(sources, targets, k, ok)
