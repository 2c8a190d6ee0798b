"""Phase polynomials used by the transform kernels.

Two families are supported: the general quadratic phase in two variables and
homogeneous polynomials without pure powers of either variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuadraticPhase",
    "HomogeneousPhase",
    "eval_quadratic",
    "eval_homogeneous",
    "parse_coefficients",
]


def parse_coefficients(text):
    """Parse a comma-separated list of reals, e.g. ``"1,-1,0,2,0"``."""
    try:
        values = [float(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"cannot parse coefficient list {text!r}") from exc
    if not values:
        raise ValueError("empty coefficient list")
    return values


@dataclass(frozen=True)
class QuadraticPhase:
    """Q(x, y) = a x^2 + b x y + c y^2 + d x + e y with b != 0."""

    a: float
    b: float
    c: float
    d: float
    e: float

    def __post_init__(self):
        for name in "abcde":
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"coefficient {name} must be finite")
            object.__setattr__(self, name, value)
        if self.b == 0.0:
            raise ValueError("QuadraticPhase requires b != 0")

    @classmethod
    def parse(cls, text):
        values = parse_coefficients(text)
        if len(values) != 5:
            raise ValueError(f"a quadratic phase needs 5 coefficients, got {len(values)}")
        return cls(*values)

    def __call__(self, x, y):
        return eval_quadratic(self, x, y)

    def with_b(self, b):
        return QuadraticPhase(self.a, b, self.c, self.d, self.e)

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "e": self.e}

    @classmethod
    def from_dict(cls, data):
        return cls(*(data[k] for k in "abcde"))


def eval_quadratic(q, x, y):
    """Evaluate ``q`` at ``(x, y)``; broadcasts over numpy arrays."""
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
    y = np.asarray(y, dtype=float) if not np.isscalar(y) else float(y)
    return (q.a * x + q.b * y + q.d) * x + (q.c * y + q.e) * y


@dataclass(frozen=True)
class HomogeneousPhase:
    """S(x, y) = sum_{k=1}^{n-1} alpha_{k-1} x^(n-k) y^k.

    ``coeffs`` holds ``alpha_0 .. alpha_{n-2}``; there is never a pure
    ``x^n`` or ``y^n`` term.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        n = int(self.degree)
        if n != self.degree or n < 2:
            raise ValueError("degree must be an integer >= 2")
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != n - 1:
            raise ValueError(f"degree {n} needs {n - 1} coefficients, got {len(coeffs)}")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        if not any(coeffs):
            raise ValueError("at least one coefficient must be nonzero")
        object.__setattr__(self, "degree", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x, y):
        return eval_homogeneous(self, x, y)

    def d_dy(self, x, y):
        """Partial derivative in ``y``."""
        n = self.degree
        acc = 0.0
        for k in range(n - 1, 0, -1):
            acc = acc * y + k * self.coeffs[k - 1] * x ** (n - k)
        return acc

    def d_dx(self, x, y):
        """Partial derivative in ``x``."""
        n = self.degree
        acc = 0.0
        for k in range(n - 1, 0, -1):
            exp = n - k
            acc = acc * y + exp * self.coeffs[k - 1] * x ** (exp - 1)
        return acc * y

    def stationary_extent(self, y_lo, y_hi):
        """Largest ``|x|`` for which ``dS/dy(x, .)`` vanishes somewhere in
        ``[y_lo, y_hi]``.

        Writing ``y = t x`` turns the condition into ``P(t) = 0`` with
        ``P(t) = sum k alpha_{k-1} t^(k-1)``; only nonzero real roots give
        stationary points away from ``x = 0``.
        """
        poly = [k * self.coeffs[k - 1] for k in range(self.degree - 1, 0, -1)]
        roots = np.roots(poly) if len(poly) > 1 else np.array([])
        real = [r.real for r in roots if abs(r.imag) < 1e-12 and abs(r.real) > 1e-12]
        if not real:
            return 0.0
        y_max = max(abs(y_lo), abs(y_hi))
        return y_max / min(abs(t) for t in real)

    def to_dict(self):
        return {"degree": self.degree, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["degree"]), tuple(data["coeffs"]))


def eval_homogeneous(s, x, y):
    """Evaluate ``s`` at ``(x, y)`` by Horner's rule in descending ``k``."""
    n = s.degree
    acc = 0.0
    for k in range(n - 1, 0, -1):
        acc = acc * y + s.coeffs[k - 1] * x ** (n - k)
    return acc * y
