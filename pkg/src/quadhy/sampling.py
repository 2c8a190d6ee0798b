"""Uniform grids, sampled functions, compactly supported windows and the
test-function corpus."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .phases import parse_coefficients

__all__ = [
    "GridSpec",
    "SampledFunction1D",
    "Window",
    "CorpusEntry",
    "DEFAULT_GRID",
    "bump_eval",
    "bump",
    "make_gaussian",
    "make_step",
    "make_bump",
    "make_modulated_gaussian",
    "chirp_premodulate",
    "sample_entry",
    "make_corpus",
    "default_corpus",
    "load_corpus",
    "DEFAULT_CORPUS_SPECS",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``lo + j*h``, ``j = 0..count-1``."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        lo, hi, count = float(self.lo), float(self.hi), int(self.count)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("grid endpoints must be finite")
        if not lo < hi:
            raise ValueError("grid needs lo < hi")
        if count != self.count or count < 2:
            raise ValueError("grid needs an integer count >= 2")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "count", count)

    @property
    def spacing(self):
        return (self.hi - self.lo) / (self.count - 1)

    def nodes(self):
        return self.lo + np.arange(self.count) * self.spacing

    def weights(self):
        """Trapezoid weights."""
        w = np.full(self.count, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return w

    def node(self, j):
        return self.lo + j * self.spacing

    @classmethod
    def parse(cls, text):
        lo, hi, count = parse_coefficients(text)
        return cls(lo, hi, int(count))

    def to_dict(self):
        return {"lo": self.lo, "hi": self.hi, "count": self.count}

    @classmethod
    def from_dict(cls, data):
        if isinstance(data, (list, tuple)):
            return cls(data[0], data[1], int(data[2]))
        return cls(data["lo"], data["hi"], int(data["count"]))


DEFAULT_GRID = GridSpec(-16.0, 16.0, 4096)


@dataclass(frozen=True, eq=False)
class SampledFunction1D:
    """Complex samples of a function on a uniform grid."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.count,):
            raise ValueError(
                f"expected {self.grid.count} samples, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def nodes(self):
        return self.grid.nodes()

    def with_values(self, values):
        return SampledFunction1D(self.grid, values)

    def __len__(self):
        return self.grid.count


# windows ---------------------------------------------------------------

_WINDOW_KINDS = ("bump1d", "separable2d", "box2d", "general")


def bump(t, center=0.0, radius=1.0, amplitude=1.0):
    """Vectorized mollifier ``amplitude * exp(1 - 1/(1 - u^2))`` on ``|u| < 1``."""
    u = (np.asarray(t, dtype=float) - center) / radius
    out = np.zeros(np.shape(u))
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    if np.ndim(t) == 0:
        return float(out)
    return out


def _box(t, center, radius, amplitude):
    t = np.asarray(t, dtype=float)
    out = np.where(np.abs(t - center) <= radius, amplitude, 0.0)
    if np.ndim(t) == 0:
        return float(out)
    return out


@dataclass(frozen=True, eq=False)
class Window:
    """Compactly supported weight psi(x, y) with support box M.

    ``bump1d`` is a cutoff chi(y) and ignores the x parameters.
    ``separable2d`` is the product of two bumps, ``box2d`` a constant on the
    box. ``general`` wraps an arbitrary callable; it is never separable and
    needs an explicit support box and sup-bound.
    """

    kind: str
    x_center: float = 0.0
    x_radius: float = 1.0
    y_center: float = 0.0
    y_radius: float = 1.0
    x_amplitude: float = 1.0
    y_amplitude: float = 1.0
    func: object = field(default=None, repr=False)
    box: tuple = None
    sup: float = None

    def __post_init__(self):
        if self.kind not in _WINDOW_KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.kind == "general":
            if self.func is None or self.box is None or self.sup is None:
                raise ValueError("general windows need func, box and sup")
            x0, x1, y0, y1 = (float(v) for v in self.box)
            if not (x0 < x1 and y0 < y1):
                raise ValueError("degenerate support box")
            object.__setattr__(self, "box", (x0, x1, y0, y1))
            return
        if self.x_radius <= 0 or self.y_radius <= 0:
            raise ValueError("window radii must be positive")
        if self.x_amplitude <= 0 or self.y_amplitude <= 0:
            raise ValueError("window amplitudes must be positive")

    # constructors
    @classmethod
    def bump1d(cls, center=0.0, radius=1.0, amplitude=1.0):
        return cls("bump1d", y_center=center, y_radius=radius, y_amplitude=amplitude)

    @classmethod
    def separable(cls, x_center=0.0, x_radius=1.0, y_center=0.0, y_radius=1.0,
                  x_amplitude=1.0, y_amplitude=1.0):
        return cls("separable2d", x_center, x_radius, y_center, y_radius,
                   x_amplitude, y_amplitude)

    @classmethod
    def box2d(cls, x0, x1, y0, y1, amplitude=1.0):
        return cls("box2d", 0.5 * (x0 + x1), 0.5 * (x1 - x0),
                   0.5 * (y0 + y1), 0.5 * (y1 - y0), amplitude, 1.0)

    @classmethod
    def general(cls, func, box, sup):
        return cls("general", func=func, box=tuple(box), sup=float(sup))

    def is_separable(self):
        return self.kind != "general"

    @property
    def support_box(self):
        """``(x0, x1, y0, y1)``; the x-extent of a 1-D cutoff is unbounded."""
        if self.kind == "general":
            return self.box
        y0, y1 = self.y_center - self.y_radius, self.y_center + self.y_radius
        if self.kind == "bump1d":
            return (-math.inf, math.inf, y0, y1)
        return (self.x_center - self.x_radius, self.x_center + self.x_radius, y0, y1)

    @property
    def sup_bound(self):
        """C1 = sup |psi|."""
        if self.kind == "general":
            return self.sup
        if self.kind == "bump1d":
            return self.y_amplitude
        return self.x_amplitude * self.y_amplitude

    @property
    def diameter(self):
        """Euclidean diameter R of the support box (y-extent only for 1-D)."""
        x0, x1, y0, y1 = self.support_box
        if self.kind == "bump1d":
            return y1 - y0
        return math.hypot(x1 - x0, y1 - y0)

    def x_factor(self, x):
        if self.kind == "bump1d":
            return np.ones(np.shape(x))
        if self.kind == "separable2d":
            return bump(x, self.x_center, self.x_radius, self.x_amplitude)
        if self.kind == "box2d":
            return _box(x, self.x_center, self.x_radius, self.x_amplitude)
        raise ValueError("general windows do not factor")

    def y_factor(self, y):
        if self.kind in ("bump1d", "separable2d"):
            return bump(y, self.y_center, self.y_radius, self.y_amplitude)
        if self.kind == "box2d":
            return _box(y, self.y_center, self.y_radius, self.y_amplitude)
        raise ValueError("general windows do not factor")

    def __call__(self, x, y):
        if self.kind == "general":
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            x0, x1, y0, y1 = self.box
            inside = (x >= x0) & (x <= x1) & (y >= y0) & (y <= y1)
            return np.where(inside, self.func(x, y), 0.0)
        return self.x_factor(x) * self.y_factor(y)

    def to_dict(self):
        if self.kind == "general":
            raise ValueError("general windows are not serializable")
        return {
            "kind": self.kind,
            "x_center": self.x_center,
            "x_radius": self.x_radius,
            "y_center": self.y_center,
            "y_radius": self.y_radius,
            "x_amplitude": self.x_amplitude,
            "y_amplitude": self.y_amplitude,
        }

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        kind = data.pop("kind")
        if kind == "general":
            raise ValueError("general windows are not serializable")
        return cls(kind, **{k: float(v) for k, v in data.items()})


def bump_eval(w, t):
    """Value of a 1-D bump window at ``t``."""
    if w.kind != "bump1d":
        raise ValueError("bump_eval needs a bump1d window")
    return bump(t, w.y_center, w.y_radius, w.y_amplitude)


# sampled functions -------------------------------------------------------

def _gaussian(x, sigma=1.0, center=0.0):
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return np.exp(-((x - center) ** 2) / (2.0 * sigma * sigma))


def _modulated_gaussian(x, sigma=1.0, center=0.0, omega=0.0):
    return _gaussian(x, sigma, center) * np.exp(1j * omega * x)


def _step(x, a, b):
    if not a < b:
        raise ValueError("step needs a < b")
    return ((x >= a) & (x <= b)).astype(float)


def _bump(x, center=0.0, radius=1.0, amplitude=1.0):
    return bump(x, center, radius, amplitude)


_ANALYTIC = {
    "gaussian": (_gaussian, ("sigma", "center")),
    "modulated_gaussian": (_modulated_gaussian, ("sigma", "center", "omega")),
    "step": (_step, ("a", "b")),
    "bump": (_bump, ("center", "radius", "amplitude")),
}


def make_gaussian(grid, sigma=1.0, center=0.0):
    """``exp(-(x - center)^2 / (2 sigma^2))``.

    ``sigma = 1/sqrt(2 pi)`` gives ``exp(-pi x^2)``.
    """
    return SampledFunction1D(grid, _gaussian(grid.nodes(), sigma, center))


def make_modulated_gaussian(grid, sigma=1.0, center=0.0, omega=0.0):
    return SampledFunction1D(grid, _modulated_gaussian(grid.nodes(), sigma, center, omega))


def make_step(grid, a, b):
    """Indicator of the closed interval ``[a, b]``."""
    if not (grid.lo < a and b < grid.hi):
        raise ValueError("step endpoints must lie inside the grid")
    return SampledFunction1D(grid, _step(grid.nodes(), a, b))


def make_bump(grid, center=0.0, radius=1.0, amplitude=1.0):
    return SampledFunction1D(grid, bump(grid.nodes(), center, radius, amplitude))


def chirp_premodulate(f, q, lam, sign=1):
    """Multiply by the unit-modulus chirp ``exp(i sign lam (c y^2 + e y))``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    y = f.nodes()
    return f.with_values(f.values * np.exp(1j * sign * lam * ((q.c * y + q.e) * y)))


# corpus ------------------------------------------------------------------

_MAKERS = {
    "gaussian": make_gaussian,
    "modulated_gaussian": make_modulated_gaussian,
    "step": make_step,
    "bump": make_bump,
}


def _check_params(kind, params):
    try:
        _, names = _ANALYTIC[kind]
    except KeyError:
        raise ValueError(f"unknown corpus kind {kind!r}") from None
    unknown = set(params) - set(names)
    if unknown:
        raise ValueError(f"unknown parameters for {kind}: {sorted(unknown)}")
    return {k: float(v) for k, v in params.items()}


def sample_entry(kind, params, grid):
    params = _check_params(kind, params)
    return _MAKERS[kind](grid, **params)


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    id: str
    function: SampledFunction1D
    description: str = ""
    kind: str = ""
    params: dict = field(default_factory=dict)

    def resample(self, grid):
        """The same analytic function on another grid."""
        return CorpusEntry(self.id, sample_entry(self.kind, self.params, grid),
                           self.description, self.kind, dict(self.params))

    def one_sided_limits(self, x):
        """``(f(x-0), f(x+0))`` from the analytic form."""
        p = self.params
        if self.kind == "step":
            a, b = p["a"], p["b"]
            left = 1.0 if a < x <= b else 0.0
            right = 1.0 if a <= x < b else 0.0
            return left, right
        if self.kind in _ANALYTIC:
            func, _ = _ANALYTIC[self.kind]
            v = complex(func(np.float64(x), **_check_params(self.kind, p)))
            return v, v
        raise ValueError("one-sided limits need a known corpus kind")

    def to_dict(self):
        return {"id": self.id, "kind": self.kind, "params": dict(self.params)}


DEFAULT_CORPUS_SPECS = (
    {"id": "gauss_s0.5", "kind": "gaussian", "params": {"sigma": 0.5, "center": 0.0}},
    {"id": "gauss_s1", "kind": "gaussian", "params": {"sigma": 1.0, "center": 0.0}},
    {"id": "gauss_s2", "kind": "gaussian", "params": {"sigma": 2.0, "center": 0.0}},
    {"id": "modgauss_w3", "kind": "modulated_gaussian",
     "params": {"sigma": 1.0, "center": 0.0, "omega": 3.0}},
    {"id": "bump_r2", "kind": "bump", "params": {"center": 0.0, "radius": 2.0, "amplitude": 1.0}},
)


def make_corpus(specs, grid=DEFAULT_GRID):
    entries = []
    seen = set()
    for spec in specs:
        cid = str(spec["id"])
        if cid in seen:
            raise ValueError(f"duplicate corpus id {cid!r}")
        seen.add(cid)
        params = dict(spec.get("params", {}))
        func = sample_entry(spec["kind"], params, grid)
        desc = spec.get("description") or f"{spec['kind']} " + ", ".join(
            f"{k}={v:g}" for k, v in params.items())
        entries.append(CorpusEntry(cid, func, desc, spec["kind"], params))
    return entries


def default_corpus(grid=DEFAULT_GRID):
    """Three Gaussians, a modulated Gaussian and a bump."""
    return make_corpus(DEFAULT_CORPUS_SPECS, grid)


def load_corpus(path, grid=DEFAULT_GRID):
    """Load ``[{id, kind, params}, ...]`` from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        specs = json.load(fh)
    if not isinstance(specs, list) or not specs:
        raise ValueError("corpus file must hold a nonempty JSON array")
    return make_corpus(specs, grid)
