"""Executable checks of the norm inequalities, identities and decay rates,
with structured reports that serialize to JSON and CSV.

Verdicts are ``pass``, ``fail``, ``untrusted`` (the discretization does not
resolve the kernel oscillation; never upgraded to pass) and ``skipped``.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.linalg import svds

from . import __version__
from .norms import (
    beckner_constant,
    bound_F,
    bound_F_statement,
    bound_fourier,
    bound_HQ,
    bound_oscillatory,
    bound_T_lambda,
    bound_T_lambda_statement,
    conjugate_exponent,
    lp_norm,
    operator_norm_2,
    PowerIterationError,
)
from .phases import HomogeneousPhase, QuadraticPhase
from .sampling import DEFAULT_GRID, GridSpec, Window, make_gaussian
from .transforms import (
    TransformSpec,
    apply,
    build_kernel_matrix,
    fourier_ordinary,
)

__all__ = [
    "InequalityReport",
    "UnitarityReport",
    "DecayReport",
    "LimitReport",
    "MinkowskiReport",
    "OracleReport",
    "BecknerReport",
    "CSV_COLUMNS",
    "family_bounds",
    "check_hausdorff_young",
    "check_unitarity_HQ",
    "check_T_lambda_L2_decay",
    "estimate_oscillatory_decay",
    "oscillatory_decay_grids",
    "check_dirichlet_limit",
    "check_minkowski",
    "check_oracle_equivalence",
    "random_oracle_specs",
    "check_beckner",
    "fit_slope",
    "reports_to_json",
    "reports_to_csv",
    "exit_status",
]

CSV_COLUMNS = ("transform", "corpus", "p", "p1", "lambda", "lhs",
               "rhs_proof", "rhs_statement", "slack", "verdict")

# default tolerances
ENDPOINT_TOL = 1e-12      # p = 1: discrete triangle inequality, exact up to rounding
IDENTITY_TOL = 1e-3       # continuum-exact identities at the default grid
OPERATOR_TOL = 0.05       # operator-norm bounds (discretization, window truncation)
POWER_ITER_CAP = 1000     # decay sweeps switch to Lanczos past this


def _verdict(ok, resolved=True):
    if not resolved:
        return "untrusted"
    return "pass" if ok else "fail"


@dataclass
class InequalityReport:
    transform: str
    corpus: str
    p: float
    p1: float
    lam: float
    lhs: float
    norm_f: float
    bound_proof: float
    bound_statement: float
    rhs_proof: float
    rhs_statement: float
    slack: float
    tolerance: float
    verdict: str
    bound_form: str = ""
    note: str = ""
    kind: str = field(default="inequality", init=False)

    @property
    def ratio(self):
        return self.lhs / self.norm_f if self.norm_f > 0 else 0.0

    def to_row(self):
        return (self.transform, self.corpus, self.p, self.p1, self.lam, self.lhs,
                self.rhs_proof, self.rhs_statement, self.slack, self.verdict)


@dataclass
class UnitarityReport:
    corpus: str
    b: float
    ratio: float
    deviation: float
    tolerance: float
    verdict: str
    note: str = ""
    kind: str = field(default="unitarity", init=False)

    def to_row(self):
        return (f"HQ(b={self.b:g})", self.corpus, 2.0, 2.0, None, self.ratio,
                1.0, 1.0, self.tolerance - self.deviation, self.verdict)


@dataclass
class DecayReport:
    transform: str
    phase: dict
    lambdas: list
    norms: list
    scaled: list
    slope: float
    target_slope: float
    max_scaled: float
    argmax: int
    criterion: str
    verdict: str
    bound: float = None
    untrusted: list = field(default_factory=list)
    grids: list = field(default_factory=list)
    kind: str = field(default="decay", init=False)

    def to_row(self):
        return (self.transform, "", None, 2.0, None, self.slope,
                self.target_slope, self.bound, None, self.verdict)


@dataclass
class LimitReport:
    corpus: str
    x: float
    lambdas: list
    approximants: list
    target: float
    errors: list
    resolved: list
    kind: str = field(default="limit", init=False)

    @property
    def verdict(self):
        return "pass" if all(self.resolved) else "untrusted"

    def to_row(self):
        return ("dirichlet", self.corpus, None, None, self.lambdas[-1],
                self.approximants[-1], self.target, None, self.errors[-1], self.verdict)


@dataclass
class MinkowskiReport:
    s: float
    lhs: float
    rhs: float
    tolerance: float
    verdict: str
    kind: str = field(default="minkowski", init=False)

    def to_row(self):
        return ("minkowski", "", self.s, None, None, self.lhs, self.rhs, None,
                self.rhs - self.lhs, self.verdict)


@dataclass
class OracleReport:
    transform: str
    spec: dict
    rel_error: float
    tolerance: float
    verdict: str
    kind: str = field(default="oracle", init=False)

    def to_row(self):
        return (self.transform, "", None, None, self.spec.get("lambda"), self.rel_error,
                self.tolerance, None, self.tolerance - self.rel_error, self.verdict)


@dataclass
class BecknerReport:
    p: float
    ratio: float
    constant: float
    rel_deviation: float
    tolerance: float
    verdict: str
    kind: str = field(default="beckner", init=False)

    def to_row(self):
        return ("beckner", "exp(-pi x^2)", self.p, conjugate_exponent(self.p), None,
                self.ratio, self.constant, None, self.tolerance - self.rel_deviation,
                self.verdict)


# Hausdorff-Young type inequalities --------------------------------------------

def family_bounds(spec, p):
    """``(proof_form, statement_form, form_label, note)`` for ``spec`` at ``p``.

    Only the proof form enters verdicts.
    """
    fam = spec.family
    if fam == "fourier":
        b = bound_fourier(p)
        return b, b, "sharp Beckner constant, unitary convention", ""
    if fam == "HQ":
        b = bound_HQ(spec.phase.b, p)
        return b, b, "(|b|/2pi)^(alpha/2)", ""
    c1 = spec.window.sup_bound
    if fam == "T_lambda":
        note = "" if p == 1.0 else "depends on the cited L2 estimate C1/sqrt(lambda)"
        return (bound_T_lambda(c1, spec.lam, p), bound_T_lambda_statement(c1, spec.lam, p),
                "C1^alpha (C1/sqrt(lambda))^(1-alpha)", note)
    if fam in ("F1", "F2"):
        r = spec.window.diameter
        return bound_F(c1, r, p), bound_F_statement(c1, r, p), "C1 R^(2-2/p)", ""
    x0, x1, y0, y1 = spec.window.support_box
    b = bound_oscillatory(c1, y1 - y0, p)
    form = "chi-cutoff" if spec.window.kind == "bump1d" else "proof-weight"
    return b, b, f"C1 |M_y|^(1/p1) [{form}]", ""


def _tolerance(spec, p, rhs, norm_f, rel_tol):
    if rel_tol is not None:
        return rel_tol * rhs
    if p == 1.0:
        return ENDPOINT_TOL * rhs
    if spec.family in ("HQ", "fourier"):
        return IDENTITY_TOL * norm_f
    return OPERATOR_TOL * rhs


def check_hausdorff_young(spec, corpus, p_values, targets=None, rel_tol=None,
                          method="auto", workers=1):
    """One report per (corpus entry, p), in corpus-major order.

    ``lhs`` is the L_p1 norm of the transformed sample, ``rhs`` the family's
    bound times ``||f||_p``. Default tolerances: ``1e-12 rhs`` at ``p = 1``,
    ``1e-3 ||f||_p`` for the HQ and Fourier families, ``5% rhs`` otherwise.
    """
    if not corpus:
        raise ValueError("corpus is empty")
    ps = [float(p) for p in p_values]
    for p in ps:
        if not 1.0 <= p <= 2.0:
            raise ValueError(f"p must lie in [1, 2], got {p}")

    def run(entry):
        out = apply(entry.function, spec, targets, method)
        reports = []
        for p in ps:
            p1 = conjugate_exponent(p)
            lhs = lp_norm(out, p1)
            nf = lp_norm(entry.function, p)
            proof, stmt, form, note = family_bounds(spec, p)
            rhs, rhs_s = proof * nf, stmt * nf
            tol = _tolerance(spec, p, rhs, nf, rel_tol)
            if not out.resolved:
                note = (note + "; " if note else "") + "under-resolved kernel oscillation"
            reports.append(InequalityReport(
                spec.label(), entry.id, p, p1, spec.lam, lhs, nf, proof, stmt, rhs, rhs_s,
                rhs - lhs, tol, _verdict(lhs <= rhs + tol, out.resolved), form, note))
        return reports

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run, corpus))
    else:
        chunks = [run(e) for e in corpus]
    return [r for chunk in chunks for r in chunk]


def check_unitarity_HQ(q, corpus, targets=None, tol=IDENTITY_TOL, z_sign=1):
    """Compare ``||H_Q f||_2`` with ``||f||_2`` for ``b > 0`` and ``b < 0``."""
    reports = []
    for b in sorted((abs(q.b), -abs(q.b)), reverse=True):
        spec = TransformSpec("HQ", q.with_b(b), z_sign=z_sign)
        for entry in corpus:
            nf = lp_norm(entry.function, 2)
            if nf == 0.0:
                reports.append(UnitarityReport(entry.id, b, 0.0, 0.0, tol, "skipped",
                                               "zero-norm input"))
                continue
            out = apply(entry.function, spec, targets)
            ratio = lp_norm(out, 2) / nf
            dev = abs(ratio - 1.0)
            reports.append(UnitarityReport(entry.id, b, ratio, dev, tol,
                                           _verdict(dev <= tol, out.resolved)))
    return reports


# operator-norm decay ------------------------------------------------------------

def fit_slope(lambdas, norms):
    """Least-squares slope of log(norm) against log(lambda)."""
    return float(np.polyfit(np.log(lambdas), np.log(norms), 1)[0])


def _check_lambdas(lambdas):
    lams = [float(v) for v in lambdas]
    if len(lams) < 4:
        raise ValueError("need at least 4 lambda values")
    if any(v <= 0 for v in lams) or any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError("lambdas must be positive and strictly increasing")
    return lams


def _count_for(length, h_max, oversample, minimum=33):
    return max(minimum, int(math.ceil(oversample * length / h_max)) + 1)


def _box_max(func, x0, x1, y0, y1, n=65):
    xs = np.linspace(x0, x1, n)[:, None]
    ys = np.linspace(y0, y1, n)[None, :]
    return float(np.max(np.abs(func(xs, ys))))


def _largest_singular(km):
    # clustered top singular values can stall power iteration; Lanczos is
    # robust there
    try:
        return operator_norm_2(km, max_iter=POWER_ITER_CAP), "power"
    except PowerIterationError:
        a = km.symmetrized()
        v0 = np.ones(a.shape[1], dtype=a.dtype)
        s = svds(a, k=1, tol=1e-12, v0=v0, return_singular_vectors=False)
        return float(s[0]), "lanczos"


def _decay_reduce(transform, phase, lams, norms, n, criterion, verdict_fn, bound=None,
                  untrusted=(), grids=()):
    scaled = [s * lam ** (1.0 / n) for s, lam in zip(norms, lams)]
    slope = fit_slope(lams, norms)
    k = int(np.argmax(scaled))
    rep = DecayReport(transform, phase, lams, norms, scaled, slope, -1.0 / n,
                      max(scaled), k, criterion, "", bound, list(untrusted), list(grids))
    rep.verdict = "untrusted" if untrusted else ("pass" if verdict_fn(rep) else "fail")
    return rep


def check_T_lambda_L2_decay(q, w, lambdas, oversample=2.0, bound_factor=1.0 + OPERATOR_TOL):
    """Largest singular values of the symmetrized T_lambda kernel matrices.

    Grids cover the window's support box with spacing fine enough for
    ``oversample`` times the minimum resolution in both variables. Passes
    when ``max_lambda ||T_lambda|| sqrt(lambda) <= bound_factor * C1``.
    """
    lams = _check_lambdas(lambdas)
    x0, x1, y0, y1 = w.support_box
    if not all(map(math.isfinite, (x0, x1))):
        raise ValueError("T_lambda decay needs a window with bounded x-support")
    c1 = w.sup_bound
    norms, untrusted, grids = [], [], []
    for lam in lams:
        rate_y = lam * _box_max(lambda x, y: q.b * x + 2 * q.c * y + q.e, x0, x1, y0, y1)
        rate_x = lam * _box_max(lambda x, y: 2 * q.a * x + q.b * y + q.d, x0, x1, y0, y1)
        sources = GridSpec(y0, y1, _count_for(y1 - y0, math.pi / (4 * rate_y), oversample))
        targets = GridSpec(x0, x1, _count_for(x1 - x0, math.pi / (4 * rate_x), oversample))
        km = build_kernel_matrix(TransformSpec("T_lambda", q, w, lam), sources, targets)
        if not km.resolved:
            untrusted.append(lam)
        sigma, how = _largest_singular(km)
        norms.append(sigma)
        grids.append({"sources": sources.to_dict(), "targets": targets.to_dict(),
                      "method": how})
    limit = bound_factor * c1
    return _decay_reduce(
        "T_lambda", q.to_dict(), lams, norms, 2,
        f"max ||T_lambda|| sqrt(lambda) <= {bound_factor:g} C1",
        lambda r: r.max_scaled <= limit, bound=limit, untrusted=untrusted, grids=grids)


def oscillatory_decay_grids(s, chi, lam, extent=4.0, oversample=1.0):
    """Source and target grids for the oscillatory operator at ``lam``.

    Sources cover the cutoff's support. Targets cover ``|x| <= X`` with
    ``X = x_stat + extent * lam^(-1/n)``, where ``x_stat`` bounds the points
    whose phase is stationary in ``y`` somewhere on the support; beyond
    ``X`` the output decays rapidly. A bounded x-support of a 2-D weight
    is used as is.
    """
    x0, x1, y0, y1 = chi.support_box
    if not (math.isfinite(x0) and math.isfinite(x1)):
        half = s.stationary_extent(y0, y1) + extent * lam ** (-1.0 / s.degree)
        x0, x1 = -half, half
    rate_y = lam * _box_max(s.d_dy, x0, x1, y0, y1)
    rate_x = lam * _box_max(s.d_dx, x0, x1, y0, y1)
    sources = GridSpec(y0, y1, _count_for(y1 - y0, math.pi / (4 * rate_y), oversample))
    targets = GridSpec(x0, x1, _count_for(x1 - x0, math.pi / (4 * rate_x), oversample))
    return sources, targets


def estimate_oscillatory_decay(s, chi, lambdas, extent=4.0, oversample=1.0):
    """Decay of ``||T_lambda||_{L2}`` for the polynomial-phase operator.

    Degree 2 passes when the fitted slope is within 0.05 of -1/2. Higher
    degrees pass when ``max ||T_lambda|| lambda^(1/n)`` is attained in the
    lower half of the lambda sweep.
    """
    lams = _check_lambdas(lambdas)
    n = s.degree
    norms, untrusted, grids = [], [], []
    for lam in lams:
        sources, targets = oscillatory_decay_grids(s, chi, lam, extent, oversample)
        km = build_kernel_matrix(TransformSpec("oscillatory", s, chi, lam), sources, targets)
        if not km.resolved:
            untrusted.append(lam)
        sigma, how = _largest_singular(km)
        norms.append(sigma)
        grids.append({"sources": sources.to_dict(), "targets": targets.to_dict(),
                      "method": how})
    if n == 2:
        crit = "|slope + 1/2| <= 0.05"
        ok = lambda r: abs(r.slope + 0.5) <= 0.05  # noqa: E731
    else:
        crit = "argmax of ||T_lambda|| lambda^(1/n) in lower half of sweep"
        ok = lambda r: r.argmax <= (len(r.lambdas) - 1) // 2  # noqa: E731
    return _decay_reduce("oscillatory", s.to_dict(), lams, norms, n, crit, ok,
                         untrusted=untrusted, grids=grids)


# Dirichlet kernel limit -------------------------------------------------------

def check_dirichlet_limit(entry, x, lambdas, grid=None):
    """(1/pi) integral f(t) sin(lam (x - t)) / (x - t) dt against the
    half-sum of one-sided limits at ``x``.

    ``grid`` resamples the entry's analytic form first. A lambda with
    ``lam h > pi/4`` is marked unresolved.
    """
    if grid is not None:
        entry = entry.resample(grid)
    f = entry.function
    g = f.grid
    if not g.lo < x < g.hi:
        raise ValueError("x must lie strictly inside the grid")
    left, right = entry.one_sided_limits(x)
    target = 0.5 * (left + right)
    target = complex(target)
    target = target.real if target.imag == 0.0 else target
    t = g.nodes()
    w = g.weights()
    d = x - t
    at_x = np.abs(d) <= 1e-12 * max(1.0, abs(x))
    d_safe = np.where(at_x, 1.0, d)
    approx, errors, resolved = [], [], []
    for lam in lambdas:
        lam = float(lam)
        kern = np.where(at_x, lam, np.sin(lam * d) / d_safe)
        val = np.sum(f.values * kern * w) / math.pi
        val = float(val.real) if np.all(f.values.imag == 0) else complex(val)
        approx.append(val)
        errors.append(float(abs(val - target)))
        resolved.append(lam * g.spacing <= math.pi / 4)
    return LimitReport(entry.id, float(x), [float(v) for v in lambdas], approx, target,
                       errors, resolved)


# Minkowski integral inequality ------------------------------------------------

def check_minkowski(table, w1, w2, s, rel_tol=1e-12):
    """[sum_2 |sum_1 F w1|^s w2]^(1/s) <= sum_1 (sum_2 |F|^s w2)^(1/s) w1.

    Axis 0 of ``table`` is the inner variable of the left side.
    """
    s = float(s)
    if s < 1.0:
        raise ValueError("s must be >= 1")
    f = np.asarray(table)
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    inner = np.abs(f.T @ w1)
    lhs = float(np.sum(inner**s * w2) ** (1.0 / s))
    rhs = float(np.sum(np.sum(np.abs(f) ** s * w2[None, :], axis=1) ** (1.0 / s) * w1))
    return MinkowskiReport(s, lhs, rhs, rel_tol, _verdict(lhs <= rhs + rel_tol * rhs))


# fast path vs quadrature ---------------------------------------------------------

def check_oracle_equivalence(spec, f, targets=None, tol=1e-8):
    """Relative max deviation of the fast path from direct quadrature."""
    fast = apply(f, spec, targets, "fast")
    if fast.fell_back:
        return OracleReport(spec.label(), spec.to_dict(), 0.0, tol, "skipped")
    quad = apply(f, spec, targets, "quadrature")
    scale = float(np.max(np.abs(quad.values)))
    if scale == 0.0:
        scale = max(float(np.max(np.abs(fast.values))), 1.0)
    err = float(np.max(np.abs(fast.values - quad.values))) / scale
    return OracleReport(spec.label(), spec.to_dict(), err, tol,
                        _verdict(err <= tol, fast.resolved and quad.resolved))


def random_oracle_specs(rng, count=20):
    """Random specs that all admit a fast path, cycling through the families.

    Parameters are kept small enough that a 512-node grid on [-6, 6]
    resolves every kernel.
    """
    u = rng.uniform
    sign = lambda: 1.0 if rng.random() < 0.5 else -1.0  # noqa: E731
    specs = []
    for k in range(count):
        fam = ("fourier", "T_lambda", "F1", "F2", "HQ", "oscillatory")[k % 6]
        win = Window.separable(u(-0.5, 0.5), u(1.0, 3.0), u(-0.5, 0.5), u(1.0, 3.0),
                               u(0.5, 2.0), u(0.5, 2.0))
        if fam == "fourier":
            specs.append(TransformSpec("fourier"))
        elif fam == "T_lambda":
            q = QuadraticPhase(u(-1, 1), sign() * u(0.2, 1), u(-1, 1), u(-1, 1), u(-1, 1))
            specs.append(TransformSpec("T_lambda", q, win, u(0.5, 2.0)))
        elif fam == "F1":
            q = QuadraticPhase(0.0, sign() * u(0.2, 2), u(-2, 2), 0.0, 0.0)
            specs.append(TransformSpec("F1", q, win))
        elif fam == "F2":
            a = 0.0 if k % 12 == 3 else u(-0.5, 0.5)
            q = QuadraticPhase(a, sign() * u(0.2, 2), u(-2, 2), 0.0, 0.0)
            specs.append(TransformSpec("F2", q, win))
        elif fam == "HQ":
            q = QuadraticPhase(u(-1, 1), sign() * u(0.2, 1), u(-1, 1), u(-1, 1), u(-1, 1))
            specs.append(TransformSpec("HQ", q, z_sign=int(sign())))
        else:
            chi = Window.bump1d(u(-0.5, 0.5), u(1.0, 3.0), u(0.5, 2.0))
            s = HomogeneousPhase(2, (sign() * u(0.2, 1.0),))
            specs.append(TransformSpec("oscillatory", s, chi, u(0.5, 2.0)))
    return specs


# sharp constant ---------------------------------------------------------------

def check_beckner(p, grid=DEFAULT_GRID, tol=2e-3):
    """Measured ``||f^||_p1 / ||f||_p`` for ``f = exp(-pi x^2)`` under the
    ``exp(-2 pi i x y)`` convention, compared with the sharp constant."""
    f = make_gaussian(grid, 1.0 / math.sqrt(2.0 * math.pi))
    p1 = conjugate_exponent(p)
    ratio = lp_norm(fourier_ordinary(f), p1) / lp_norm(f, p)
    const = beckner_constant(p)
    dev = abs(ratio - const) / const
    return BecknerReport(float(p), ratio, const, dev, tol, _verdict(dev <= tol))


# serialization -------------------------------------------------------------------

def _fmt_float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _dump(obj, indent, level):
    import json

    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, complex):
        return _dump({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{_dump(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _report_dict(rep):
    d = {"kind": rep.kind}
    for name in rep.__dataclass_fields__:
        if name != "kind":
            d[name] = getattr(rep, name)
    if hasattr(rep, "verdict"):
        d["verdict"] = rep.verdict
    return d


def reports_to_json(reports, meta=None):
    """Deterministic JSON with 17 significant digits for every float."""
    meta = dict(meta or {})
    meta.setdefault("version", f"v{__version__}")
    doc = {"meta": meta, "results": [_report_dict(r) for r in reports]}
    return _dump(doc, 2, 0) + "\n"


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        writer.writerow(["" if v is None else (_fmt_float(v).strip('"')
                                                if isinstance(v, float) else v)
                         for v in rep.to_row()])
    return buf.getvalue()


def exit_status(reports, allow_untrusted=False):
    """0 when every verdict passes, 1 otherwise; skipped reports are neutral."""
    for rep in reports:
        v = rep.verdict
        if v == "fail" or (v == "untrusted" and not allow_untrusted):
            return 1
    return 0
