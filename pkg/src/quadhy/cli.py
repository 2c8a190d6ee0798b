"""Command-line driver for the verification harness.

::

    quadhy [global flags] verify {hy,unitarity,tdecay,oscdecay,dirichlet,minkowski,oracle}
    quadhy constants --p P [--c1 ... --lam ... --R ... --b ... --n ...]
    quadhy corpus list

A run can also be described by a JSON config (``--config``); flags override
config fields, which override built-in defaults. Exit status is 0 when
every verdict passes, 1 on any failure (or untrusted result without
``--allow-untrusted``) and 2 on usage or config errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .norms import (
    _check_hy_range,
    beckner_constant,
    bound_F,
    bound_F_statement,
    bound_fourier,
    bound_HQ,
    bound_oscillatory,
    bound_T_lambda,
    bound_T_lambda_statement,
)
from .phases import HomogeneousPhase, QuadraticPhase, parse_coefficients
from .sampling import DEFAULT_GRID, GridSpec, Window, default_corpus, load_corpus, make_corpus
from .transforms import TransformSpec
from . import verify as V

SUITES = ("hy", "unitarity", "tdecay", "oscdecay", "dirichlet", "minkowski", "oracle")
CONFIG_KEYS = {"grid", "corpus", "suites", "format", "out", "allow_untrusted", *SUITES}
THREADS_ENV = "QUADHY_THREADS"

_FAMILY_ALIASES = {
    "fourier": "fourier", "t_lambda": "T_lambda", "tlambda": "T_lambda", "t": "T_lambda",
    "f1": "F1", "f2": "F2", "hq": "HQ", "oscillatory": "oscillatory", "osc": "oscillatory",
}

DEFAULTS = {
    "hy": {"family": "HQ", "p": [1.0, 4.0 / 3.0, 2.0], "phase": "1,1,1,1,1", "lambda": 16.0,
           "degree": 2, "coeffs": "1", "z_sign": 1, "window": None},
    "unitarity": {"phase": "1,1,1,1,1", "z_sign": 1},
    "tdecay": {"phase": "0,1,0,0,0", "lambdas": [1.0, 4.0, 16.0, 64.0], "window": None},
    "oscdecay": {"degree": 2, "coeffs": "1", "lambdas": [16.0, 64.0, 256.0, 1024.0, 4096.0],
                 "window": None},
    "dirichlet": {"entry": {"id": "step", "kind": "step", "params": {"a": -1.0, "b": 1.0}},
                  "x": 1.0, "lambdas": [50.0, 100.0, 200.0], "grid": "-8,8,65537"},
    "minkowski": {"tables": 100, "s": [1.0, 1.5, 2.0, 3.0], "shape": [24, 32], "seed": 0},
    "oracle": {"count": 20, "seed": 0, "grid": "-6,6,512"},
}


class ConfigError(ValueError):
    pass


# parsing helpers ------------------------------------------------------------------

def _floats(value):
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    if isinstance(value, (int, float)):
        return [float(value)]
    return parse_coefficients(value)


def _grid(value):
    if value is None or isinstance(value, GridSpec):
        return value
    if isinstance(value, str):
        return GridSpec.parse(value)
    return GridSpec.from_dict(value)


def _family(name):
    try:
        return _FAMILY_ALIASES[str(name).lower()]
    except KeyError:
        raise ConfigError(f"unknown family {name!r}") from None


def _window(data, default):
    return Window.from_dict(data) if data else default


def load_config(path):
    """Read and schema-check a JSON run config."""
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for suite in SUITES:
        block = cfg.get(suite, {})
        if not isinstance(block, dict):
            raise ConfigError(f"config block {suite!r} must be an object")
        extra = set(block) - set(DEFAULTS[suite])
        if extra:
            raise ConfigError(f"unknown keys in {suite!r}: {sorted(extra)}")
    suites = cfg.get("suites", [])
    if isinstance(suites, str) or not all(s in SUITES for s in suites):
        raise ConfigError(f"suites must be a list drawn from {SUITES}")
    if "corpus" in cfg and not os.path.isfile(cfg["corpus"]):
        raise ConfigError(f"corpus file {cfg['corpus']!r} does not exist")
    return cfg


def _suite_params(suite, cfg, args):
    params = dict(DEFAULTS[suite])
    params.update(cfg.get(suite, {}))
    for key in params:
        flag = getattr(args, key.replace("lambda", "lam"), None)
        if flag is not None:
            params[key] = flag
    return params


# suites ------------------------------------------------------------------------------

def _run_hy(prm, grid, corpus, workers):
    fam = _family(prm["family"])
    lam = float(prm["lambda"])
    if fam in ("fourier",):
        spec = TransformSpec("fourier")
    elif fam == "HQ":
        spec = TransformSpec("HQ", QuadraticPhase.parse(prm["phase"]), z_sign=int(prm["z_sign"]))
    elif fam == "oscillatory":
        s = HomogeneousPhase(int(prm["degree"]), tuple(_floats(prm["coeffs"])))
        spec = TransformSpec("oscillatory", s, _window(prm["window"], Window.bump1d(0.0, 1.0)), lam)
    else:
        q = QuadraticPhase.parse(prm["phase"])
        w = _window(prm["window"], Window.separable(0.0, 1.0, 0.0, 1.0))
        spec = TransformSpec(fam, q, w, lam if fam == "T_lambda" else None)
    return V.check_hausdorff_young(spec, corpus, _floats(prm["p"]), workers=workers)


def _run_unitarity(prm, grid, corpus, workers):
    return V.check_unitarity_HQ(QuadraticPhase.parse(prm["phase"]), corpus,
                                z_sign=int(prm["z_sign"]))


def _run_tdecay(prm, grid, corpus, workers):
    w = _window(prm["window"], Window.separable(0.0, 1.0, 0.0, 1.0))
    return [V.check_T_lambda_L2_decay(QuadraticPhase.parse(prm["phase"]), w,
                                      _floats(prm["lambdas"]))]


def _run_oscdecay(prm, grid, corpus, workers):
    s = HomogeneousPhase(int(prm["degree"]), tuple(_floats(prm["coeffs"])))
    chi = _window(prm["window"], Window.bump1d(0.0, 1.0))
    return [V.estimate_oscillatory_decay(s, chi, _floats(prm["lambdas"]))]


def _run_dirichlet(prm, grid, corpus, workers):
    entry = make_corpus([prm["entry"]], grid or _grid(prm["grid"]))[0]
    return [V.check_dirichlet_limit(entry, float(prm["x"]), _floats(prm["lambdas"]))]


def _run_minkowski(prm, grid, corpus, workers):
    rng = np.random.default_rng(int(prm["seed"]))
    n1, n2 = (int(v) for v in prm["shape"])
    out = []
    for _ in range(int(prm["tables"])):
        table = rng.standard_normal((n1, n2)) + 1j * rng.standard_normal((n1, n2))
        w1 = rng.uniform(0.1, 1.0, n1)
        w2 = rng.uniform(0.1, 1.0, n2)
        out.extend(V.check_minkowski(table, w1, w2, s) for s in _floats(prm["s"]))
    return out


def _run_oracle(prm, grid, corpus, workers):
    from .sampling import make_gaussian

    g = grid or _grid(prm["grid"])
    f = make_gaussian(g, 1.0)
    specs = V.random_oracle_specs(np.random.default_rng(int(prm["seed"])), int(prm["count"]))
    return [V.check_oracle_equivalence(s, f) for s in specs]


_RUNNERS = {
    "hy": _run_hy, "unitarity": _run_unitarity, "tdecay": _run_tdecay,
    "oscdecay": _run_oscdecay, "dirichlet": _run_dirichlet, "minkowski": _run_minkowski,
    "oracle": _run_oracle,
}


def _workers():
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _write_atomic(path, text):
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".quadhy-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_verify(args):
    cfg = load_config(args.config) if args.config else {}
    suites = [args.suite] if args.suite else list(cfg.get("suites", []))
    if not suites:
        raise ConfigError("no suite selected")
    grid = _grid(args.grid if args.grid is not None else cfg.get("grid"))
    fmt = args.format or cfg.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"unknown format {fmt!r}")
    out = args.out or cfg.get("out")
    allow = args.allow_untrusted or bool(cfg.get("allow_untrusted", False))
    corpus_grid = grid or DEFAULT_GRID
    corpus_path = args.corpus or cfg.get("corpus")
    corpus = load_corpus(corpus_path, corpus_grid) if corpus_path else default_corpus(corpus_grid)
    workers = _workers()

    reports, used = [], {}
    for suite in suites:
        prm = _suite_params(suite, cfg, args)
        used[suite] = prm
        reports.extend(_RUNNERS[suite](prm, grid, corpus, workers))

    meta = {"grid": corpus_grid.to_dict(), "spec": used, "version": f"v{__version__}"}
    if corpus_path:
        meta["corpus"] = corpus_path
    text = V.reports_to_json(reports, meta) if fmt == "json" else V.reports_to_csv(reports)
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)
    return V.exit_status(reports, allow)


# constants -------------------------------------------------------------------------------

def constants_table(p, c1=1.0, lam=1.0, diameter=1.0, b=1.0, n=1, support=2.0):
    """Rows ``(name, proof form, statement form)`` of every bound constant."""
    p = _check_hy_range(p)
    return [
        ("C1 T_lambda", bound_T_lambda(c1, lam, p), bound_T_lambda_statement(c1, lam, p)),
        ("C2 F1/F2", bound_F(c1, diameter, p), bound_F_statement(c1, diameter, p)),
        ("C3 HQ", bound_HQ(b, p), bound_HQ(b, p)),
        ("oscillatory", bound_oscillatory(c1, support, p), bound_oscillatory(c1, support, p)),
        ("beckner", beckner_constant(p, n), beckner_constant(p, n)),
        ("fourier unitary", bound_fourier(p), bound_fourier(p)),
    ]


def run_constants(args):
    rows = constants_table(args.p, args.c1, args.lam, args.R, args.b, args.n, args.support)
    width = max(len(r[0]) for r in rows)
    print(f"{'constant':<{width}}  {'proof':>16}  {'statement':>16}")
    for name, proof, stmt in rows:
        print(f"{name:<{width}}  {proof:>16.9g}  {stmt:>16.9g}")
    return 0


def run_corpus_list(args):
    grid = _grid(args.grid) or DEFAULT_GRID
    corpus = load_corpus(args.corpus, grid) if args.corpus else default_corpus(grid)
    for e in corpus:
        print(f"{e.id}\t{e.kind}\t{e.description}")
    return 0


# argument parser ----------------------------------------------------------------------

def _global_flags(suppress):
    d = argparse.SUPPRESS if suppress else None
    par = argparse.ArgumentParser(add_help=False)
    par.add_argument("--grid", default=d, help="lo,hi,count")
    par.add_argument("--out", default=d, help="report path (default: stdout)")
    par.add_argument("--format", default=d, choices=("json", "csv"))
    par.add_argument("--allow-untrusted", action="store_true",
                     default=argparse.SUPPRESS if suppress else False)
    par.add_argument("--config", default=d, help="JSON run config")
    par.add_argument("--corpus", default=d, help="JSON corpus file")
    return par


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadhy", parents=[_global_flags(False)],
        description="Numerical checks of Hausdorff-Young type inequalities "
                    "for quadratic-phase transforms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    local = _global_flags(True)

    ver = sub.add_parser("verify", parents=[local], help="run verification suites")
    ver.add_argument("suite", nargs="?", choices=SUITES)
    ver.add_argument("--family")
    ver.add_argument("--p", type=_floats)
    ver.add_argument("--phase", help="a,b,c,d,e")
    ver.add_argument("--lambda", dest="lam", type=float)
    ver.add_argument("--lambdas", type=_floats)
    ver.add_argument("--degree", type=int)
    ver.add_argument("--coeffs")
    ver.add_argument("--z-sign", type=int, choices=(1, -1))
    ver.add_argument("--x", type=float, help="evaluation point (dirichlet)")
    ver.add_argument("--s", type=_floats, help="Minkowski exponents")
    ver.add_argument("--seed", type=int)
    ver.set_defaults(func=run_verify)

    con = sub.add_parser("constants", parents=[local], help="print bound constants")
    con.add_argument("--p", type=float, required=True)
    con.add_argument("--c1", type=float, default=1.0)
    con.add_argument("--lam", "--lambda", type=float, default=1.0)
    con.add_argument("--R", "--diameter", type=float, default=1.0)
    con.add_argument("--b", type=float, default=1.0)
    con.add_argument("--n", type=int, default=1)
    con.add_argument("--support", type=float, default=2.0, help="|M_y| for the oscillatory bound")
    con.set_defaults(func=run_constants)

    cor = sub.add_parser("corpus", parents=[local], help="inspect the test corpus")
    cor.add_argument("action", choices=("list",))
    cor.set_defaults(func=run_corpus_list)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"quadhy: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
