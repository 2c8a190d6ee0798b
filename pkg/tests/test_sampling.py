import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadhy.norms import lp_norm
from quadhy.phases import QuadraticPhase
from quadhy.sampling import (
    DEFAULT_GRID,
    GridSpec,
    SampledFunction1D,
    Window,
    bump_eval,
    chirp_premodulate,
    default_corpus,
    load_corpus,
    make_corpus,
    make_gaussian,
    make_step,
)

# exp(-1/3), exp(-1/2), exp(-pi) to 17 digits (mpmath, 30 dps)
EXP_M_THIRD = 0.71653131057378925
EXP_M_HALF = 0.60653065971263342
EXP_M_PI = 0.043213918263772250


def test_grid_invariants():
    g = GridSpec(-1.0, 3.0, 5)
    assert g.spacing == 1.0
    np.testing.assert_array_equal(g.nodes(), [-1, 0, 1, 2, 3])
    np.testing.assert_array_equal(g.weights(), [0.5, 1, 1, 1, 0.5])
    for bad in [(1, 0, 5), (0, 1, 1), (0, math.inf, 4)]:
        with pytest.raises(ValueError):
            GridSpec(*bad)
    assert GridSpec.parse("-16,16,4096") == DEFAULT_GRID
    assert GridSpec.from_dict(DEFAULT_GRID.to_dict()) == DEFAULT_GRID
    assert GridSpec.from_dict([-16, 16, 4096]) == DEFAULT_GRID


def test_nodes_are_single_multiply_add():
    g = DEFAULT_GRID
    x = g.nodes()
    h = (g.hi - g.lo) / (g.count - 1)
    for j in (0, 1, 1000, 4095):
        assert x[j] == g.lo + j * h == g.node(j)


def test_sampled_function_validation():
    g = GridSpec(0, 1, 3)
    with pytest.raises(ValueError):
        SampledFunction1D(g, [1, 2])
    with pytest.raises(ValueError):
        SampledFunction1D(g, [1, np.nan, 2])
    f = SampledFunction1D(g, [1, 2, 3])
    assert f.values.dtype == complex and len(f) == 3
    with pytest.raises(ValueError):
        f.values[0] = 5


@pytest.mark.parametrize("t, want", [(0.0, 1.0), (1.5, 0.0), (0.5, EXP_M_THIRD)])
def test_bump_examples(t, want):
    assert bump_eval(Window.bump1d(0, 1, 1), t) == pytest.approx(want, rel=1e-15, abs=0)


def test_bump_eval_needs_1d():
    with pytest.raises(ValueError):
        bump_eval(Window.separable(), 0.0)


def test_gaussian_examples():
    g = GridSpec(-4, 4, 9)
    f = make_gaussian(g, 1.0, 0.0)
    assert f.values[4] == 1.0
    assert f.values[5].real == pytest.approx(EXP_M_HALF, rel=1e-15)
    b = make_gaussian(g, 1.0 / math.sqrt(2 * math.pi))
    assert b.values[5].real == pytest.approx(EXP_M_PI, rel=1e-14)


def test_step_examples():
    g = GridSpec(-4, 4, 9)
    f = make_step(g, -1, 1)
    assert f.values[4] == 1 and f.values[6] == 0 and f.values[5] == 1 and f.values[3] == 1
    with pytest.raises(ValueError):
        make_step(g, -5, 1)


def test_chirp_examples():
    g = GridSpec(-2, 2, 5)
    one = SampledFunction1D(g, np.ones(5))
    out = chirp_premodulate(one, QuadraticPhase(3, 1, 0, 2, 0), 7.0)
    np.testing.assert_array_equal(out.values, np.ones(5))
    out = chirp_premodulate(one, QuadraticPhase(0, 1, 1, 0, 0), math.pi)
    assert abs(out.values[3] - (-1.0)) < 1e-15
    with pytest.raises(ValueError):
        chirp_premodulate(one, QuadraticPhase(0, 1, 1, 0, 0), 1.0, sign=2)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 50), st.sampled_from([1, -1]),
       st.floats(1.0, 2.0), st.integers(0, 2**32 - 1))
def test_chirp_preserves_modulus(c, e, lam, sign, p, seed):
    rng = np.random.default_rng(seed)
    g = GridSpec(-3, 3, 64)
    f = SampledFunction1D(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
    out = chirp_premodulate(f, QuadraticPhase(0, 1, c, 0, e), lam, sign)
    np.testing.assert_allclose(np.abs(out.values), np.abs(f.values), rtol=1e-15)
    assert lp_norm(out, p) == pytest.approx(lp_norm(f, p), rel=1e-14)


@pytest.mark.parametrize("w", [
    Window.bump1d(0.5, 1.5, 2.0),
    Window.separable(0.2, 1.0, -0.3, 2.0, 1.5, 0.5),
    Window.box2d(-1, 2, 0, 1, 3.0),
])
def test_window_support_and_sup(w):
    rng = np.random.default_rng(0)
    x0, x1, y0, y1 = w.support_box
    y_out = np.concatenate([rng.uniform(y1, y1 + 5, 50), rng.uniform(y0 - 5, y0, 50)])
    y_out = y_out[(y_out > y1) | (y_out < y0)]
    x_in = 0.5 * (x0 + x1) if math.isfinite(x0) else 0.0
    assert np.all(w(x_in, y_out) == 0.0)
    if math.isfinite(x0):
        x_out = np.concatenate([rng.uniform(x1, x1 + 5, 50), rng.uniform(x0 - 5, x0, 50)])
        x_out = x_out[(x_out > x1) | (x_out < x0)]
        assert np.all(w(x_out, 0.5 * (y0 + y1)) == 0.0)
        xs = np.linspace(x0, x1, 201)
    else:
        xs = np.array([0.0])
    ys = np.linspace(y0, y1, 201)
    peak = np.max(np.abs(w(xs[:, None], ys[None, :])))
    assert peak <= w.sup_bound
    assert peak >= 0.999 * w.sup_bound


def test_window_geometry():
    w = Window.separable(0, 1.5, 0, 2.0)
    assert w.diameter == pytest.approx(math.hypot(3.0, 4.0))
    assert Window.bump1d(0, 1).diameter == 2.0
    assert Window.bump1d(0, 1).support_box[:2] == (-math.inf, math.inf)
    for k in (Window.bump1d(1, 2, 3), w, Window.box2d(0, 1, 2, 4, 5)):
        assert Window.from_dict(k.to_dict()).to_dict() == k.to_dict()
    gen = Window.general(lambda x, y: np.cos(x * y), (-1, 1, -1, 1), 1.0)
    assert not gen.is_separable()
    assert gen(2.0, 0.0) == 0.0 and gen(0.0, 0.0) == 1.0
    with pytest.raises(ValueError):
        gen.to_dict()
    with pytest.raises(ValueError):
        Window.separable(0, -1)


def test_default_corpus():
    corpus = default_corpus()
    ids = [e.id for e in corpus]
    assert len(ids) == 5 and len(set(ids)) == 5
    for e in corpus:
        assert e.function.grid == DEFAULT_GRID
        # truncation at the grid edge is negligible
        assert abs(e.function.values[0]) < 1e-13


def test_make_corpus_rejects_duplicates_and_unknown():
    spec = {"id": "a", "kind": "gaussian", "params": {"sigma": 1}}
    with pytest.raises(ValueError, match="duplicate"):
        make_corpus([spec, spec])
    with pytest.raises(ValueError):
        make_corpus([{"id": "b", "kind": "sawtooth", "params": {}}])
    with pytest.raises(ValueError):
        make_corpus([{"id": "c", "kind": "gaussian", "params": {"width": 1}}])


def test_load_corpus(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps([
        {"id": "s", "kind": "step", "params": {"a": -1, "b": 1}},
        {"id": "m", "kind": "modulated_gaussian", "params": {"sigma": 1, "omega": 2}},
    ]))
    corpus = load_corpus(str(path), GridSpec(-4, 4, 81))
    assert [e.id for e in corpus] == ["s", "m"]
    assert corpus[0].to_dict()["kind"] == "step"


def test_one_sided_limits():
    g = GridSpec(-4, 4, 81)
    step = make_corpus([{"id": "s", "kind": "step", "params": {"a": -1, "b": 1}}], g)[0]
    assert step.one_sided_limits(1.0) == (1.0, 0.0)
    assert step.one_sided_limits(-1.0) == (0.0, 1.0)
    assert step.one_sided_limits(0.0) == (1.0, 1.0)
    gauss = default_corpus(g)[1]
    left, right = gauss.one_sided_limits(1.0)
    assert left == right == pytest.approx(EXP_M_HALF, rel=1e-15)


def test_resample():
    e = default_corpus()[0]
    g = GridSpec(-4, 4, 33)
    r = e.resample(g)
    assert r.id == e.id and r.function.grid == g
