import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadhy.norms import (
    InterpolationParams,
    PowerIterationError,
    alpha_from_p,
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
    power_iteration,
    riesz_thorin_constant,
)
from quadhy.sampling import DEFAULT_GRID, GridSpec, SampledFunction1D, Window, default_corpus, make_gaussian
from quadhy.phases import QuadraticPhase
from quadhy.transforms import TransformSpec, build_kernel_matrix, fourier_unitary

# mpmath, 30 dps
TWO_M_QUARTER = 0.84089641525371454
INV_SQRT_2PI = 0.39894228040143268
BECKNER_4_3 = 0.93668707437524814


@pytest.mark.parametrize("p, want", [(2, 2), (1, math.inf), (4 / 3, 4), (math.inf, 1)])
def test_conjugate_examples(p, want):
    assert conjugate_exponent(p) == pytest.approx(want, rel=1e-15)


def test_conjugate_rejects():
    for bad in (0.5, -1, math.nan):
        with pytest.raises(ValueError):
            conjugate_exponent(bad)


# p - 1 a power of two keeps both divisions exact; e.g. p = 4 is off by one ulp
@pytest.mark.parametrize("p", [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 9.0, 17.0, math.inf])
def test_conjugate_involution_exact(p):
    assert conjugate_exponent(conjugate_exponent(p)) == p


@given(st.floats(1.0, 2.0, exclude_min=True))
def test_conjugate_involution_hy_range(p):
    assert abs(conjugate_exponent(conjugate_exponent(p)) - p) <= 1e-15 * p


@given(st.floats(1.01, 100.0))
def test_conjugate_involution_wide(p):
    assert abs(conjugate_exponent(conjugate_exponent(p)) - p) <= 1e-13 * p


def test_lp_norm_examples():
    g = GridSpec(0, 1, 11)
    assert lp_norm(SampledFunction1D(g, np.ones(11)), 2) == pytest.approx(1.0, rel=1e-15)
    f = make_gaussian(DEFAULT_GRID, 1 / math.sqrt(2 * math.pi))
    assert abs(lp_norm(f, 2) - TWO_M_QUARTER) <= 1e-6
    v = np.zeros(11, dtype=complex)
    v[4] = 3.5j
    assert lp_norm(SampledFunction1D(g, v), math.inf) == 3.5


def test_lp_norm_grid_refinement():
    for e in default_corpus()[:3]:
        fine = e.resample(GridSpec(-16, 16, 2 * 4096 - 1))
        for p in (1, 4 / 3, 2, 4):
            assert abs(lp_norm(fine.function, p) - lp_norm(e.function, p)) <= 1e-6


@pytest.mark.parametrize("m0, m1, p, want", [(3, 5, 1, 3), (3, 5, 2, 5), (4, 1, 4 / 3, 2)])
def test_riesz_thorin_examples(m0, m1, p, want):
    assert riesz_thorin_constant(InterpolationParams.from_p(p, m0, m1)) == pytest.approx(want)


@given(st.floats(0.1, 10), st.floats(0.1, 10))
def test_riesz_thorin_log_affine(m0, m1):
    alphas = [0, 0.25, 0.5, 0.75, 1]
    logs = [math.log(riesz_thorin_constant(InterpolationParams(a, m0, m1))) for a in alphas]
    want = [a * math.log(m0) + (1 - a) * math.log(m1) for a in alphas]
    np.testing.assert_allclose(logs, want, atol=1e-13)


def test_interpolation_params():
    assert alpha_from_p(1) == 1 and alpha_from_p(2) == 0 and alpha_from_p(4 / 3) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        InterpolationParams(1.5, 1, 1)
    with pytest.raises(ValueError):
        alpha_from_p(3)


def test_bound_T_lambda():
    assert bound_T_lambda(2.5, 9.0, 1) == 2.5
    assert bound_T_lambda(2.5, 9.0, 2) == pytest.approx(2.5 / 3)
    assert bound_T_lambda(2, 4, 4 / 3) == pytest.approx(math.sqrt(2))
    for lam in (0.5, 1, 16, 1e4):
        assert bound_T_lambda(1.7, lam, 2) * math.sqrt(lam) == pytest.approx(1.7, rel=1e-14)
    # statement form: C1^(2/p - 1) (C1 / lam)^(2 (1/p - 1))
    assert bound_T_lambda_statement(2, 4, 4 / 3) == pytest.approx(2**0.5 * 0.5**-0.5)
    with pytest.raises(ValueError):
        bound_T_lambda(1, 0, 1.5)
    with pytest.raises(ValueError):
        bound_T_lambda(1, 1, 2.5)


def test_bound_F():
    assert bound_F(1.5, 4, 1) == 1.5
    assert bound_F(1.5, 4, 2) == pytest.approx(6.0)
    assert bound_F(1, 4, 4 / 3) == pytest.approx(2.0)
    assert bound_F_statement(1, 4, 4 / 3) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        bound_F(1, 0, 1.5)


def test_bound_HQ():
    assert bound_HQ(1.0, 2) == 1.0
    assert bound_HQ(2 * math.pi, 1) == pytest.approx(1.0, rel=1e-15)
    assert bound_HQ(1.0, 1) == pytest.approx(INV_SQRT_2PI, rel=1e-15)
    assert bound_HQ(-3.0, 1.5) == bound_HQ(3.0, 1.5)
    with pytest.raises(ValueError):
        bound_HQ(0.0, 1.5)
    with pytest.raises(ValueError):
        bound_HQ(1.0, 0.9)


def test_bound_oscillatory():
    assert bound_oscillatory(2.0, 3.0, 1) == 2.0
    assert bound_oscillatory(2.0, 4.0, 2) == pytest.approx(4.0)


def test_beckner():
    assert beckner_constant(2, 1) == 1.0 and beckner_constant(2, 3) == 1.0
    assert beckner_constant(1, 1) == 1.0 and beckner_constant(1, 4) == 1.0
    assert beckner_constant(4 / 3, 1) == pytest.approx(BECKNER_4_3, rel=1e-15)
    assert beckner_constant(4 / 3, 2) == pytest.approx(BECKNER_4_3**2, rel=1e-15)
    with pytest.raises(ValueError):
        beckner_constant(2.5)
    with pytest.raises(ValueError):
        beckner_constant(1.5, 0)


@pytest.mark.parametrize("p", [1.1, 4 / 3, 1.6, 1.9])
def test_fourier_bound_attained_by_gaussian(p):
    # Gaussians are extremal, so the unitary-convention constant is the ratio
    f = make_gaussian(DEFAULT_GRID, 1.0)
    ratio = lp_norm(fourier_unitary(f), conjugate_exponent(p)) / lp_norm(f, p)
    assert ratio == pytest.approx(bound_fourier(p), rel=1e-8)


def test_power_iteration_examples():
    assert power_iteration(np.eye(5))[0] == pytest.approx(1.0, rel=1e-12)
    assert power_iteration(np.diag([1.0, 2.0, 3.0]))[0] == pytest.approx(3.0, rel=1e-9)
    assert power_iteration(np.zeros((3, 3)))[0] == 0.0


@pytest.mark.parametrize("shape", [(64, 64), (256, 256), (100, 40)])
def test_power_iteration_vs_svd(shape):
    rng = np.random.default_rng(shape[0])
    a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    want = np.linalg.svd(a, compute_uv=False)[0]
    assert operator_norm_2(a) == pytest.approx(want, rel=1e-6)


def test_power_iteration_deterministic():
    a = np.random.default_rng(1).standard_normal((50, 50))
    assert power_iteration(a)[0] == power_iteration(a)[0]


def test_power_iteration_reports_nonconvergence():
    a = np.random.default_rng(2).standard_normal((40, 40))
    with pytest.raises(PowerIterationError) as info:
        power_iteration(a, max_iter=2)
    assert info.value.estimate > 0 and info.value.residual > 1e-10
    assert info.value.vector.shape == (40,)


def test_operator_norm_rejects_nonfinite():
    with pytest.raises(ValueError):
        operator_norm_2(np.array([[1.0, np.nan]]))


def test_operator_norm_of_kernel_matrix_uses_weights():
    g = GridSpec(-3, 3, 301)
    w = Window.separable(0, 3, 0, 3)
    km = build_kernel_matrix(TransformSpec("T_lambda", QuadraticPhase(0, 1, 0, 0, 0), w, 1.0), g, g)
    want = np.linalg.svd(km.symmetrized(), compute_uv=False)[0]
    assert operator_norm_2(km) == pytest.approx(want, rel=1e-6)
