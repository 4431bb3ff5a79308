import math

import numpy as np
import pytest

from clifford_fourier.algebra import gp_arrays
from clifford_fourier.kernel import ClosedEven, Dim2, OddIntegral3, Series
from clifford_fourier.quadrature import fullspace_rule, sphere_rule
from clifford_fourier.special import bessel_j
from clifford_fourier.transform import (
    BasisIndex,
    CliffordFunction,
    QuadratureTransform,
    basis_psi,
    cft_radial_monogenic,
    gaussian,
)
from clifford_fourier.translation import (
    OddDimensionError,
    TranslationPlan,
    convolve,
    gaussian_smooth,
    sphere_identity_check,
    translate,
)
from clifford_fourier.verify import schwartz_sample


def test_odd_dimension_refused():
    with pytest.raises(OddDimensionError):
        TranslationPlan(3, np.zeros(3), fullspace_rule(3, 10))
    with pytest.raises(OddDimensionError):
        convolve(gaussian(3), gaussian(3), fullspace_rule(3, 10), np.zeros((1, 3)))


def test_plan_validation():
    with pytest.raises(ValueError):
        TranslationPlan(2, np.zeros(2), fullspace_rule(4, 10))
    plan = TranslationPlan(4, np.zeros(4), fullspace_rule(4, 10))
    with pytest.raises(ValueError):
        plan.spectrum(schwartz_sample(4))


def test_zero_shift_m2_is_identity():
    f = schwartz_sample(2)
    pts = np.random.default_rng(0).normal(size=(6, 2))
    out = translate(f, TranslationPlan.default(2, [0.0, 0.0]), pts)
    assert np.abs(out - f(pts)).max() <= 1e-10


def test_zero_shift_m4_radial():
    f = CliffordFunction.radial(4, lambda r: r**2 * np.exp(-r**2 / 2))
    pts = np.random.default_rng(1).normal(size=(4, 4))
    out = translate(f, TranslationPlan.default(4, np.zeros(4)), pts)
    assert np.abs(out - f(pts)).max() <= 1e-8


@pytest.mark.parametrize("y", [[0.5, -0.3], [1.2, 0.7]])
def test_m2_translation_classical(y):
    f = schwartz_sample(2)
    pts = np.random.default_rng(2).normal(size=(8, 2))
    y = np.array(y)
    out = translate(f, TranslationPlan.default(2, y), pts)
    assert np.abs(out - f(pts - y)).max() <= 1e-6


def test_sphere_identity_equal_points():
    for m in (2, 3, 4):
        x = np.linspace(0.2, 0.9, m)
        lhs, rhs = sphere_identity_check(1.0, x, x)
        assert rhs == pytest.approx(1.0, abs=1e-15)
        assert abs(lhs[0] - 1.0) <= 1e-10


def test_sphere_identity_m2_is_j0():
    x, y, r = np.array([0.3, -1.0]), np.array([0.8, 0.4]), 1.7
    _, rhs = sphere_identity_check(r, x, y)
    assert rhs == pytest.approx(bessel_j(0, r * np.linalg.norm(x - y)), abs=1e-15)


@pytest.mark.parametrize("m,method", [(2, Dim2()), (3, Series()), (3, OddIntegral3()), (4, ClosedEven()), (4, Series())])
def test_sphere_identity(m, method):
    rng = np.random.default_rng(10 + m)
    x, y = rng.normal(size=m), rng.normal(size=m)
    lhs, rhs = sphere_identity_check(1.2, x, y, sphere_rule(m, 40), method)
    assert abs(lhs[0] - rhs) <= 1e-6
    assert np.abs(lhs[1:]).max() <= 1e-6


def test_sphere_identity_rejects_large_m():
    with pytest.raises(ValueError):
        sphere_identity_check(1.0, np.ones(5), np.ones(5))


@pytest.fixture(scope="module")
def grid2():
    return fullspace_rule(2, 40)


@pytest.mark.parametrize("route", ["fourier", "shift"])
def test_gaussian_convolution_closed_form(grid2, route):
    g = gaussian(2)
    pts = np.random.default_rng(3).normal(size=(5, 2))
    out = convolve(g, g, grid2, pts, route=route)
    ref = 0.5 * np.exp(-np.sum(pts**2, axis=1) / 4)
    assert np.abs(out[:, 0] - ref).max() <= 1e-5
    assert np.abs(out[:, 1:]).max() <= 1e-5


def test_convolution_commutes_for_radial_factor(grid2):
    f = CliffordFunction.radial(2, lambda r: (1 + r**2) * np.exp(-r**2 / 2))
    g = schwartz_sample(2)
    pts = np.random.default_rng(4).normal(size=(4, 2))
    fg = convolve(f, g, grid2, pts, route="shift")
    gf = convolve(g, f, grid2, pts, route="fourier")
    assert np.abs(fg - gf).max() <= 1e-5


def test_convolution_with_zero(grid2):
    pts = np.zeros((2, 2))
    assert np.abs(convolve(gaussian(2), CliffordFunction.zero(2), grid2, pts, route="shift")).max() == 0


def test_shift_routes_need_radial_scalar(grid2):
    with pytest.raises(ValueError):
        convolve(schwartz_sample(2), gaussian(2), grid2, np.zeros((1, 2)), route="shift")
    with pytest.raises(ValueError):
        convolve(gaussian(2), gaussian(2), grid2, np.zeros((1, 2)), route="other")


def test_centered_route_closed_form_m4():
    g, g1 = gaussian(4), basis_psi(BasisIndex("even", 0, 1, 0), 4)
    pts = np.random.default_rng(5).normal(size=(5, 4))
    local = fullspace_rule(4, 8, scale=1 / math.sqrt(2))
    out = convolve(g, g1, local, pts, route="shift-centered")
    ref = g1.structure.monogenic(pts) * np.exp(-np.sum(pts**2, axis=1) / 4)[:, None] / 8
    assert np.abs(out - ref).max() <= 1e-12


def test_fourier_multiplicativity_m2(grid2):
    f = CliffordFunction.radial(2, lambda r: (1 + r**2) * np.exp(-r**2 / 2))
    g = basis_psi(BasisIndex("odd", 0, 1, 1), 2)
    rng = np.random.default_rng(6)
    zeta = rng.normal(size=(10, 2))
    local = fullspace_rule(2, 8, scale=1 / math.sqrt(2))
    outer = fullspace_rule(2, 30, scale=math.sqrt(2))
    conv = convolve(f, g, local, outer.nodes, route="shift-centered")
    lhs = QuadratureTransform(outer, zeta, "minus").apply(conv)
    rhs = gp_arrays(cft_radial_monogenic(f.structure, 2, zeta), cft_radial_monogenic(g.structure, 2, zeta), 2)
    assert np.abs(lhs - rhs).max() <= 1e-5


def test_gaussian_smoothing_unit_time(grid2):
    pts = np.random.default_rng(7).normal(size=(6, 2))
    out = gaussian_smooth(gaussian(2), 1.0, pts, grid2)
    assert np.abs(out[:, 0] - 0.5 * np.exp(-np.sum(pts**2, axis=1) / 4)).max() <= 1e-8


def test_gaussian_smoothing_small_time_m2(grid2):
    f = basis_psi(BasisIndex("even", 0, 1, 0), 2)
    pts = np.random.default_rng(8).normal(size=(6, 2))
    assert np.abs(gaussian_smooth(f, 1e-4, pts, grid2) - f(pts)).max() <= 1e-3


def test_gaussian_smoothing_checks(grid2):
    with pytest.raises(ValueError):
        gaussian_smooth(gaussian(2), 0.0, np.zeros((1, 2)), grid2)
    zero = gaussian_smooth(CliffordFunction.zero(2), 0.5, np.zeros((2, 2)), grid2)
    assert np.abs(zero).max() == 0
