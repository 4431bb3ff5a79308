import csv
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_fourier.poly import harmonic_basis
from clifford_fourier.quadrature import fullspace_rule, gauss_legendre, radial_rule, sphere_area, sphere_rule
from clifford_fourier.special import bessel_j, gegenbauer


def test_gauss_legendre_quadratic():
    g = gauss_legendre(2)
    assert g.integrate(g.nodes[:, 0] ** 2) == pytest.approx(2 / 3, abs=1e-15)


def test_gauss_legendre_oscillatory():
    g = gauss_legendre(40)
    z = 3.0
    val = g.integrate(np.exp(1j * z * g.nodes[:, 0]))
    assert abs(val - 2 * math.sin(z) / z) <= 1e-12


@pytest.mark.parametrize("lam", [0.5, 1.5, 2.5])
def test_gauss_legendre_bessel_representation(lam):
    g = gauss_legendre(40)
    u = g.nodes[:, 0]
    for z in (0.7, 3.0, 9.0):
        val = g.integrate((1 - u**2) ** (lam - 0.5) * np.exp(1j * z * u))
        ref = math.gamma(lam + 0.5) * math.sqrt(math.pi) * (2 / z) ** lam * bessel_j(lam, z)
        assert abs(val - ref) <= 1e-12


@given(st.integers(2, 30), st.integers(0, 2**32 - 1), st.floats(-3, 1), st.floats(0.5, 4))
def test_gauss_legendre_exactness(n, seed, a, width):
    rng = np.random.default_rng(seed)
    coef = rng.normal(size=2 * n)  # degree 2n - 1
    b = a + width
    g = gauss_legendre(n, a, b)
    p = np.polynomial.Polynomial(coef)
    exact = p.integ()(b) - p.integ()(a)
    assert abs(g.integrate(p(g.nodes[:, 0])) - exact) <= 1e-11 * max(1.0, np.abs(coef).sum() * max(abs(a), abs(b)) ** (2 * n))


def test_gauss_legendre_size_check():
    with pytest.raises(ValueError):
        gauss_legendre(1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sphere_rule_moments(m):
    g = sphere_rule(m, 16)
    assert g.weights.sum() == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(np.linalg.norm(g.nodes, axis=1), 1.0, atol=1e-14)
    assert g.integrate(g.nodes[:, 0] ** 2) == pytest.approx(1 / m, abs=1e-14)
    assert g.integrate(g.nodes[:, -1] ** 4) == pytest.approx(3 / (m * (m + 2)), abs=1e-14)


def test_sphere_rule_checks():
    with pytest.raises(ValueError):
        sphere_rule(5, 16)
    with pytest.raises(ValueError):
        sphere_rule(3, 4)


@pytest.mark.parametrize("m", [3, 4])
def test_gegenbauer_reproducing_identity(m):
    lam = (m - 2) / 2
    g = sphere_rule(m, 16)
    rng = np.random.default_rng(4)
    eta = rng.normal(size=(3, m))
    eta /= np.linalg.norm(eta, axis=1, keepdims=True)
    for ell in range(5):
        for h in harmonic_basis(m, ell)[:3]:
            hv = h(g.nodes)[:, 0].real
            target = h(eta)[:, 0].real
            for k in range(5):
                kern = gegenbauer(k, lam, eta @ g.nodes.T)
                val = (lam + k) / lam * kern @ (g.weights * hv)
                expect = target if k == ell else 0.0
                np.testing.assert_allclose(val, expect, atol=1e-9)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5.5])
def test_radial_rule_moment(m):
    g = radial_rule(60, 1.0, m)
    assert g.integrate(np.exp(-0.5 * g.nodes[:, 0] ** 2)) == pytest.approx(2 ** (m / 2 - 1) * math.gamma(m / 2), rel=1e-13)


def test_radial_rule_scaling():
    g = radial_rule(60, 2.0, 3)
    r = g.nodes[:, 0]
    # int r^2 exp(-r^2/8) dr = 2^{1/2} Gamma(3/2) * 2^3
    assert g.integrate(np.exp(-r**2 / 8)) == pytest.approx(math.sqrt(2) * math.gamma(1.5) * 8, rel=1e-13)


def test_radial_rule_checks():
    with pytest.raises(ValueError):
        radial_rule(4)
    with pytest.raises(ValueError):
        radial_rule(20, 1.0, 0.0)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("style", ["tensor", "polar"])
def test_fullspace_gaussian(m, style):
    g = fullspace_rule(m, 16, style)
    val = g.integrate(np.exp(-0.5 * np.sum(g.nodes**2, axis=1)))
    assert val == pytest.approx((2 * math.pi) ** (m / 2), rel=1e-10)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_polar_and_tensor_agree(m):
    rng = np.random.default_rng(9)
    tensor = fullspace_rule(m, 40 if m == 2 else 24)
    polar = fullspace_rule(m, 24, "polar", sphere_resolution=12)
    for _ in range(10):
        c = rng.normal(size=(m,))
        a = rng.uniform(0.5, 1.5)

        def f(x):
            return (1 + (x @ c) ** 2 + 0.1 * np.sum(x**2, axis=1) ** 2) * np.exp(-0.5 * a * np.sum(x**2, axis=1))

        a_t, a_p = tensor.integrate(f(tensor.nodes)), polar.integrate(f(polar.nodes))
        assert abs(a_t - a_p) <= 1e-8 * abs(a_t)


def test_fullspace_checks():
    with pytest.raises(ValueError):
        fullspace_rule(2, 4)
    with pytest.raises(ValueError):
        fullspace_rule(5, 16, "polar")
    with pytest.raises(ValueError):
        fullspace_rule(2, 16, "hex")


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)


def test_csv_export(tmp_path):
    g = sphere_rule(2, 8)
    path = tmp_path / "grid.csv"
    g.to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["x1", "x2", "weight"]
    back = np.array(rows[1:], dtype=float)
    np.testing.assert_array_equal(back[:, :2], g.nodes)
    np.testing.assert_array_equal(back[:, 2], g.weights)
