import math

import numpy as np
import pytest

from clifford_fourier.kernel import OddIntegral3, Series
from clifford_fourier.poly import dirac
from clifford_fourier.quadrature import fullspace_rule, gauss_legendre
from clifford_fourier.special import bessel_j_tilde
from clifford_fourier.transform import (
    BasisIndex,
    CliffordFunction,
    QuadratureTransform,
    basis_indices,
    basis_psi,
    cft,
    cft_inverse,
    cft_radial_monogenic,
    expected_eigenvalue,
    gaussian,
    hankel_radial,
)


@pytest.fixture(scope="module")
def grid2():
    return fullspace_rule(2, 40)


@pytest.fixture(scope="module")
def pts2():
    rng = np.random.default_rng(0)
    return rng.normal(size=(10, 2))


def rel_err(a, b):
    return np.abs(a - b).max() / np.abs(b).max()


def test_basis_index_parse_and_validation():
    assert BasisIndex.parse("odd, 1,2,0") == BasisIndex("odd", 1, 2, 0)
    with pytest.raises(ValueError):
        BasisIndex.parse("even,0,1")
    with pytest.raises(ValueError):
        BasisIndex("both", 0, 0, 0)
    with pytest.raises(ValueError):
        BasisIndex("even", -1, 0, 0)
    with pytest.raises(ValueError):
        basis_psi(BasisIndex("even", 0, 1, 2), 2)


def test_lowest_basis_functions():
    x = np.random.default_rng(1).normal(size=(6, 3))
    g = np.exp(-0.5 * np.sum(x**2, axis=1))
    f0 = basis_psi(BasisIndex("even", 0, 0, 0), 3)(x)
    np.testing.assert_allclose(f0[:, 0], g)
    assert np.abs(f0[:, 1:]).max() == 0
    f1 = basis_psi(BasisIndex("odd", 0, 0, 0), 3)(x)
    np.testing.assert_allclose(f1[:, [1, 2, 4]], x * g[:, None], atol=1e-15)
    assert np.abs(f1[:, [0, 3, 5, 6, 7]]).max() == 0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_basis_polynomial_part_is_monogenic(m):
    for idx in basis_indices(m, 0, 3):
        if idx.parity == "even":
            M = basis_psi(idx, m).structure.monogenic
            assert dirac(M).max_abs() <= 1e-12 * max(1.0, M.max_abs())


def test_expected_eigenvalue_examples():
    assert expected_eigenvalue(BasisIndex("even", 0, 0, 0), "minus", 4) == 1
    assert expected_eigenvalue(BasisIndex("even", 1, 0, 0), "minus", 4) == -1
    assert expected_eigenvalue(BasisIndex("odd", 0, 0, 0), "minus", 2) == 1
    with pytest.raises(ValueError):
        expected_eigenvalue(BasisIndex("even", 0, 0, 0), "neutral", 2)


@pytest.mark.parametrize("m,allowed", [(2, {1, -1}), (4, {1, -1}), (3, {1, -1, 1j, -1j}), (5, {1, -1, 1j, -1j})])
def test_eigenvalue_sets(m, allowed):
    seen = {expected_eigenvalue(BasisIndex(p, j, k, 0), s, m)
            for p in ("even", "odd") for j in range(4) for k in range(4) for s in ("minus", "plus")}
    assert seen == allowed


def test_gaussian_is_fixed(grid2, pts2):
    g = gaussian(2)
    for sign in ("minus", "plus"):
        assert np.abs(cft(g, sign, grid2, pts2) - g(pts2)).max() <= 1e-8


def test_gaussian_is_fixed_m4():
    rng = np.random.default_rng(2)
    y = rng.normal(size=(8, 4))
    g = gaussian(4)
    assert np.abs(cft(g, "minus", fullspace_rule(4, 24), y) - g(y)).max() <= 1e-8


def test_degree_one_monogenic_flips_sign(grid2, pts2):
    for l in range(2):
        f = basis_psi(BasisIndex("even", 0, 1, l), 2)
        assert rel_err(cft(f, "minus", grid2, pts2), -f(pts2)) <= 1e-10


@pytest.mark.parametrize("idx", [BasisIndex("even", 0, 1, 1), BasisIndex("odd", 1, 1, 0), BasisIndex("odd", 0, 2, 1)])
@pytest.mark.parametrize("sign", ["minus", "plus"])
def test_roundtrip_m2(grid2, pts2, idx, sign):
    f = basis_psi(idx, 2)
    spec = cft_radial_monogenic(f.structure, 2, grid2.nodes, sign)
    back = QuadratureTransform(grid2, pts2, sign, inverse=True).apply(spec)
    assert rel_err(back, f(pts2)) <= 1e-6


def test_inverse_of_eigenfunction_uses_conjugate_eigenvalue(grid2, pts2):
    idx = BasisIndex("odd", 0, 1, 0)
    f = basis_psi(idx, 2)
    lam = expected_eigenvalue(idx, "plus", 2)
    assert rel_err(cft_inverse(f, "plus", grid2, pts2), np.conj(lam) * f(pts2)) <= 1e-10


def test_zero_function(grid2, pts2):
    z = CliffordFunction.zero(2)
    assert np.abs(cft(z, "minus", grid2, pts2)).max() == 0
    assert np.abs(cft_inverse(z, "minus", grid2, pts2)).max() == 0


@pytest.mark.parametrize("method", [Series(60), OddIntegral3(128)])
def test_measured_eigenvalues_m3(method):
    m = 3
    grid = fullspace_rule(m, 24)
    rng = np.random.default_rng(3)
    y = rng.normal(size=(5, m))
    y *= 1.5 / np.linalg.norm(y, axis=1).max()  # keeps |x||y| inside the series range
    idxs = [BasisIndex(p, j, k, 0) for p in ("even", "odd") for j in range(2) for k in range(3)]
    for sign in ("minus", "plus"):
        tr = QuadratureTransform(grid, y, sign, method)
        for idx in idxs:
            f = basis_psi(idx, m)
            assert rel_err(tr(f), expected_eigenvalue(idx, sign, m) * f(y)) <= 1e-8, (idx, sign)


def test_hankel_gaussian_self_reciprocal():
    s = np.linspace(0, 5, 11)
    for lam in (0.0, 0.5, 1.0, 2.0):
        np.testing.assert_allclose(hankel_radial(lambda r: np.exp(-r**2 / 2), lam, s), np.exp(-s**2 / 2), atol=1e-9)


def test_hankel_twice_is_identity():
    lam = 1.0
    f0 = lambda r: (1 + r**2) * np.exp(-r**2 / 2)  # noqa: E731
    # outer integral by plain Gauss-Legendre on [0, 12]; its weights stay bounded
    outer = gauss_legendre(200, 0.0, 12.0)
    r = outer.nodes[:, 0]
    inner = hankel_radial(f0, lam, r)
    s = np.linspace(0, 3, 7)
    z = np.multiply.outer(s, r)
    twice = (bessel_j_tilde(np.full(z.shape, lam), z) * r ** (2 * lam + 1)) @ (outer.weights * inner)
    np.testing.assert_allclose(twice, f0(s), atol=1e-9)


def test_hankel_of_zero():
    assert np.all(hankel_radial(lambda r: 0 * r, 1.0, [0.0, 1.0, 2.0]) == 0)


@pytest.mark.parametrize("m", [2, 4])
def test_radial_transform_matches_hankel(m):
    rng = np.random.default_rng(6)
    grid = fullspace_rule(m, 40 if m == 2 else 24)
    y = rng.normal(size=(6, m))
    s = np.linalg.norm(y, axis=1)
    lam = (m - 2) / 2
    for _ in range(5):
        c = rng.uniform(-1, 1, 3)
        prof = lambda r, c=c: (c[0] + c[1] * r**2 + c[2] * r**4) * np.exp(-r**2 / 2)  # noqa: E731
        f = CliffordFunction.radial(m, prof)
        full = cft(f, "minus", grid, y)
        np.testing.assert_allclose(full[:, 0], hankel_radial(prof, lam, s), atol=1e-7)
        assert np.abs(full[:, 1:]).max() <= 1e-7


@pytest.mark.parametrize("ell", [0, 1, 2])
@pytest.mark.parametrize("odd", [False, True])
@pytest.mark.parametrize("sign", ["minus", "plus"])
def test_radial_monogenic_route_matches_full_quadrature(grid2, pts2, ell, odd, sign):
    st = basis_psi(BasisIndex("odd" if odd else "even", 0, ell, 0), 2).structure
    prof = lambda r: (1 + r**2) * np.exp(-r**2 / 2)  # noqa: E731
    f = CliffordFunction.from_structure(2, type(st)(prof, ell, st.monogenic, odd))
    full = cft(f, sign, grid2, pts2)
    fast = cft_radial_monogenic(f.structure, 2, pts2, sign)
    assert np.abs(full - fast).max() <= 1e-6


@pytest.mark.parametrize("m", [2, 4])
def test_intertwining_with_dirac(m):
    # F_-(x f) = (-1)^{m/2} d_y F_+(f) for the Gaussian f; d_y by central differences
    rng = np.random.default_rng(8)
    y = rng.normal(size=(5, m)) * 0.8
    h = 1e-5
    g = gaussian(m)
    xg = basis_psi(BasisIndex("odd", 0, 0, 0), m)
    grid = fullspace_rule(m, 40 if m == 2 else 24)
    lhs = cft(xg, "minus", grid, y)
    from clifford_fourier.algebra import left_blade_arrays

    d = np.zeros_like(lhs)
    for i in range(m):
        e = np.zeros(m)
        e[i] = h
        diff = (cft_radial_monogenic(g.structure, m, y + e, "plus") - cft_radial_monogenic(g.structure, m, y - e, "plus")) / (2 * h)
        d += left_blade_arrays(1 << i, diff, m)
    assert np.abs(lhs - (-1) ** (m // 2) * d).max() <= 1e-5
