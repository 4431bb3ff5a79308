"""Kernel of the Clifford-Fourier transform.

``K_-(x, y) = exp(i pi/2 Gamma_y) exp(-i <x, y>)`` is evaluated by four
independent routes:

* ``Dim2``: the closed form for ``m = 2``,
  ``cos(x1 y2 - x2 y1) + e1e2 sin(x1 y2 - x2 y1)``;
* ``ClosedEven``: finite sums of normalized Bessel functions for even
  ``4 <= m <= 8``;
* ``Series``: the Gegenbauer/Bessel series in ``z = |x||y|`` and
  ``w = <x, y> / z``, valid for every ``m >= 3``;
* ``OddIntegral3``: for ``m = 3``, the Legendre series resummed into
  integrals over ``u in [-1, 1]``.

Every route writes the kernel as ``S + C (x ^ y)`` with complex scalars ``S``
and ``C``.  The ``K_+`` and inverse kernels are obtained from ``K_-`` by
conjugation and reflection only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import special as sps

from .algebra import Multivector, bivector_pairs, wedge_components
from .special import bessel_j_tilde, gegenbauer_table, legendre

W_CLAMP = 1e-12
SERIES_MAX_Z = 30.0
TAIL_REL = 1e-12


# ---------------------------------------------------------------------------
# method tags


@dataclass(frozen=True)
class Dim2:
    pass


@dataclass(frozen=True)
class ClosedEven:
    pass


@dataclass(frozen=True)
class Series:
    terms: int = 60

    def __post_init__(self):
        if self.terms < 20:
            raise ValueError("series truncation must keep at least 20 terms")


@dataclass(frozen=True)
class OddIntegral3:
    quad_points: int = 128

    def __post_init__(self):
        if self.quad_points < 64:
            raise ValueError("odd-dimension integral needs at least 64 nodes")


KernelMethod = Union[Dim2, ClosedEven, Series, OddIntegral3]


def default_method(m: int) -> KernelMethod:
    if m == 2:
        return Dim2()
    if m % 2 == 0 and m <= 8:
        return ClosedEven()
    return Series()


def method_from_name(name: str, m: int, terms: int = 60, quad_points: int = 128) -> KernelMethod:
    table = {
        "dim2": Dim2(),
        "closed": ClosedEven(),
        "series": Series(terms),
        "odd-integral": OddIntegral3(quad_points),
    }
    if name == "auto":
        return default_method(m)
    if name not in table:
        raise ValueError(f"unknown kernel method {name!r}")
    method = table[name]
    check_method(method, m)
    return method


def check_method(method: KernelMethod, m: int) -> None:
    """Raise ``ValueError`` when ``method`` has no formula in dimension ``m``."""
    if isinstance(method, Dim2) and m != 2:
        raise ValueError(f"the dim2 closed form exists only for m = 2, got m = {m}")
    if isinstance(method, ClosedEven) and (m % 2 or not 4 <= m <= 8):
        raise ValueError(f"the even closed form covers m = 4, 6, 8, got m = {m}")
    if isinstance(method, Series) and m < 3:
        raise ValueError("the series needs m >= 3 (Gamma(lambda) is singular at m = 2); use dim2")
    if isinstance(method, OddIntegral3) and m != 3:
        raise ValueError(f"the odd integral representation is for m = 3, got m = {m}")


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class KernelValue:
    """Kernel at one point pair: ``scalar + sum_{j<k} e_j e_k bivector[(j, k)]``.

    Bivector keys are one-based index pairs.
    """

    dim: int
    scalar: complex
    bivector: dict = field(default_factory=dict)

    @property
    def assembled(self) -> Multivector:
        c = np.zeros(1 << self.dim, dtype=np.complex128)
        c[0] = self.scalar
        for (j, k), v in self.bivector.items():
            c[(1 << (j - 1)) | (1 << (k - 1))] = v
        return Multivector(self.dim, c)

    def components(self) -> np.ndarray:
        """``[K_0, K_12, K_13, ...]`` in lexicographic pair order."""
        pairs = bivector_pairs(self.dim)
        return np.array(
            [self.scalar] + [self.bivector[(j + 1, k + 1)] for j, k in pairs], dtype=complex
        )


@dataclass(frozen=True)
class KernelBatch:
    """Kernel values for many point pairs, ``K = scalar + C * (x ^ y)``.

    ``scalar`` and ``wedge_coeff`` have the broadcast batch shape; ``wedge``
    holds the components of ``x ^ y`` with a trailing pair axis.
    """

    dim: int
    scalar: np.ndarray
    wedge_coeff: np.ndarray
    wedge: np.ndarray

    @property
    def bivector(self) -> np.ndarray:
        return self.wedge_coeff[..., None] * self.wedge

    def components(self) -> np.ndarray:
        """Shape ``batch + (1 + m(m-1)/2,)``: scalar then bivector components."""
        return np.concatenate([self.scalar[..., None], self.bivector], axis=-1)

    def multivectors(self) -> np.ndarray:
        """Dense coefficient arrays, shape ``batch + (2**m,)``."""
        m = self.dim
        out = np.zeros(self.scalar.shape + (1 << m,), dtype=np.complex128)
        out[..., 0] = self.scalar
        biv = self.bivector
        for p, (j, k) in enumerate(bivector_pairs(m)):
            out[..., (1 << j) | (1 << k)] = biv[..., p]
        return out

    def conj(self) -> "KernelBatch":
        return KernelBatch(self.dim, np.conj(self.scalar), np.conj(self.wedge_coeff), self.wedge)

    def value(self, index=()) -> KernelValue:
        comps = self.components()[index]
        pairs = bivector_pairs(self.dim)
        return KernelValue(
            self.dim,
            complex(comps[0]),
            {(j + 1, k + 1): complex(comps[1 + p]) for p, (j, k) in enumerate(pairs)},
        )


# ---------------------------------------------------------------------------
# geometry helpers


def _pair_geometry(x, y):
    """``z = |x||y|``, ``s = <x,y>``, ``w = s / z`` (1 where ``z = 0``) and wedge."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise ValueError(f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    s = np.einsum("...i,...i->...", x, y)
    z = np.sqrt(np.einsum("...i,...i->...", x, x) * np.einsum("...i,...i->...", y, y))
    s = np.broadcast_to(s, z.shape) if s.shape != z.shape else s
    with np.errstate(invalid="ignore", divide="ignore"):
        w = np.where(z > 0, s / np.where(z > 0, z, 1.0), 1.0)
    w = clamp_w(w)
    return z, s, w, wedge_components(x, y)


def clamp_w(w):
    """Clip floating-point overshoot of ``|w| <= 1``; reject real violations."""
    w = np.asarray(w, dtype=float)
    if np.any(np.abs(w) > 1.0 + W_CLAMP):
        raise ValueError("cosine of the angle between x and y exceeds 1")
    return np.clip(w, -1.0, 1.0)


def _lam(m: int) -> float:
    return (m - 2) / 2.0


# ---------------------------------------------------------------------------
# m = 2


def kernel_dim2_batch(x, y) -> KernelBatch:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != 2 or y.shape[-1] != 2:
        raise ValueError("the closed two-dimensional kernel needs m = 2")
    wedge = wedge_components(x, y)
    t = wedge[..., 0]
    # cos t + e1e2 sin t  ==  cos t + (x ^ y) * sinc
    return KernelBatch(2, np.cos(t).astype(complex), np.sinc(t / np.pi).astype(complex), wedge)


# ---------------------------------------------------------------------------
# series


def _series_tail_check(z, lam: float, n: int, running) -> None:
    """Refuse evaluations whose first omitted term is not negligible."""
    zmax = float(np.max(z)) if np.size(z) else 0.0
    if zmax == 0.0:
        return
    # |z^{-lam} J_{n+lam}(z)| <= (z/2)^{n+lam} z^{-lam} / Gamma(n+lam+1), and
    # |C_n^lam(w)| <= C_n^lam(1); the weight (n + lam) covers the B sum.
    log_tail = (
        (n + lam) * math.log(zmax / 2.0)
        - lam * math.log(zmax)
        - math.lgamma(n + lam + 1.0)
        + math.lgamma(n + 2.0 * lam)
        - math.lgamma(2.0 * lam)
        - math.lgamma(n + 1.0)
        + math.log(n + lam)
        + (lam - 1.0) * math.log(2.0)
        + math.lgamma(lam + 1.0)
        + math.log(2.0)
    )
    scale = max(1.0, float(np.max(np.abs(running))))
    if log_tail > math.log(TAIL_REL * scale):
        raise ValueError(
            f"series with {n} terms does not converge to 1e-12 at z = {zmax:.3g}; "
            "raise the number of terms"
        )


def _scaled_bessel(n: int, lam: float, z: np.ndarray) -> np.ndarray:
    """``z^k J~_{k+lam}(z) = z^{-lam} J_{k+lam}(z)`` for ``k = 0..n``."""
    out = np.empty((n + 1,) + z.shape)
    small = z <= 2.0
    if np.any(small):
        zs = z[small]
        out[:, small] = _small_scaled(n, lam, z[small])
    big = ~small
    if np.any(big):
        zb = z[big]
        kk = np.arange(n + 1)[:, None]
        out[:, big] = sps.jv(kk + lam, zb[None, :]) * zb[None, :] ** (-lam)
    return out


def _small_scaled(n: int, lam: float, z: np.ndarray) -> np.ndarray:
    k = np.arange(n + 1)[:, None]
    zz = np.broadcast_to(z[None, :], (n + 1, z.size))
    # orders above the library range only occur where the term is ~0 anyway
    alpha = np.broadcast_to(k + lam, zz.shape)
    tilde = np.empty(zz.shape)
    ok = alpha <= 60.0
    tilde[ok] = bessel_j_tilde(alpha[ok], zz[ok])
    tilde[~ok] = 0.0
    return zz**k * tilde


def series_abc(w, z, m: int, terms: int = 60):
    """The series coefficients ``(A, B, C)`` with ``K = A + B + (x ^ y) C``.

    ``A = 2^{lam-1} Gamma(lam+1) sum (i^m + (-1)^k) z^{-lam} J_{k+lam}(z) C_k^lam(w)``,
    ``B = -2^{lam-1} Gamma(lam) sum (k+lam)(i^m - (-1)^k) z^{-lam} J_{k+lam}(z) C_k^lam(w)``,
    ``C = -2^{lam-1} Gamma(lam) sum (i^m + (-1)^k) z^{-lam-1} J_{k+lam}(z) d/dw C_k^lam(w)``,
    with ``lam = (m-2)/2``.  Requires ``m >= 3``.
    """
    if m < 3:
        raise ValueError("the series kernel needs m >= 3; use the Dim2 closed form for m = 2")
    lam = _lam(m)
    w = clamp_w(w)
    z = np.asarray(z, dtype=float)
    w, z = np.broadcast_arrays(w, z)
    if np.any(z > SERIES_MAX_Z):
        raise ValueError(f"series kernel limited to z <= {SERIES_MAX_Z}")
    shape = z.shape
    w = w.reshape(-1)
    z = z.reshape(-1)
    n = terms
    bes = _scaled_bessel(n, lam, z)  # z^{-lam} J_{k+lam}(z)
    geg = gegenbauer_table(n, lam, w)
    dgeg = np.zeros_like(geg)
    dgeg[1:] = 2.0 * lam * gegenbauer_table(n - 1, lam + 1.0, w)
    k = np.arange(n + 1)[:, None]
    im = 1j**m
    par = (-1.0) ** k
    pref = 2.0 ** (lam - 1.0) * math.gamma(lam)
    a = lam * pref * np.sum((im + par) * bes * geg, axis=0)
    b = -pref * np.sum((k + lam) * (im - par) * bes * geg, axis=0)
    # z^{-lam-1} J_{k+lam}(z) = z^{k-1} J~ ; the k = 0 term carries d/dw C_0 = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        bes_c = np.where(z > 0, bes / np.where(z > 0, z, 1.0), 0.0)
    if np.any(z == 0):
        # only k = 1 survives at z = 0: z^{-lam-1} J_{1+lam}(z) -> 1 / (2^{1+lam} Gamma(lam+2))
        bes_c[1, z == 0] = 1.0 / (2.0 ** (1 + lam) * math.gamma(lam + 2.0))
    c = -pref * np.sum((im + par) * bes_c * dgeg, axis=0)
    _series_tail_check(z, lam, n, a + b)
    return a.reshape(shape), b.reshape(shape), c.reshape(shape)


def kernel_series_batch(x, y, terms: int = 60) -> KernelBatch:
    z, _, w, wedge = _pair_geometry(x, y)
    m = np.asarray(x).shape[-1]
    a, b, c = series_abc(w, z, m, terms)
    return KernelBatch(m, a + b, c, wedge)


# ---------------------------------------------------------------------------
# even m, closed form


def closed_even_abc(s, t, m: int):
    """The finite sums ``(A*, B*, C*)`` in ``s = <x,y>``, ``t = |x ^ y|`` without prefactor."""
    if m % 2 or not 4 <= m <= 8:
        raise ValueError("closed even-dimensional kernel is implemented for m in {4, 6, 8}")
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    h = m // 2
    g = math.gamma(h)
    a = np.zeros(np.broadcast_shapes(s.shape, t.shape))
    b = np.zeros_like(a)
    c = np.zeros_like(a)
    for ell in range(0, (m - 3) // 4 + 1):  # floor(m/4 - 3/4)
        coef = g * sps.rgamma(h - 2 * ell - 1) / (2.0**ell * math.factorial(ell))
        a = a + coef * s ** (h - 2 - 2 * ell) * bessel_j_tilde((m - 2 * ell - 3) / 2.0, t)
    for ell in range(0, (m - 2) // 4 + 1):  # floor(m/4 - 1/2)
        coef = g * sps.rgamma(h - 2 * ell) / (2.0**ell * math.factorial(ell))
        sp = s ** (h - 1 - 2 * ell)
        b = b - coef * sp * bessel_j_tilde((m - 2 * ell - 3) / 2.0, t)
        c = c - coef * sp * bessel_j_tilde((m - 2 * ell - 1) / 2.0, t)
    return a, b, c


def kernel_closed_even_batch(x, y) -> KernelBatch:
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    _, s, _, wedge = _pair_geometry(x, y)
    t = np.sqrt(np.sum(wedge**2, axis=-1))
    a, b, c = closed_even_abc(s, t, m)
    pref = (-1) ** (m // 2) * math.sqrt(math.pi / 2.0)
    return KernelBatch(m, (pref * (a + b)).astype(complex), (pref * c).astype(complex), wedge)


# ---------------------------------------------------------------------------
# m = 3 integral representation


def _u_integrands(w, z, nodes):
    """Integrand pieces on the u-grid; arrays have shape ``(n_points, n_nodes)``."""
    u = nodes[None, :]
    a = 0.5 * z[:, None] * (1.0 - u**2)
    sig = np.sqrt(np.maximum(0.0, 1.0 - w**2))[:, None]
    phase = np.exp(1j * z[:, None] * u)
    return u, a, sig, phase


def odd3_uv(w, z, quad_points: int = 128):
    """``U(w, z)`` and ``V(w, z)`` by Gauss-Legendre quadrature in ``u``.

    ``U = sqrt(z/2pi) int e^{izu} e^{-a w} J0(a sin) du`` and
    ``V = pi^{-1/2} (z/2)^{3/2} int e^{izu} e^{a w} (1-u^2) [w J0(a sin) - sin J1(a sin)] du``
    where ``a = z (1-u^2) / 2`` and ``sin = sqrt(1 - w^2)``.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    u, a, sig, phase = _u_integrands(w, z, nodes)
    ww = w[:, None]
    j0 = sps.j0(a * sig)
    j1 = sps.j1(a * sig)
    uu = np.sqrt(z / (2 * np.pi)) * ((phase * np.exp(-a * ww) * j0) @ weights)
    vv = (0.5 * z) ** 1.5 / np.sqrt(np.pi) * (
        (phase * np.exp(a * ww) * (1.0 - u**2) * (ww * j0 - sig * j1)) @ weights
    )
    return uu, vv


def odd3_u_dw(w, z, quad_points: int = 128):
    """``d/dw U(w, z)``, differentiating under the integral sign."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    _, a, sig, phase = _u_integrands(w, z, nodes)
    ww = w[:, None]
    arg = a * sig
    # J1(a sin) / sin = a J1(arg)/arg, with J1(arg)/arg -> 1/2 at arg = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        j1_over = np.where(arg > 1e-8, sps.j1(arg) / np.where(arg > 1e-8, arg, 1.0), 0.5 - arg**2 / 16)
    d = -a * np.exp(-a * ww) * (sps.j0(arg) - ww * a * j1_over)
    return np.sqrt(z / (2 * np.pi)) * ((phase * d) @ weights)


def odd3_abc(w, z, quad_points: int = 128):
    """``(A_{1/2} + B_{1/2}, C_{1/2})`` for ``m = 3`` from the u-integrals.

    ``A_{1/2} = (1/2) sqrt(pi/2z) [U(w,z) - i U(-w,z)]`` and
    ``C_{1/2} = -(2/z) d/dw A_{1/2}``.  At ``z = 0`` the limits 1 and 0 are returned.
    """
    w = clamp_w(np.atleast_1d(w))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    w, z = np.broadcast_arrays(w, z)
    scal = np.ones(z.shape, dtype=complex)
    cc = np.zeros(z.shape, dtype=complex)
    pos = z > 0
    if np.any(pos):
        wp, zp = w[pos], z[pos]
        u_p, v_p = odd3_uv(wp, zp, quad_points)
        _, v_m = odd3_uv(-wp, zp, quad_points)
        root = np.sqrt(np.pi / (2 * zp))
        scal[pos] = root * (u_p + v_m + 1j * v_p)
        du_p = odd3_u_dw(wp, zp, quad_points)
        du_m = odd3_u_dw(-wp, zp, quad_points)
        da = 0.5 * root * (du_p + 1j * du_m)
        cc[pos] = -2.0 / zp * da
    return scal, cc


def kernel_odd3_batch(x, y, quad_points: int = 128) -> KernelBatch:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 3:
        raise ValueError("the integral representation is implemented for m = 3 only")
    z, _, w, wedge = _pair_geometry(x, y)
    shape = z.shape
    scal, cc = odd3_abc(w.reshape(-1), z.reshape(-1), quad_points)
    return KernelBatch(3, scal.reshape(shape), cc.reshape(shape), wedge)


def kernel_odd3_scalar(x, y, quad_points: int = 128) -> tuple[complex, complex]:
    """``(A + B, C)`` at one point pair for ``m = 3``."""
    kb = kernel_odd3_batch(x, y, quad_points)
    return complex(kb.scalar), complex(kb.wedge_coeff)


# ---------------------------------------------------------------------------
# dispatch


def kernel_minus_batch(x, y, method: KernelMethod | None = None) -> KernelBatch:
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    method = default_method(m) if method is None else method
    if isinstance(method, Dim2):
        if m != 2:
            raise ValueError(f"Dim2 method needs m = 2, got m = {m}")
        return kernel_dim2_batch(x, y)
    if isinstance(method, ClosedEven):
        return kernel_closed_even_batch(x, y)
    if isinstance(method, Series):
        return kernel_series_batch(x, y, method.terms)
    if isinstance(method, OddIntegral3):
        return kernel_odd3_batch(x, y, method.quad_points)
    raise TypeError(f"unknown kernel method {method!r}")


def kernel_batch(x, y, method: KernelMethod | None = None, sign: str = "minus",
                 inverse: bool = False) -> KernelBatch:
    """``K_-``/``K_+`` or their inverse kernels on broadcast point batches.

    ``K_+(x, y) = conj(K_-(x, -y))`` and inverse kernels are complex conjugates
    of the forward kernels.
    """
    if sign == "minus":
        kb = kernel_minus_batch(x, y, method)
    elif sign == "plus":
        kb = kernel_minus_batch(x, -np.asarray(y, dtype=float), method)
        # the wedge of (x, -y) is minus the wedge of (x, y)
        kb = KernelBatch(kb.dim, np.conj(kb.scalar), -np.conj(kb.wedge_coeff), -kb.wedge)
    else:
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    return kb.conj() if inverse else kb


def kernel_minus(x, y, method: KernelMethod | None = None) -> KernelValue:
    return kernel_batch(x, y, method).value()


def kernel_plus(x, y, method: KernelMethod | None = None) -> KernelValue:
    return kernel_batch(x, y, method, "plus").value()


def kernel_inverse_minus(x, y, method: KernelMethod | None = None) -> KernelValue:
    return kernel_batch(x, y, method, "minus", inverse=True).value()


def kernel_inverse_plus(x, y, method: KernelMethod | None = None) -> KernelValue:
    return kernel_batch(x, y, method, "plus", inverse=True).value()


def kernel_series(x, y, terms: int = 60) -> KernelValue:
    return kernel_series_batch(x, y, terms).value()


def kernel_dim2(x, y) -> KernelValue:
    return kernel_dim2_batch(x, y).value()


def kernel_closed_even(x, y) -> KernelValue:
    return kernel_closed_even_batch(x, y).value()


def bound_ratio(x, y, method: KernelMethod | None = None):
    """``max(|K_0|, |K_jk|) / ((1 + |x|)(1 + |y|))^{(m-2)/2}`` for even ``m``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = x.shape[-1]
    if m % 2:
        raise ValueError("the polynomial kernel bound is only available for even m")
    comps = kernel_batch(x, y, method).components()
    peak = np.max(np.abs(comps), axis=-1)
    growth = ((1 + np.linalg.norm(x, axis=-1)) * (1 + np.linalg.norm(y, axis=-1))) ** ((m - 2) / 2)
    return peak / growth
