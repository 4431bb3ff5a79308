"""Clifford-Fourier transforms by direct quadrature, and the Hermite-type basis.

``F_{+-} f(y) = (2 pi)^{-m/2} int K_{+-}(x, y) f(x) dx`` integrates over the
first kernel slot, and the kernel multiplies ``f`` from the left.  Inverse
transforms use the complex-conjugate kernels in the same slot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .algebra import bivector_pairs, gp_arrays, left_blade_arrays, vector_arrays
from .kernel import KernelMethod, default_method, kernel_batch
from .poly import PolyMV, monogenic_basis, mul_x
from .quadrature import ProductGrid, radial_rule
from .special import bessel_j_tilde, laguerre

EVAL_CHUNK_PAIRS = 4_000_000


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True)
class RadialMonogenic:
    """``f(x) = f0(|x|) M(x)`` or, with ``times_x``, ``f0(|x|) x M(x)``.

    ``M`` is a spherical monogenic of degree ``ell`` and ``f0`` a real or
    complex radial profile.  Used by the one-dimensional transform path.
    """

    profile: Callable[[np.ndarray], np.ndarray]
    ell: int
    monogenic: PolyMV
    times_x: bool = False


class CliffordFunction:
    """A Clifford-valued function on ``R^m``, evaluated on point batches.

    ``evaluator`` maps an array of shape ``(n, m)`` to ``(n, 2**m)``.  An optional
    :class:`RadialMonogenic` description enables the radial transform path.
    """

    def __init__(self, dim: int, evaluator: Callable[[np.ndarray], np.ndarray],
                 structure: Optional[RadialMonogenic] = None, name: str = ""):
        self.dim = dim
        self._evaluator = evaluator
        self.structure = structure
        self.name = name

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, self.dim)
        out = np.asarray(self._evaluator(flat), dtype=np.complex128)
        return out.reshape(x.shape[:-1] + (1 << self.dim,))

    def sample(self, grid: ProductGrid) -> np.ndarray:
        return self(grid.nodes)

    @classmethod
    def radial(cls, dim: int, profile: Callable[[np.ndarray], np.ndarray], name: str = "radial"):
        """Scalar-valued ``f0(|x|)``."""
        one = PolyMV.monomial((0,) * dim, 1.0, dim)
        return cls.from_structure(dim, RadialMonogenic(profile, 0, one), name)

    @classmethod
    def from_structure(cls, dim: int, st: RadialMonogenic, name: str = ""):
        angular = mul_x(st.monogenic) if st.times_x else st.monogenic

        def evaluate(x):
            r = np.linalg.norm(x, axis=-1)
            return angular(x) * np.asarray(st.profile(r))[..., None]

        return cls(dim, evaluate, st, name)

    @classmethod
    def zero(cls, dim: int):
        return cls(dim, lambda x: np.zeros((x.shape[0], 1 << dim), dtype=np.complex128), name="zero")


def gaussian(dim: int) -> CliffordFunction:
    return CliffordFunction.radial(dim, lambda r: np.exp(-0.5 * r**2), "gaussian")


# ---------------------------------------------------------------------------
# basis


@dataclass(frozen=True)
class BasisIndex:
    """``psi_{2j,k,l}`` (``parity="even"``) or ``psi_{2j+1,k,l}`` (``parity="odd"``)."""

    parity: str
    j: int
    k: int
    l: int

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        if min(self.j, self.k, self.l) < 0:
            raise ValueError("basis indices must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "BasisIndex":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("basis index must read parity,j,k,l")
        return cls(parts[0].lower(), int(parts[1]), int(parts[2]), int(parts[3]))


@lru_cache(maxsize=None)
def _monogenics(m: int, k: int) -> tuple[PolyMV, ...]:
    return tuple(monogenic_basis(m, k))


def basis_size(m: int, k: int) -> int:
    return len(_monogenics(m, k))


def basis_indices(m: int, max_j: int, max_k: int) -> list[BasisIndex]:
    return [
        BasisIndex(p, j, k, l)
        for p in ("even", "odd")
        for j in range(max_j + 1)
        for k in range(max_k + 1)
        for l in range(basis_size(m, k))
    ]


def basis_psi(idx: BasisIndex, m: int) -> CliffordFunction:
    """``L_j^{m/2+k-1}(|x|^2) M_k^(l) e^{-|x|^2/2}``, or ``L_j^{m/2+k}(|x|^2) x M_k^(l) e^{-|x|^2/2}``."""
    mons = _monogenics(m, idx.k)
    if idx.l >= len(mons):
        raise ValueError(f"only {len(mons)} monogenics of degree {idx.k} in dimension {m}")
    odd = idx.parity == "odd"
    alpha = m / 2 + idx.k - (0 if odd else 1)
    j = idx.j

    def profile(r):
        return laguerre(j, alpha, r**2) * np.exp(-0.5 * r**2)

    st = RadialMonogenic(profile, idx.k, mons[idx.l], odd)
    return CliffordFunction.from_structure(m, st, f"psi[{idx.parity},{idx.j},{idx.k},{idx.l}]")


def expected_eigenvalue(idx: BasisIndex, sign: str, m: int) -> complex:
    """Eigenvalue of ``F_minus`` / ``F_plus`` on ``psi_idx``."""
    if sign not in ("minus", "plus"):
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    flip = 1 if sign == "minus" else -1
    j, k = idx.j, idx.k
    if idx.parity == "even":
        return complex((-1) ** (j + k) * flip**k)
    return complex(1j**m * (-1) ** (j + 1) * flip ** (k + m - 1))


# ---------------------------------------------------------------------------
# quadrature transform


class QuadratureTransform:
    """Direct-summation transform from a full-space grid to fixed evaluation points.

    With ``K = S + C (x ^ y)`` the quadrature sum splits as

    ``sum_n w_n K(x_n, y) F_n = S W F + sum_{j<k} e_j e_k (y_k G_j - y_j G_k)``,
    ``G_j = C W X_j F``.

    The rows of ``S W`` and ``C W X_j`` are stacked into one matrix when the
    plan is built, so applying the transform is a single matrix product.
    Matrices are kept real when the kernel is real (even ``m``).
    """

    def __init__(self, grid: ProductGrid, eval_points, sign: str = "minus",
                 method: KernelMethod | None = None, inverse: bool = False):
        self.grid = grid
        self.m = grid.dim
        self.y = np.atleast_2d(np.asarray(eval_points, dtype=float))
        if self.y.shape[1] != self.m:
            raise ValueError("evaluation points do not match the grid dimension")
        self.sign = sign
        self.inverse = inverse
        self.method = default_method(self.m) if method is None else method
        self._stack = self._build()

    def _build(self) -> np.ndarray:
        x = self.grid.nodes
        w = self.grid.weights
        m = self.m
        p, n = self.y.shape[0], x.shape[0]
        stack = np.empty((m + 1, p, n), dtype=np.complex128)
        rows = max(1, EVAL_CHUNK_PAIRS // max(n, 1))
        for start in range(0, p, rows):
            sl = slice(start, start + rows)
            kb = kernel_batch(x[None, :, :], self.y[sl, None, :], self.method, self.sign, self.inverse)
            stack[0, sl] = kb.scalar * w
            cw = kb.wedge_coeff * w
            for j in range(m):
                stack[1 + j, sl] = cw * x[:, j]
        stack = stack.reshape((m + 1) * p, n)
        if not np.any(stack.imag):
            stack = np.ascontiguousarray(stack.real)
        return stack

    def conjugate(self) -> "QuadratureTransform":
        """The transform with the complex-conjugate kernel, e.g. forward -> inverse."""
        other = object.__new__(QuadratureTransform)
        other.__dict__.update(self.__dict__)
        other.inverse = not self.inverse
        if np.iscomplexobj(self._stack):
            other._stack = np.conj(self._stack)
        return other

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Transform sampled grid values of shape ``(n, 2**m)``; returns ``(p, 2**m)``."""
        m = self.m
        p = self.y.shape[0]
        values = np.asarray(values, dtype=np.complex128)
        if np.iscomplexobj(self._stack):
            prod = self._stack @ values
        else:
            prod = self._stack @ np.ascontiguousarray(values.real) + 1j * (
                self._stack @ np.ascontiguousarray(values.imag)
            )
        prod = prod.reshape(m + 1, p, -1)
        out = prod[0].copy()
        for j, k in bivector_pairs(m):
            part = self.y[:, k : k + 1] * prod[1 + j] - self.y[:, j : j + 1] * prod[1 + k]
            out += left_blade_arrays((1 << j) | (1 << k), part, m)
        return out * (2 * math.pi) ** (-m / 2)

    def __call__(self, f: CliffordFunction) -> np.ndarray:
        return self.apply(f.sample(self.grid))


def cft(f: CliffordFunction, sign: str, grid: ProductGrid, eval_points,
        method: KernelMethod | None = None) -> np.ndarray:
    """``F_sign f`` at ``eval_points`` by quadrature on ``grid``; shape ``(p, 2**m)``."""
    return QuadratureTransform(grid, eval_points, sign, method)(f)


def cft_inverse(f: CliffordFunction, sign: str, grid: ProductGrid, eval_points,
                method: KernelMethod | None = None) -> np.ndarray:
    return QuadratureTransform(grid, eval_points, sign, method, inverse=True)(f)


# ---------------------------------------------------------------------------
# radial paths


def hankel_radial(f0: Callable[[np.ndarray], np.ndarray], lam: float, s_points,
                  radial_grid: ProductGrid | None = None) -> np.ndarray:
    """``H_lam f0(s) = int_0^inf f0(r) J_lam(rs) (rs)^{-lam} r^{2 lam + 1} dr``."""
    s = np.atleast_1d(np.asarray(s_points, dtype=float))
    grid = radial_grid if radial_grid is not None else radial_rule(150, 1.0, 2 * lam + 2)
    r = grid.nodes[:, 0]
    vals = np.asarray(f0(r))
    z = np.multiply.outer(s, r)
    kern = bessel_j_tilde(np.full(z.shape, float(lam)), z, check=False)
    return kern @ (grid.weights * vals)


def radial_phase(sign: str, m: int, ell: int, times_x: bool, inverse: bool = False) -> complex:
    """Unimodular factor in front of the Hankel-type integral for ``f0 M`` / ``f0 x M``."""
    if times_x:
        ph = -(1j**m) if sign == "minus" else (-1) ** ell * (-1j) ** m
    else:
        ph = (-1) ** ell if sign == "minus" else 1.0
    return complex(np.conj(ph)) if inverse else complex(ph)


def cft_radial_monogenic(st: RadialMonogenic, m: int, s_points, sign: str = "minus",
                         inverse: bool = False, radial_grid: ProductGrid | None = None) -> np.ndarray:
    """Transform of ``f0(r) M_ell`` or ``f0(r) x M_ell`` through one radial integral.

    ``F_-(f0 M_ell)(y) = (-1)^ell M_ell(eta) int r^{m+ell-1} f0(r) z^{-lam} J_{ell+lam}(z) dr``
    and ``F_-(f0 x M_ell)(y) = -i^m eta M_ell(eta) int r^{m+ell} f0(r) z^{-lam} J_{ell+1+lam}(z) dr``
    with ``eta = y/|y|`` and ``z = r|y|``.  Written with ``J~`` the integrands are
    regular at ``|y| = 0``.  ``F_+`` and the inverse transforms differ only in
    the unimodular prefactor.
    """
    y = np.atleast_2d(np.asarray(s_points, dtype=float))
    lam = (m - 2) / 2.0
    ell = st.ell
    grid = radial_grid if radial_grid is not None else radial_rule(150, 1.0, m)
    r = grid.nodes[:, 0]
    # tensor grids repeat radii heavily; integrate once per distinct radius
    s, where = np.unique(np.linalg.norm(y, axis=-1), return_inverse=True)
    f0 = np.asarray(st.profile(r), dtype=complex) * grid.weights
    z = np.multiply.outer(s, r)
    order = ell + lam + (1 if st.times_x else 0)
    # r^{ell} z^{-lam} J_{ell+lam}(z) M(eta) = r^{2 ell} J~_{ell+lam}(z) M(y)
    power = 2 * ell + (2 if st.times_x else 0)
    radial = ((bessel_j_tilde(np.full(z.shape, order), z, check=False) * r**power) @ f0)[where.reshape(-1)]
    angular = mul_x(st.monogenic) if st.times_x else st.monogenic
    return radial_phase(sign, m, ell, st.times_x, inverse) * radial[:, None] * angular(y)
