"""Generalized translation, Clifford convolution and Gaussian smoothing.

The translation is computed in the frequency domain,

``tau_y f(x) = (2 pi)^{-m/2} int conj(K_-(xi, x)) K_-(y, xi) F_- f(xi) dxi``,

with the operand order kept as written.  The inner transform ``F_- f`` at the
outer nodes comes either from the one-dimensional radial path (for functions
carrying a :class:`~clifford_fourier.transform.RadialMonogenic` description)
or from a second full-space quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import bivector_pairs, gp_arrays, left_blade_arrays
from .kernel import KernelBatch, KernelMethod, default_method, kernel_batch
from .quadrature import ProductGrid, fullspace_rule, sphere_rule
from .special import bessel_j_tilde
from .transform import CliffordFunction, QuadratureTransform, cft_radial_monogenic


class OddDimensionError(ValueError):
    """Translation and convolution are only certified in even dimension."""


def _require_even(m: int) -> None:
    if m % 2:
        raise OddDimensionError(
            f"m = {m} is odd: the transform is only known to be invertible for even m, "
            "so the frequency-domain translation is not available"
        )


def kernel_times(kb: KernelBatch, values: np.ndarray) -> np.ndarray:
    """``K * F`` for a kernel batch and coefficient arrays of matching batch shape."""
    m = kb.dim
    out = kb.scalar[..., None] * values
    biv = kb.bivector
    for p, (j, k) in enumerate(bivector_pairs(m)):
        out = out + biv[..., p, None] * left_blade_arrays((1 << j) | (1 << k), values, m)
    return out


@dataclass
class TranslationPlan:
    """Everything :func:`translate` needs for a fixed shift ``y``.

    ``grid`` is the outer frequency grid; nodes with ``|xi| > cutoff`` are
    dropped, since a Gaussian-type spectrum is below rounding level there while
    an inner quadrature would no longer resolve the oscillation.  ``inner_grid``
    computes ``F_- f`` for functions without radial structure and defaults to a
    finer tensor grid (its nodes must resolve frequencies up to ``cutoff``).
    """

    m: int
    y: np.ndarray
    grid: ProductGrid
    method: Optional[KernelMethod] = None
    inner_grid: Optional[ProductGrid] = None
    cutoff: Optional[float] = 8.0
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        _require_even(self.m)
        self.y = np.asarray(self.y, dtype=float).reshape(self.m)
        if self.grid.dim != self.m:
            raise ValueError("grid dimension does not match the plan")
        if self.method is None:
            self.method = default_method(self.m)
        if self.cutoff is not None:
            keep = np.linalg.norm(self.grid.nodes, axis=1) <= self.cutoff
            self.grid = ProductGrid(self.grid.nodes[keep], self.grid.weights[keep], "fullspace", self.m)

    @classmethod
    def default(cls, m: int, y, n_axis: int | None = None, method=None) -> "TranslationPlan":
        n_axis = n_axis or (40 if m == 2 else 24)
        return cls(m, np.asarray(y, float), fullspace_rule(m, n_axis), method)

    def spectrum(self, f: CliffordFunction) -> np.ndarray:
        """``F_- f`` at the outer nodes."""
        nodes = self.grid.nodes
        if f.structure is not None:
            return cft_radial_monogenic(f.structure, self.m, nodes, "minus")
        inner = self.inner_grid
        if inner is None:
            if self.m > 2:
                raise ValueError(
                    "a full-space inner transform is only affordable for m = 2; "
                    "give f a radial-monogenic structure or pass inner_grid"
                )
            inner = fullspace_rule(self.m, 64)
        return QuadratureTransform(inner, nodes, "minus", self.method)(f)

    def shift_kernel(self) -> KernelBatch:
        """``K_-(y, xi)`` at the outer nodes."""
        if "shift" not in self._cache:
            self._cache["shift"] = kernel_batch(self.y[None, :], self.grid.nodes, self.method)
        return self._cache["shift"]

    def synthesis(self, eval_points) -> QuadratureTransform:
        """The outer integral with ``conj(K_-(xi, x))``."""
        key = ("synth", np.asarray(eval_points, float).tobytes())
        if key not in self._cache:
            self._cache[key] = QuadratureTransform(self.grid, eval_points, "minus", self.method, inverse=True)
        return self._cache[key]


def translate(f: CliffordFunction, plan: TranslationPlan, eval_points) -> np.ndarray:
    """``tau_y f`` at ``eval_points``; returns ``(p, 2**m)``."""
    spec = plan.spectrum(f)
    integrand = kernel_times(plan.shift_kernel(), spec)
    return plan.synthesis(eval_points).apply(integrand)


# ---------------------------------------------------------------------------
# sphere identity


def sphere_identity_check(r: float, x, y, sphere: ProductGrid | None = None,
                          method: KernelMethod | None = None):
    """Both sides of the spherical mean of the translation kernel.

    ``lhs = int_{S^{m-1}} conj(K_-(r eta, x)) K_-(y, r eta) d omega(eta)`` (normalized
    measure), ``rhs = 2^lam Gamma(lam+1) u^{-lam} J_lam(u)`` with
    ``u = r |x - y|``.  Returns ``(lhs coefficients, rhs)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = x.size
    if m not in (2, 3, 4):
        raise ValueError("the sphere identity is checked for m in {2, 3, 4}")
    sphere = sphere if sphere is not None else sphere_rule(m, 48)
    pts = r * sphere.nodes
    left = kernel_batch(pts, x[None, :], method, inverse=True).multivectors()
    right = kernel_batch(y[None, :], pts, method).multivectors()
    lhs = sphere.integrate(gp_arrays(left, right, m))
    lam = (m - 2) / 2
    u = r * math.sqrt(max(0.0, x @ x + y @ y - 2 * x @ y))
    rhs = 2**lam * math.gamma(lam + 1) * float(bessel_j_tilde(lam, u))
    return lhs, rhs


# ---------------------------------------------------------------------------
# convolution and smoothing


def convolve(f: CliffordFunction, g: CliffordFunction, grid: ProductGrid, eval_points,
             method: KernelMethod | None = None, route: str = "fourier",
             chunk: int = 256) -> np.ndarray:
    """``(f *_Cl g)(x) = (2 pi)^{-m/2} int tau_y f(x) g(y) dy`` at ``eval_points``.

    ``route`` selects how ``tau_y f`` is obtained:

    ``"fourier"``
        frequency-domain translation for every node ``y`` of ``grid`` (the
        ``y`` grid doubles as the outer frequency grid).
    ``"shift"``
        ``f`` must be radial, so ``tau_y f(x) = f(x - y)``; ``y`` runs over ``grid``.
    ``"shift-centered"``
        as ``"shift"``, but ``grid`` is a local rule placed at ``x / 2`` for each
        evaluation point.  For ``f`` and ``g`` both unit-width Gaussians times
        polynomials the integrand is ``exp(-|y - x/2|^2)`` times a polynomial,
        so ``fullspace_rule(m, n, scale=1/sqrt(2))`` with small ``n`` is exact.
    """
    m = grid.dim
    _require_even(m)
    x = np.atleast_2d(np.asarray(eval_points, dtype=float))
    out = np.zeros((x.shape[0], 1 << m), dtype=np.complex128)
    if route in ("shift", "shift-centered"):
        st = f.structure
        if st is None or st.ell != 0 or st.times_x or st.monogenic.degrees() != {0}:
            raise ValueError("the shift routes need a radial scalar f")
        scal = st.monogenic.terms[(0,) * m][0]
        if route == "shift":
            gy = g.sample(grid) * grid.weights[:, None]
            for s0 in range(0, x.shape[0], chunk):
                d = np.linalg.norm(x[s0 : s0 + chunk, None, :] - grid.nodes[None, :, :], axis=-1)
                out[s0 : s0 + chunk] = (scal * np.asarray(st.profile(d))) @ gy
        else:
            step = max(1, chunk * 64 // max(len(grid), 1))
            for s0 in range(0, x.shape[0], step):
                xs = x[s0 : s0 + step]
                ys = 0.5 * xs[:, None, :] + grid.nodes[None, :, :]
                fx = scal * np.asarray(st.profile(np.linalg.norm(xs[:, None, :] - ys, axis=-1)))
                gv = g(ys)
                out[s0 : s0 + step] = np.einsum("pn,n,pnc->pc", fx, grid.weights, gv)
        return out * (2 * math.pi) ** (-m / 2)
    if route != "fourier":
        raise ValueError(f"unknown convolution route {route!r}")
    plan = TranslationPlan(m, np.zeros(m), grid, method)
    spec = plan.spectrum(f)
    synth = plan.synthesis(x)
    gy = g.sample(grid) * grid.weights[:, None]
    for yn, wg in zip(grid.nodes, gy):
        if not np.any(wg):
            continue
        shift = kernel_batch(yn[None, :], plan.grid.nodes, plan.method)
        tau = synth.apply(kernel_times(shift, spec))
        out += gp_arrays(tau, wg[None, :], m)
    return out * (2 * math.pi) ** (-m / 2)


def gaussian_smooth(f: CliffordFunction, t: float, eval_points, grid: ProductGrid,
                    method: KernelMethod | None = None) -> np.ndarray:
    """``phi_t *_Cl f(x) = (2 pi)^{-m/2} int K_-(xi, x) F_- f(xi) phi(sqrt(t) xi) dxi``.

    ``phi(x) = exp(-|x|^2 / 2)``.  As ``t -> 0`` this tends to ``f``.
    """
    if t <= 0:
        raise ValueError("smoothing parameter t must be positive")
    m = grid.dim
    _require_even(m)
    plan = TranslationPlan(m, np.zeros(m), grid, method)
    spec = plan.spectrum(f)
    outer = plan.grid
    damp = np.exp(-0.5 * t * np.sum(outer.nodes**2, axis=1))
    synth = QuadratureTransform(outer, eval_points, "minus", plan.method)
    return synth.apply(spec * damp[:, None])
