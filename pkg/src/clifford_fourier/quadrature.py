"""Quadrature rules: intervals, unit spheres, radial half-lines and full space.

Full-space and radial rules store *raw* weights: ``sum(w * g(nodes))``
approximates ``int g`` directly, with the Gaussian weight function of the
underlying Gauss rule already divided out.  They are accurate for integrands
that are (roughly) a Gaussian times a smooth, slowly growing function.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sps


@dataclass(frozen=True)
class ProductGrid:
    """Nodes of shape ``(n, d)`` with positive weights of shape ``(n,)``.

    ``kind`` is one of ``"interval"``, ``"sphere"``, ``"radial"``, ``"fullspace"``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    dim: int

    def __post_init__(self):
        if self.nodes.shape[0] != self.weights.shape[0]:
            raise ValueError("nodes and weights differ in length")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self) -> int:
        return self.weights.size

    def integrate(self, values) -> np.ndarray:
        """``sum_n w_n values[n]`` over the leading axis."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def scaled(self, factor: float) -> "ProductGrid":
        """The rule for ``x -> factor * x`` (full-space/radial kinds)."""
        d = self.dim if self.kind == "fullspace" else 1
        return ProductGrid(self.nodes * factor, self.weights * factor**d, self.kind, self.dim)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow([f"x{i + 1}" for i in range(self.nodes.shape[1])] + ["weight"])
            for node, w in zip(self.nodes, self.weights):
                out.writerow([repr(float(v)) for v in node] + [repr(float(w))])


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> ProductGrid:
    """Gauss-Legendre rule on ``[a, b]``; exact up to degree ``2n - 1``."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return ProductGrid((half * x + 0.5 * (a + b))[:, None], half * w, "interval", 1)


def sphere_area(m: int) -> float:
    """Surface area of the unit sphere in ``R^m``."""
    return 2 * math.pi ** (m / 2) / math.gamma(m / 2)


def sphere_rule(m: int, resolution: int = 24) -> ProductGrid:
    """Rule on the unit sphere ``S^{m-1}`` normalized to total mass 1.

    ``m = 2``: equally spaced angles.  ``m = 3``: Gauss-Legendre in
    ``cos(theta)`` times equally spaced azimuths.  ``m = 4``: Gauss-Jacobi with
    weight ``sqrt(1 - t^2)`` in the first polar cosine, Gauss-Legendre in the
    second, equally spaced azimuths.
    """
    if resolution < 8:
        raise ValueError("sphere resolution must be at least 8")
    n = resolution
    if m == 2:
        phi = 2 * np.pi * np.arange(n) / n
        nodes = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        weights = np.full(n, 1.0 / n)
    elif m == 3:
        t, wt = np.polynomial.legendre.leggauss(n)
        phi = 2 * np.pi * np.arange(2 * n) / (2 * n)
        T, P = np.meshgrid(t, phi, indexing="ij")
        st = np.sqrt(1 - T**2)
        nodes = np.stack([T, st * np.cos(P), st * np.sin(P)], axis=-1).reshape(-1, 3)
        weights = np.repeat(wt, 2 * n) / (2.0 * 2 * n)
    elif m == 4:
        t1, w1 = sps.roots_jacobi(n, 0.5, 0.5)
        t2, w2 = np.polynomial.legendre.leggauss(n)
        phi = 2 * np.pi * np.arange(2 * n) / (2 * n)
        T1, T2, P = np.meshgrid(t1, t2, phi, indexing="ij")
        s1 = np.sqrt(1 - T1**2)
        s2 = np.sqrt(1 - T2**2)
        nodes = np.stack(
            [T1, s1 * T2, s1 * s2 * np.cos(P), s1 * s2 * np.sin(P)], axis=-1
        ).reshape(-1, 4)
        weights = (w1[:, None, None] * w2[None, :, None] * np.ones(2 * n)).reshape(-1)
        weights = weights / weights.sum()
    else:
        raise ValueError(f"sphere rules are available for m in {{2, 3, 4}}, got {m}")
    return ProductGrid(nodes, weights, "sphere", m)


def radial_rule(n: int, scale: float = 1.0, m: float = 1.0) -> ProductGrid:
    """Rule for ``int_0^inf g(r) r^{m-1} dr`` with ``g`` of Gaussian decay.

    Generalized Gauss-Laguerre in ``u = r^2 / 2`` (parameter ``m/2 - 1``); the
    factor ``r^{m-1}`` is folded into the weights.  ``scale`` stretches the rule
    for profiles decaying like ``exp(-r^2 / (2 scale^2))``.  ``m`` may be any
    real number above 0 (it sets the Laguerre parameter).
    """
    if n < 8:
        raise ValueError("radial rule needs at least 8 nodes")
    if m <= 0:
        raise ValueError("radial exponent must be positive")
    alpha = m / 2.0 - 1.0
    u, w = sps.roots_genlaguerre(n, alpha)
    keep = w > 0
    u, w = u[keep], w[keep]
    weights = 2.0 ** alpha * np.exp(np.log(w) + u)
    r = np.sqrt(2.0 * u)
    return ProductGrid((r * scale)[:, None], weights * scale**m, "radial", int(round(m)))


def fullspace_rule(m: int, n: int = 24, style: str = "tensor", sphere_resolution: int | None = None,
                   scale: float = 1.0) -> ProductGrid:
    """Rule for ``int_{R^m} g(x) dx`` with ``g`` of Gaussian decay.

    ``style="tensor"``: ``n`` Gauss-Hermite nodes per axis for the weight
    ``exp(-x_i^2 / 2)``.  ``style="polar"``: :func:`radial_rule` with ``n``
    nodes times :func:`sphere_rule`.
    """
    if n < 8:
        raise ValueError("full-space rule needs at least 8 nodes per direction")
    if style == "tensor":
        x, w = np.polynomial.hermite_e.hermegauss(n)
        w = w * np.exp(x**2 / 2)
        grids = np.meshgrid(*([x] * m), indexing="ij")
        nodes = np.stack([g.reshape(-1) for g in grids], axis=1)
        weights = np.ones(1)
        for _ in range(m):
            weights = np.multiply.outer(weights, w).reshape(-1)
    elif style == "polar":
        if m not in (2, 3, 4):
            raise ValueError("polar full-space rules need m in {2, 3, 4}")
        rad = radial_rule(n, 1.0, m)
        sph = sphere_rule(m, sphere_resolution or max(8, n // 2))
        nodes = (rad.nodes[:, None, :] * sph.nodes[None, :, :]).reshape(-1, m)
        weights = (rad.weights[:, None] * sph.weights[None, :]).reshape(-1) * sphere_area(m)
    else:
        raise ValueError(f"unknown full-space style {style!r}")
    grid = ProductGrid(nodes, weights, "fullspace", m)
    return grid.scaled(scale) if scale != 1.0 else grid
