"""Independent reference constructions shared by the tests.

Nothing here calls the kernel formulas under test.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np

from clifford_fourier.poly import PolyMV, gamma_exp_on_harmonic, harmonic_decomposition


def taylor_kernel(x, y, sigma: int = 1, order: int = 14) -> np.ndarray:
    """``exp(i sigma pi/2 Gamma_y) exp(-i <x, y>)`` from its Taylor series in ``y``.

    Each power ``<x, y>^n`` is split into ``|y|^{2j} H_{n-2j}(y)`` and the
    Gamma exponential acts on each harmonic piece through the Fischer
    projections.  ``sigma = 1`` gives ``K_-`` and ``sigma = -1`` gives ``K_+``.
    Accurate while ``|x||y|`` is well below 1 for the default ``order``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = x.size
    lin = PolyMV.zero(m)
    for i in range(m):
        lin = lin + PolyMV.coordinate(m, i + 1).scale(x[i])
    power = PolyMV.monomial((0,) * m, 1.0, m)
    total = np.zeros(1 << m, dtype=complex)
    r2 = float(y @ y)
    for n in range(order):
        if n:
            power = power * lin
        for j, h in enumerate(harmonic_decomposition(power, n)):
            if h.is_zero():
                continue
            g = gamma_exp_on_harmonic(h, n - 2 * j, sigma * math.pi / 2)
            total += (-1j) ** n / math.factorial(n) * r2**j * g(y)
    return total


def bessel_quad(n: int, z: float) -> float:
    """``J_n(z) = (1/pi) int_0^pi cos(n t - z sin t) dt`` by mpmath quadrature."""
    with mpmath.workdps(30):
        return float(mpmath.quad(lambda t: mpmath.cos(n * t - z * mpmath.sin(t)), [0, mpmath.pi]) / mpmath.pi)


def bessel_mp(alpha: float, z: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.besselj(alpha, z))
