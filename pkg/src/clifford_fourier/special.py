"""Bessel, Gegenbauer, Legendre and Laguerre functions on real arguments.

All functions broadcast over numpy arrays.  Polynomials are evaluated by
upward three-term recurrence in the degree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sps

MAX_Z = 100.0
MAX_ALPHA = 60.0


@dataclass(frozen=True)
class SpecialFnConfig:
    """Evaluation knobs for :func:`bessel_j_tilde`.

    ``series_terms`` terms of the power series in ``t**2`` are used for
    ``t <= series_max_t``; beyond that ``J_alpha(t) / t**alpha`` is formed
    from the library Bessel routine, where the quotient is harmless.
    """

    series_terms: int = 40
    series_max_t: float = 2.0

    def __post_init__(self):
        if self.series_terms < 10:
            raise ValueError("series_terms must be at least 10")
        if self.series_max_t <= 0:
            raise ValueError("series_max_t must be positive")


DEFAULT_CONFIG = SpecialFnConfig()


def _check_bessel_args(alpha, z) -> None:
    alpha = np.asarray(alpha, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(alpha < 0) or np.any(alpha > MAX_ALPHA):
        raise ValueError(f"Bessel order must lie in [0, {MAX_ALPHA}]")
    if np.any(z < 0) or np.any(z > MAX_Z) or np.any(~np.isfinite(z)):
        raise ValueError(f"Bessel argument must lie in [0, {MAX_Z}]")


def bessel_j(alpha, z, config: SpecialFnConfig = DEFAULT_CONFIG):
    """Bessel function of the first kind ``J_alpha(z)`` for real ``z >= 0``.

    Small arguments go through the ascending series (the library routine
    underflows to 0 for tiny ``z`` and fractional order).
    """
    _check_bessel_args(alpha, z)
    alpha, z = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(z, float))
    small = z <= config.series_max_t
    out = sps.jv(alpha, z)
    if np.any(small):
        out = np.where(small, bessel_j_tilde(alpha, z, config, check=False) * z**alpha, out)
    return out if out.ndim else float(out)


def bessel_j_tilde(alpha, t, config: SpecialFnConfig = DEFAULT_CONFIG, check: bool = True):
    """``t**(-alpha) J_alpha(t)``, continued to ``t = 0``.

    Near the origin the ascending series in ``t**2`` is summed directly, so no
    division by a small power of ``t`` ever happens.  ``check=False`` lifts the
    argument range limit; quadrature code uses it at nodes whose weight makes
    the value irrelevant.
    """
    if check:
        _check_bessel_args(alpha, t)
    alpha, t = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(t, float))
    out = np.empty(t.shape)
    small = t <= config.series_max_t
    if np.any(small):
        a = alpha[small]
        q = -0.25 * t[small] ** 2
        # term_n = (-t^2/4)^n / (n! Gamma(n + alpha + 1)) / 2^alpha
        term = 1.0 / (2.0**a * sps.gamma(a + 1.0))
        total = term.copy()
        for n in range(1, config.series_terms):
            term = term * q / (n * (n + a))
            total = total + term
            if not np.any(np.abs(term) > 1e-17 * np.abs(total)):
                break
        out[small] = total
    big = ~small
    if np.any(big):
        out[big] = sps.jv(alpha[big], t[big]) / t[big] ** alpha[big]
    return out if out.ndim else float(out)


def gegenbauer_table(n: int, lam: float, w) -> np.ndarray:
    """``C_k^lam(w)`` for ``k = 0..n``; shape ``(n + 1,) + shape(w)``."""
    if lam <= 0:
        raise ValueError("Gegenbauer parameter must be positive")
    w = np.asarray(w, dtype=float)
    out = np.empty((n + 1,) + w.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = 2.0 * lam * w
    for k in range(2, n + 1):
        out[k] = (2.0 * (k + lam - 1.0) * w * out[k - 1] - (k + 2.0 * lam - 2.0) * out[k - 2]) / k
    return out


def gegenbauer(k: int, lam: float, w):
    """Gegenbauer polynomial ``C_k^lam(w)``; negative degrees give 0."""
    if lam <= 0:
        raise ValueError("Gegenbauer parameter must be positive")
    if k < 0:
        return np.zeros_like(np.asarray(w, dtype=float))
    return gegenbauer_table(k, lam, w)[k]


def gegenbauer_deriv(k: int, lam: float, w):
    """``d/dw C_k^lam(w) = 2 lam C_{k-1}^{lam+1}(w)``."""
    return 2.0 * lam * gegenbauer(k - 1, lam + 1.0, w)


def legendre(k: int, w):
    return gegenbauer(k, 0.5, w)


def laguerre(j: int, alpha: float, x):
    """Generalized Laguerre polynomial ``L_j^alpha(x)``."""
    if alpha <= -1:
        raise ValueError("Laguerre parameter must exceed -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if j == 0:
        return prev
    cur = 1.0 + alpha - x
    for n in range(2, j + 1):
        prev, cur = cur, ((2 * n - 1 + alpha - x) * cur - (n - 1 + alpha) * prev) / n
    return cur
