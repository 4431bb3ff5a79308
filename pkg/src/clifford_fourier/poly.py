"""Polynomials in ``x_1..x_m`` with Clifford-algebra coefficients.

A :class:`PolyMV` maps exponent tuples to dense coefficient arrays.  The
module provides the Dirac, Euler, Laplace and Gamma operators, the Fischer
projections of a harmonic polynomial onto ``M_k`` and ``x M_{k-1}``, and a
basis of spherical monogenics built from real harmonics.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

import numpy as np
from scipy.linalg import null_space

from .algebra import Multivector, blade_label, gp_arrays, left_blade_arrays

ZERO_TOL = 0.0


class PolyMV:
    """Immutable polynomial ``sum_alpha c_alpha x^alpha`` with multivector ``c_alpha``."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        clean = {}
        n = 1 << dim
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dim:
                raise ValueError(f"exponent {alpha} does not match dimension {dim}")
            c = np.asarray(c.coeffs if isinstance(c, Multivector) else c, dtype=np.complex128)
            if c.shape != (n,):
                raise ValueError("coefficient has the wrong number of blades")
            if np.any(np.abs(c) > ZERO_TOL):
                clean[alpha] = c
        self.terms = dict(sorted(clean.items()))

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "PolyMV":
        return cls(dim)

    @classmethod
    def constant(cls, mv: Multivector) -> "PolyMV":
        return cls(mv.dim, {(0,) * mv.dim: mv.coeffs})

    @classmethod
    def monomial(cls, alpha: Iterable[int], coeff: Multivector | complex = 1.0, dim: int | None = None):
        alpha = tuple(alpha)
        m = len(alpha) if dim is None else dim
        if isinstance(coeff, Multivector):
            c = coeff.coeffs
        else:
            c = np.zeros(1 << m, dtype=np.complex128)
            c[0] = coeff
        return cls(m, {alpha: c})

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "PolyMV":
        """The coordinate function ``x_i`` (one-based)."""
        alpha = [0] * dim
        alpha[i - 1] = 1
        return cls.monomial(alpha, 1.0, dim)

    @classmethod
    def vector_variable(cls, dim: int) -> "PolyMV":
        """``x = sum_i e_i x_i``."""
        terms = {}
        for i in range(dim):
            alpha = [0] * dim
            alpha[i] = 1
            c = np.zeros(1 << dim, dtype=np.complex128)
            c[1 << i] = 1.0
            terms[tuple(alpha)] = c
        return cls(dim, terms)

    @classmethod
    def norm_squared(cls, dim: int) -> "PolyMV":
        terms = {}
        for i in range(dim):
            alpha = [0] * dim
            alpha[i] = 2
            c = np.zeros(1 << dim, dtype=np.complex128)
            c[0] = 1.0
            terms[tuple(alpha)] = c
        return cls(dim, terms)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "PolyMV"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "PolyMV") -> "PolyMV":
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return PolyMV(self.dim, terms)

    def __neg__(self) -> "PolyMV":
        return PolyMV(self.dim, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "PolyMV") -> "PolyMV":
        return self + (-other)

    def scale(self, s: complex) -> "PolyMV":
        return PolyMV(self.dim, {a: s * c for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyMV):
            self._check(other)
            terms: dict = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    e = tuple(i + j for i, j in zip(a, b))
                    prod = gp_arrays(ca, cb, self.dim)
                    terms[e] = terms[e] + prod if e in terms else prod
            return PolyMV(self.dim, terms)
        if isinstance(other, Multivector):
            return self * PolyMV.constant(other)
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return PolyMV.constant(other) * self
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    # inspection -------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {sum(a) for a in self.terms}

    def is_homogeneous(self, k: int) -> bool:
        return self.degrees() <= {k}

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(c))) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs() <= tol

    def homogeneous_part(self, k: int) -> "PolyMV":
        return PolyMV(self.dim, {a: c for a, c in self.terms.items() if sum(a) == k})

    def __call__(self, x) -> np.ndarray:
        """Evaluate at points of shape ``(..., m)``; returns ``(..., 2**m)``."""
        x = np.asarray(x, dtype=float)
        if not self.terms:
            return np.zeros(x.shape[:-1] + (1 << self.dim,), dtype=np.complex128)
        exps = np.array(list(self.terms), dtype=int)
        coeffs = np.array(list(self.terms.values()))
        flat = x.reshape(-1, self.dim)
        # powers[d, :, i] = x_i ** d, then one product per term
        powers = np.ones((int(exps.max()) + 1,) + flat.shape)
        for d in range(1, powers.shape[0]):
            powers[d] = powers[d - 1] * flat
        mono = np.ones((flat.shape[0], len(exps)))
        for i in range(self.dim):
            mono *= powers[exps[:, i], :, i].T
        return (mono @ coeffs).reshape(x.shape[:-1] + (1 << self.dim,))

    def __repr__(self) -> str:
        parts = []
        for a, c in self.terms.items():
            mono = "*".join(f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}" for i, p in enumerate(a) if p)
            blades = " + ".join(
                f"({v.real:.6g}{v.imag:+.6g}j)e{blade_label(b)}" for b, v in enumerate(c) if v != 0
            )
            parts.append(f"[{blades}]{'*' + mono if mono else ''}")
        return f"PolyMV(dim={self.dim}: {' + '.join(parts) or '0'})"


# ---------------------------------------------------------------------------
# operators


def partial(p: PolyMV, i: int) -> PolyMV:
    """``d/dx_{i+1}`` (zero-based ``i``)."""
    terms: dict = {}
    for a, c in p.terms.items():
        if a[i] == 0:
            continue
        b = list(a)
        b[i] -= 1
        b = tuple(b)
        v = a[i] * c
        terms[b] = terms[b] + v if b in terms else v
    return PolyMV(p.dim, terms)


def dirac(p: PolyMV) -> PolyMV:
    """``sum_i e_i d/dx_i p`` with ``e_i`` acting from the left."""
    out = PolyMV.zero(p.dim)
    for i in range(p.dim):
        d = partial(p, i)
        out = out + PolyMV(p.dim, {a: left_blade_arrays(1 << i, c, p.dim) for a, c in d.terms.items()})
    return out


def mul_x(p: PolyMV) -> PolyMV:
    """Left multiplication by the vector variable ``x``."""
    terms: dict = {}
    for i in range(p.dim):
        for a, c in p.terms.items():
            b = list(a)
            b[i] += 1
            b = tuple(b)
            v = left_blade_arrays(1 << i, c, p.dim)
            terms[b] = terms[b] + v if b in terms else v
    return PolyMV(p.dim, terms)


def mul_norm_sq(p: PolyMV) -> PolyMV:
    return PolyMV.norm_squared(p.dim) * p


def euler(p: PolyMV) -> PolyMV:
    return PolyMV(p.dim, {a: sum(a) * c for a, c in p.terms.items()})


def laplace(p: PolyMV) -> PolyMV:
    out = PolyMV.zero(p.dim)
    for i in range(p.dim):
        out = out + partial(partial(p, i), i)
    return out


def gamma(p: PolyMV) -> PolyMV:
    """The angular operator ``Gamma = -x d_x - E``."""
    return -(mul_x(dirac(p)) + euler(p))


# ---------------------------------------------------------------------------
# Fischer decomposition and bases


def _check_harmonic(h: PolyMV, k: int, tol: float = 1e-9) -> None:
    if not h.is_homogeneous(k):
        raise ValueError(f"polynomial is not homogeneous of degree {k}")
    # the Laplacian carries a factor of order k^2
    scale = max(1.0, h.max_abs()) * max(1, k * k)
    if not laplace(h).is_zero(tol * scale):
        raise ValueError("polynomial is not harmonic")


def fischer_project(h: PolyMV, k: int) -> tuple[PolyMV, PolyMV]:
    """Split a harmonic ``H`` of degree ``k`` into ``M_k + x M_{k-1}``.

    ``M_k = (1 + x d/(2k+m-2)) H`` and ``x M_{k-1} = -(x d/(2k+m-2)) H``.
    """
    _check_harmonic(h, k)
    denom = 2 * k + h.dim - 2
    if denom == 0:  # m = 2, k = 0: constants are monogenic
        return h, PolyMV.zero(h.dim)
    xd = mul_x(dirac(h)).scale(1.0 / denom)
    return h + xd, -xd


def gamma_exp_on_harmonic(h: PolyMV, k: int, phase: float) -> PolyMV:
    """``exp(i phase Gamma) H`` using ``Gamma = -k`` on ``M_k`` and ``k+m-2`` on ``x M_{k-1}``."""
    mk, xmk = fischer_project(h, k)
    m = h.dim
    return mk.scale(np.exp(-1j * phase * k)) + xmk.scale(np.exp(1j * phase * (k + m - 2)))


@lru_cache(maxsize=None)
def monomial_exponents(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of degree ``k`` in lexicographically decreasing order."""
    out = []
    for combo in combinations_with_replacement(range(m), k):
        alpha = [0] * m
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return tuple(sorted(set(out), reverse=True))


def _laplace_matrix(m: int, k: int) -> np.ndarray:
    rows = {a: i for i, a in enumerate(monomial_exponents(m, k - 2))}
    cols = monomial_exponents(m, k)
    mat = np.zeros((len(rows), len(cols)))
    for j, a in enumerate(cols):
        for i in range(m):
            if a[i] >= 2:
                b = list(a)
                b[i] -= 2
                mat[rows[tuple(b)], j] += a[i] * (a[i] - 1)
    return mat


def _rref_columns(basis: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Canonical basis of the column span of ``basis`` (reduced echelon form)."""
    a = basis.T.copy()
    r = 0
    for col in range(a.shape[1]):
        if r == a.shape[0]:
            break
        piv = r + int(np.argmax(np.abs(a[r:, col])))
        if abs(a[piv, col]) < tol:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] /= a[r, col]
        for i in range(a.shape[0]):
            if i != r:
                a[i] -= a[i, col] * a[r]
        r += 1
    a[np.abs(a) < tol] = 0.0
    return a[:r].T


@lru_cache(maxsize=None)
def _harmonic_coefficients(m: int, k: int) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    cols = monomial_exponents(m, k)
    if k < 2:
        return cols, np.eye(len(cols))
    return cols, _rref_columns(null_space(_laplace_matrix(m, k)))


def harmonic_basis(m: int, k: int) -> list[PolyMV]:
    """Real-valued homogeneous harmonic polynomials of degree ``k``."""
    cols, coef = _harmonic_coefficients(m, k)
    out = []
    for v in coef.T:
        out.append(PolyMV(m, {a: _scalar(m, c) for a, c in zip(cols, v) if c != 0}))
    return out


def _scalar(m: int, value: float) -> np.ndarray:
    c = np.zeros(1 << m, dtype=np.complex128)
    c[0] = value
    return c


def monogenic_basis(m: int, k: int) -> list[PolyMV]:
    """Spherical monogenics of degree ``k``: the monogenic parts of the real harmonics.

    The scalar part of each element is a nonzero multiple of the harmonic it
    came from, so the list is linearly independent.  No normalization is applied.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return [fischer_project(h, k)[0] for h in harmonic_basis(m, k)]


def random_poly(m: int, rng: np.random.Generator, max_degree: int = 4, n_terms: int = 6) -> PolyMV:
    """Random polynomial with complex multivector coefficients, for property checks."""
    terms = {}
    for _ in range(n_terms):
        k = int(rng.integers(0, max_degree + 1))
        exps = monomial_exponents(m, k)
        alpha = exps[int(rng.integers(len(exps)))]
        terms[alpha] = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return PolyMV(m, terms)


def harmonic_decomposition(p: PolyMV, k: int) -> list[PolyMV]:
    """Write a homogeneous ``p`` of degree ``k`` as ``sum_j |x|^{2j} H_{k-2j}``.

    Returns ``[H_k, H_{k-2}, ...]`` with each ``H`` harmonic (Clifford-valued
    coefficients allowed).  Solved as one linear system on the monomial basis.
    """
    if not p.is_homogeneous(k):
        raise ValueError(f"polynomial is not homogeneous of degree {k}")
    m = p.dim
    cols = monomial_exponents(m, k)
    index = {a: i for i, a in enumerate(cols)}
    blocks = []
    pieces = []
    for j in range(k // 2 + 1):
        rsq = PolyMV.norm_squared(m)
        factor = PolyMV.monomial((0,) * m, 1.0, m)
        for _ in range(j):
            factor = factor * rsq
        basis = harmonic_basis(m, k - 2 * j)
        pieces.append(basis)
        for h in basis:
            col = np.zeros(len(cols))
            for a, c in (factor * h).terms.items():
                col[index[a]] = c[0].real
            blocks.append(col)
    mat = np.array(blocks).T
    rhs = np.zeros((len(cols), 1 << m), dtype=np.complex128)
    for a, c in p.terms.items():
        rhs[index[a]] = c
    sol = np.linalg.solve(mat, rhs)
    out = []
    pos = 0
    for basis in pieces:
        h = PolyMV.zero(m)
        for b in basis:
            h = h + PolyMV(m, {a: c[0].real * sol[pos] for a, c in b.terms.items()})
            pos += 1
        out.append(h)
    return out
