"""Clifford algebra Cl(0, m) with complex coefficients.

Elements are stored densely: ``coeffs[mask]`` is the coefficient of the blade
``e_{i1} e_{i2} ... e_{ik}`` whose generators are the set bits of ``mask``
(bit ``i`` <-> ``e_{i+1}``), factors in increasing index order.  Every
generator squares to -1 and distinct generators anticommute.

All blade signs in the package come from :func:`blade_sign`.
"""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations

import numpy as np

MAX_DIM = 8


class DimensionError(ValueError):
    """Operands live in algebras of different dimension."""


def _popcount(n: int) -> int:
    return bin(n).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign of ``e_A e_B = sign * e_{A xor B}`` in Cl(0, m).

    The sign collects one factor -1 per transposition needed to sort the
    concatenated generator word, and one factor -1 per repeated generator
    (``e_i^2 = -1``).
    """
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += _popcount(rest & b)
        rest >>= 1
    swaps += _popcount(a & b)
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def product_tables(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(index, sign)`` arrays with ``e_a e_b = sign[a, b] e_{index[a, b]}``."""
    n = 1 << m
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    index = a ^ b
    sign = np.array([[blade_sign(i, j) for j in range(n)] for i in range(n)], dtype=np.int8)
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


@lru_cache(maxsize=None)
def grades(m: int) -> np.ndarray:
    g = np.array([_popcount(k) for k in range(1 << m)])
    g.setflags(write=False)
    return g


@lru_cache(maxsize=None)
def bivector_pairs(m: int) -> tuple[tuple[int, int], ...]:
    """Zero-based index pairs ``(j, k)``, ``j < k``, in lexicographic order."""
    return tuple(combinations(range(m), 2))


def blade_mask(*indices: int) -> int:
    """Bitmask of the blade ``e_{i1} ... e_{ik}`` (one-based, increasing indices)."""
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def blade_label(mask: int) -> str:
    """``0`` for the scalar, otherwise the one-based generator indices, e.g. ``12``."""
    if mask == 0:
        return "0"
    return "".join(str(i + 1) for i in range(MAX_DIM) if mask >> i & 1)


# ---------------------------------------------------------------------------
# batched array kernels; arrays have shape (..., 2**m)


def gp_arrays(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Geometric product of coefficient arrays, broadcasting leading axes."""
    index, sign = product_tables(m)
    n = 1 << m
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (n,)
    out = np.zeros(shape, dtype=np.result_type(a, b, np.complex128))
    for i in range(n):
        ai = a[..., i : i + 1]
        if not np.any(ai):
            continue
        out[..., index[i]] += sign[i] * ai * b
    return out


def left_blade_arrays(mask: int, f: np.ndarray, m: int) -> np.ndarray:
    """``e_mask * f`` for a batch of coefficient arrays ``f``."""
    index, sign = product_tables(m)
    out = np.empty_like(f)
    out[..., index[mask]] = sign[mask] * f
    return out


def right_blade_arrays(f: np.ndarray, mask: int, m: int) -> np.ndarray:
    """``f * e_mask`` for a batch of coefficient arrays ``f``."""
    index, sign = product_tables(m)
    out = np.empty_like(f)
    out[..., index[:, mask]] = sign[:, mask] * f
    return out


def vector_arrays(x: np.ndarray) -> np.ndarray:
    """Embed real vectors of shape (..., m) as grade-1 coefficient arrays."""
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    out = np.zeros(x.shape[:-1] + (1 << m,), dtype=np.complex128)
    for i in range(m):
        out[..., 1 << i] = x[..., i]
    return out


def wedge_components(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Components ``x_j y_k - x_k y_j`` for ``j < k``, shape (..., m(m-1)/2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = x.shape[-1]
    pairs = bivector_pairs(m)
    if not pairs:
        return np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1] + (0,))
    j = np.array([p[0] for p in pairs])
    k = np.array([p[1] for p in pairs])
    return x[..., j] * y[..., k] - x[..., k] * y[..., j]


# ---------------------------------------------------------------------------


class Multivector:
    """Immutable element of Cl(0, m) with complex coefficients."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        if not 0 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in [0, {MAX_DIM}], got {dim}")
        n = 1 << dim
        if coeffs is None:
            arr = np.zeros(n, dtype=np.complex128)
        else:
            arr = np.array(coeffs, dtype=np.complex128).reshape(-1)
            if arr.shape != (n,):
                raise ValueError(f"expected {n} coefficients, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # construction -----------------------------------------------------------
    @classmethod
    def scalar(cls, dim: int, value: complex = 1.0) -> "Multivector":
        c = np.zeros(1 << dim, dtype=np.complex128)
        c[0] = value
        return cls(dim, c)

    @classmethod
    def blade(cls, dim: int, *indices: int, value: complex = 1.0) -> "Multivector":
        """``value * e_{i1} ... e_{ik}``; indices are one-based and need not be sorted."""
        out = cls.scalar(dim, value)
        for i in indices:
            if not 1 <= i <= dim:
                raise ValueError(f"generator e_{i} does not exist in dimension {dim}")
            out = out * cls.basis_vector(dim, i)
        return out

    @classmethod
    def basis_vector(cls, dim: int, i: int) -> "Multivector":
        c = np.zeros(1 << dim, dtype=np.complex128)
        c[1 << (i - 1)] = 1.0
        return cls(dim, c)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "Multivector") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.dim, self.coeffs + other.coeffs)
        if np.isscalar(other):
            return self + Multivector.scalar(self.dim, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.dim, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return self + (-other)
        if np.isscalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if np.isscalar(other):
            return Multivector(self.dim, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.dim, other * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self.dim, self.coeffs / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __getitem__(self, mask: int) -> complex:
        return complex(self.coeffs[mask])

    def __repr__(self):
        terms = [
            f"({c.real:.6g}{c.imag:+.6g}j)*e{blade_label(k)}"
            for k, c in enumerate(self.coeffs)
            if c != 0
        ]
        return f"Multivector(dim={self.dim}: {' + '.join(terms) or '0'})"

    # helpers ----------------------------------------------------------------
    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def norm(self) -> float:
        """Max-abs over coefficients."""
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def allclose(self, other: "Multivector", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        self._check(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    def to_json(self) -> str:
        return json.dumps(to_dict(self))


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return Multivector(a.dim, gp_arrays(a.coeffs, b.coeffs, a.dim))


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    return v


def embed_vector(x) -> Multivector:
    """The vector variable ``sum_i x_i e_i``."""
    v = _as_vector(x)
    return Multivector(v.size, vector_arrays(v))


def inner(x, y) -> float:
    u, v = _as_vector(x), _as_vector(y)
    if u.size != v.size:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    return float(u @ v)


def wedge(x, y) -> Multivector:
    """Bivector ``sum_{j<k} e_j e_k (x_j y_k - x_k y_j)``."""
    u, v = _as_vector(x), _as_vector(y)
    if u.size != v.size:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    m = u.size
    c = np.zeros(1 << m, dtype=np.complex128)
    for (j, k), w in zip(bivector_pairs(m), wedge_components(u, v)):
        c[(1 << j) | (1 << k)] = w
    return Multivector(m, c)


def grade_part(a: Multivector, k: int) -> Multivector:
    return Multivector(a.dim, np.where(grades(a.dim) == k, a.coeffs, 0))


def conj(a: Multivector) -> Multivector:
    """Complex conjugate of every coefficient; the blades are untouched."""
    return Multivector(a.dim, np.conj(a.coeffs))


def to_dict(a: Multivector) -> dict:
    return {
        "dim": a.dim,
        "coeffs": {
            str(k): [float(c.real), float(c.imag)] for k, c in enumerate(a.coeffs) if c != 0
        },
    }


def from_dict(d: dict) -> Multivector:
    m = int(d["dim"])
    c = np.zeros(1 << m, dtype=np.complex128)
    for key, (re, im) in d["coeffs"].items():
        mask = int(key)
        if not 0 <= mask < (1 << m):
            raise ValueError(f"blade mask {mask} out of range for dimension {m}")
        c[mask] = complex(re, im)
    return Multivector(m, c)


def from_json(text: str) -> Multivector:
    return from_dict(json.loads(text))
