"""Verification suites run by ``clifford-fourier verify``.

Each suite returns a :class:`VerificationReport`; the overall verdict is the
conjunction of its checks.  Random inputs come from ``numpy.random.default_rng``
(PCG64) seeded by the caller, so reports are reproducible bit for bit.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import algebra as alg
from . import poly as P
from . import special as sp
from .kernel import ClosedEven, Dim2, OddIntegral3, Series, kernel_batch
from .quadrature import fullspace_rule, radial_rule
from .transform import (
    BasisIndex,
    CliffordFunction,
    QuadratureTransform,
    basis_psi,
    cft_radial_monogenic,
    expected_eigenvalue,
    gaussian,
)
from .translation import TranslationPlan, translate

SUITES = ("algebra", "polyops", "specfun", "kernel", "transform", "translation")


@dataclass
class CheckResult:
    name: str
    max_error: float
    tol: float
    passed: bool
    runtime: float


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        body = {"suite": self.suite, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}
        return json.dumps(body, indent=2)


class _Runner:
    """Collects checks; ``tol_override`` replaces the tolerance of primary checks."""

    def __init__(self, suite: str, tol_override: float | None):
        self.report = VerificationReport(suite)
        self.tol_override = tol_override

    def check(self, name: str, fn: Callable[[], float], tol: float, primary: bool = False) -> None:
        if primary and self.tol_override is not None:
            tol = self.tol_override
        t0 = time.perf_counter()
        err = float(fn())
        elapsed = time.perf_counter() - t0
        # timings are rounded so repeated runs produce identical JSON
        self.report.checks.append(CheckResult(name, err, tol, bool(err <= tol), round(elapsed, 1)))


def sample_ball(rng: np.random.Generator, n: int, m: int, radius: float) -> np.ndarray:
    """``n`` points with uniform direction and radius uniform in ``[0, radius]``."""
    d = rng.normal(size=(n, m))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * rng.uniform(0.0, radius, size=(n, 1))


# ---------------------------------------------------------------------------
# algebra


def suite_algebra(seed: int = 42, samples: int = 100, tol: float | None = None, **_) -> VerificationReport:
    rng = np.random.default_rng(seed)
    run = _Runner("algebra", tol)

    def assoc():
        worst = 0.0
        for m in range(1, 6):
            for _ in range(10):
                a, b, c = (rng.normal(size=(1 << m)) + 1j * rng.normal(size=(1 << m)) for _ in range(3))
                lhs = alg.gp_arrays(alg.gp_arrays(a, b, m), c, m)
                rhs = alg.gp_arrays(a, alg.gp_arrays(b, c, m), m)
                worst = max(worst, np.abs(lhs - rhs).max() / max(1.0, np.abs(lhs).max()))
        return worst

    def anticomm():
        worst = 0.0
        for m in range(1, alg.MAX_DIM + 1):
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    ei, ej = alg.Multivector.basis_vector(m, i), alg.Multivector.basis_vector(m, j)
                    s = ei * ej + ej * ei
                    target = alg.Multivector.scalar(m, -2.0 if i == j else 0.0)
                    worst = max(worst, float(np.abs(s.coeffs - target.coeffs).max()))
        return worst

    def vector_identities():
        worst = 0.0
        for _ in range(samples):
            m = int(rng.integers(2, 7))
            x, y = rng.normal(size=m), rng.normal(size=m)
            X, Y = alg.embed_vector(x), alg.embed_vector(y)
            worst = max(worst, (X * X + alg.Multivector.scalar(m, x @ x)).norm())
            worst = max(worst, abs(alg.inner(x, y) + 0.5 * (X * Y + Y * X).scalar_part))
            worst = max(worst, (alg.wedge(x, y) - 0.5 * (X * Y - Y * X)).norm())
        return worst

    def wedge_estimate():
        worst = -np.inf
        for _ in range(samples):
            m = int(rng.integers(2, 7))
            x, y = rng.normal(size=m), rng.normal(size=m)
            t = math.sqrt(max(0.0, (x @ x) * (y @ y) - (x @ y) ** 2))
            comps = alg.wedge_components(x, y)
            worst = max(worst, float(np.max(np.abs(comps))) - t)
        return max(worst, 0.0)

    run.check("associativity", assoc, 1e-12, primary=True)
    run.check("anticommutation", anticomm, 0.0)
    run.check("vector identities", vector_identities, 1e-12)
    run.check("wedge component estimate", wedge_estimate, 1e-12)
    return run.report


# ---------------------------------------------------------------------------
# polynomial operators


def osp_residuals(p: P.PolyMV) -> dict[str, float]:
    """Residual sup-norms of the osp(1|2) relations applied to ``p``."""
    m = p.dim
    x, d, r2 = P.mul_x, P.dirac, P.mul_norm_sq

    def e(q):  # E + m/2
        return P.euler(q) + q.scale(m / 2)

    lap = P.laplace
    rel = {
        "{x,x} = -2|x|^2": x(x(p)).scale(2) + r2(p).scale(2),
        "{d,d} = -2 Lap": d(d(p)).scale(2) + lap(p).scale(2),
        "{x,d} = -2(E+m/2)": x(d(p)) + d(x(p)) + e(p).scale(2),
        "[E+m/2,d] = -d": e(d(p)) - d(e(p)) + d(p),
        "[|x|^2,d] = -2x": r2(d(p)) - d(r2(p)) + x(p).scale(2),
        "[E+m/2,x] = x": e(x(p)) - x(e(p)) - x(p),
        "[Lap,x] = 2d": lap(x(p)) - x(lap(p)) - d(p).scale(2),
        "[E+m/2,Lap] = -2Lap": e(lap(p)) - lap(e(p)) + lap(p).scale(2),
        "[Lap,|x|^2] = 4(E+m/2)": lap(r2(p)) - r2(lap(p)) - e(p).scale(4),
        "[E+m/2,|x|^2] = 2|x|^2": e(r2(p)) - r2(e(p)) - r2(p).scale(2),
    }
    scale = max(1.0, p.max_abs())
    return {k: v.max_abs() / scale for k, v in rel.items()}


def suite_polyops(seed: int = 42, samples: int = 20, tol: float | None = None, **_) -> VerificationReport:
    rng = np.random.default_rng(seed)
    run = _Runner("polyops", tol)
    polys = {m: [P.random_poly(m, rng) for _ in range(samples)] for m in (2, 3, 4)}

    def osp():
        return max(max(osp_residuals(p).values()) for ps in polys.values() for p in ps)

    def gamma_radial():
        worst = 0.0
        for ps in polys.values():
            for p in ps:
                diff = P.gamma(P.mul_norm_sq(p)) - P.mul_norm_sq(P.gamma(p))
                worst = max(worst, diff.max_abs() / max(1.0, p.max_abs()))
        return worst

    def monogenics():
        worst = 0.0
        for m in (2, 3, 4):
            for k in range(4):
                for M in P.monogenic_basis(m, k):
                    s = max(1.0, M.max_abs())
                    worst = max(worst, P.dirac(M).max_abs() / s, (P.gamma(M) + M.scale(k)).max_abs() / s)
        return worst

    run.check("osp(1|2) relations", osp, 1e-10, primary=True)
    run.check("Gamma commutes with |x|^2", gamma_radial, 1e-10)
    run.check("monogenic basis: Dirac kernel and Gamma = -k", monogenics, 1e-12)
    return run.report


# ---------------------------------------------------------------------------
# special functions


def suite_specfun(seed: int = 42, samples: int = 50, tol: float | None = None, **_) -> VerificationReport:
    rng = np.random.default_rng(seed)
    run = _Runner("specfun", tol)

    def bessel_integral():
        # J_n(z) = (1/pi) int_0^pi cos(n th - z sin th) d th, Gauss-Legendre with 200 nodes
        th, w = np.polynomial.legendre.leggauss(200)
        th = 0.5 * np.pi * (th + 1)
        w = 0.5 * np.pi * w
        worst = 0.0
        for _ in range(samples):
            n, z = int(rng.integers(0, 6)), rng.uniform(0, 30)
            ref = w @ np.cos(n * th - z * np.sin(th)) / np.pi
            worst = max(worst, abs(sp.bessel_j(n, z) - ref))
        return worst

    def tilde_continuity():
        worst = 0.0
        for a in (0.0, 0.5, 1.0, 2.0, 3.5):
            at0 = 1.0 / (2**a * math.gamma(a + 1))
            worst = max(worst, abs(sp.bessel_j_tilde(a, 0.0) - at0))
            for t in (1.9999, 2.0001):
                worst = max(worst, abs(sp.bessel_j_tilde(a, t) - sp.bessel_j(a, t) / t**a))
        return worst

    def gegenbauer_ids():
        worst = 0.0
        for _ in range(samples):
            n = int(rng.integers(2, 15))
            lam = rng.uniform(0.2, 4.0)
            w = rng.uniform(-1, 1)
            g = sp.gegenbauer
            e27 = (lam + n) / lam * g(n, lam, w) - (g(n, lam + 1, w) - g(n - 2, lam + 1, w))
            e28 = w * g(n - 1, lam + 1, w) - (
                n / (2 * (n + lam)) * g(n, lam + 1, w) + (n + 2 * lam) / (2 * (n + lam)) * g(n - 2, lam + 1, w)
            )
            e29 = g(n, lam + 1, w) - sum((lam + n - 2 * k) / lam * g(n - 2 * k, lam, w) for k in range(n // 2 + 1))
            worst = max(worst, abs(e27), abs(e28), abs(e29))
        return worst

    def legendre_generating():
        worst = 0.0
        for _ in range(samples):
            r, th = rng.uniform(0, 2), rng.uniform(0, np.pi)
            s = sum(sp.legendre(n, math.cos(th)) * r**n / math.factorial(n) for n in range(31))
            ref = math.exp(r * math.cos(th)) * sp.bessel_j(0, r * math.sin(th))
            worst = max(worst, abs(s - ref))
        return worst

    def laguerre_hankel():
        worst = 0.0
        for lam in (0.0, 0.5, 1.0):
            grid = radial_rule(150, 1.0, 2 * lam + 2)
            r, wts = grid.nodes[:, 0], grid.weights
            for k in range(3):
                for j in range(3):
                    a = k + lam
                    f = r**k * sp.laguerre(j, a, r**2) * np.exp(-0.5 * r**2)
                    for s in (0.3, 1.1, 2.4):
                        z = s * r
                        val = wts @ (f * sp.bessel_j_tilde(np.full(z.shape, a), z, check=False) * z**k)
                        ref = (-1) ** j * s**k * sp.laguerre(j, a, s**2) * math.exp(-0.5 * s**2)
                        worst = max(worst, abs(val - ref))
        return worst

    run.check("Bessel J vs integral representation", bessel_integral, 1e-11, primary=True)
    run.check("normalized Bessel continuity", tilde_continuity, 1e-14)
    run.check("Gegenbauer identities", gegenbauer_ids, 1e-11)
    run.check("Legendre generating function", legendre_generating, 1e-10)
    run.check("Laguerre-Hankel eigenrelation", laguerre_hankel, 1e-7)
    return run.report


# ---------------------------------------------------------------------------
# kernel


def _laplace_y(x, y, h=1e-3, method=None):
    """Second-order central-difference Laplacian of ``K_-(x, .)`` at ``y``."""
    m = y.size
    k0 = kernel_batch(x, y, method).multivectors()
    acc = -2 * m * k0
    for i in range(m):
        e = np.zeros(m)
        e[i] = h
        acc = acc + kernel_batch(x, y + e, method).multivectors() + kernel_batch(x, y - e, method).multivectors()
    return acc / h**2, k0


def suite_kernel(dim: int = 4, seed: int = 42, samples: int = 100, tol: float | None = None,
                 terms: int = 60, **_) -> VerificationReport:
    rng = np.random.default_rng(seed)
    run = _Runner(f"kernel(m={dim})", tol)
    x = sample_ball(rng, samples, dim, 3.0)
    y = sample_ball(rng, samples, dim, 3.0)

    if dim == 2:
        def cross():
            kb = kernel_batch(x, y, Dim2()).multivectors()
            t = x[:, 0] * y[:, 1] - x[:, 1] * y[:, 0]
            return max(np.abs(kb[:, 0] - np.cos(t)).max(), np.abs(kb[:, 3] - np.sin(t)).max())

        def multiplicative():
            z = sample_ball(rng, samples, 2, 3.0)
            lhs = alg.gp_arrays(kernel_batch(x, z, Dim2()).multivectors(), kernel_batch(y, z, Dim2()).multivectors(), 2)
            return np.abs(lhs - kernel_batch(x + y, z, Dim2()).multivectors()).max()

        run.check("dim2 closed form vs rewritten form", cross, 1e-12, primary=True)
        run.check("multiplicativity", multiplicative, 1e-12)
    elif dim % 2 == 0:
        def cross():
            a = kernel_batch(x, y, ClosedEven()).components()
            b = kernel_batch(x, y, Series(terms)).components()
            return np.abs(a - b).max()

        run.check(f"closed form vs series(N={terms})", cross, 1e-8, primary=True)
    elif dim == 3:
        def cross():
            a = kernel_batch(x, y, Series(terms)).scalar
            b = kernel_batch(x, y, OddIntegral3()).scalar
            return np.abs(a - b).max()

        run.check(f"series(N={terms}) vs odd integral, scalar part", cross, 1e-7, primary=True)
    else:
        def cross():
            a = kernel_batch(x, y, Series(terms)).components()
            b = kernel_batch(x, y, Series(terms + 20)).components()
            return np.abs(a - b).max()

        run.check(f"series N={terms} vs N={terms + 20}", cross, 1e-8, primary=True)

    if dim % 2 == 0:
        run.check("even m: imaginary parts", lambda: np.abs(kernel_batch(x, y).components().imag).max(), 1e-10)

    def at_zero():
        kb = kernel_batch(x, np.zeros(dim)).multivectors()
        target = np.zeros(1 << dim)
        target[0] = 1.0
        return np.abs(kb - target).max()

    run.check("K(x, 0) = 1", at_zero, 1e-12)

    def laplacian():
        worst = 0.0
        for xi, yi in zip(x[:10], y[:10]):
            xs, ys = xi / 3, yi / 3
            lap, k0 = _laplace_y(xs, ys)
            worst = max(worst, np.abs(lap + (xs @ xs) * k0).max() / max(1.0, np.abs(k0).max()))
        return worst

    run.check("Laplacian in y equals -|x|^2 K", laplacian, 1e-4)
    return run.report


# ---------------------------------------------------------------------------
# transform


def suite_transform(dim: int = 2, seed: int = 42, samples: int = 20, tol: float | None = None,
                    grid_n: int | None = None, **_) -> VerificationReport:
    if dim not in (2, 4):
        raise ValueError("the transform suite runs for m = 2 or m = 4")
    rng = np.random.default_rng(seed)
    run = _Runner(f"transform(m={dim})", tol)
    n = grid_n or (40 if dim == 2 else 24)
    grid = fullspace_rule(dim, n)
    pts = sample_ball(rng, samples, dim, 2.5)
    base_tol = 1e-6 if dim == 2 else 1e-5
    idxs = [BasisIndex(p, j, k, 0) for p in ("even", "odd") for j in range(2) for k in range(2)]

    for sign in ("minus", "plus"):
        fwd = QuadratureTransform(grid, pts, sign)
        back = fwd.conjugate()

        def eig(fwd=fwd, sign=sign):
            worst = 0.0
            for idx in idxs:
                f = basis_psi(idx, dim)
                ref = f(pts)
                err = np.abs(fwd(f) - expected_eigenvalue(idx, sign, dim) * ref).max()
                worst = max(worst, err / np.abs(ref).max())
            return worst

        def roundtrip(back=back, sign=sign):
            # the spectrum on the grid comes from the one-dimensional radial route
            worst = 0.0
            for idx in idxs:
                f = basis_psi(idx, dim)
                ref = f(pts)
                spec = cft_radial_monogenic(f.structure, dim, grid.nodes, sign)
                worst = max(worst, np.abs(back.apply(spec) - ref).max() / np.abs(ref).max())
            return worst

        run.check(f"eigenvalues, F_{sign}", eig, base_tol, primary=True)
        run.check(f"inversion roundtrip, F_{sign}", roundtrip, base_tol)

    def gauss():
        g = gaussian(dim)
        return np.abs(QuadratureTransform(grid, pts, "minus")(g) - g(pts)).max()

    run.check("Gaussian is fixed", gauss, 1e-8)
    return run.report


# ---------------------------------------------------------------------------
# translation


def suite_translation(dim: int = 4, seed: int = 42, samples: int = 10, tol: float | None = None,
                      grid_n: int | None = None, **_) -> VerificationReport:
    if dim not in (2, 4):
        raise ValueError("the translation suite runs for m = 2 or m = 4")
    rng = np.random.default_rng(seed)
    run = _Runner(f"translation(m={dim})", tol)
    pts = sample_ball(rng, samples, dim, 2.0)
    y = sample_ball(rng, 1, dim, 1.0)[0]
    plan = TranslationPlan.default(dim, y, grid_n)

    def radial():
        f = gaussian(dim)
        return np.abs(translate(f, plan, pts) - f(pts - y)).max()

    run.check("radial Gaussian translates classically", radial, 1e-4 if dim == 4 else 1e-6, primary=True)
    if dim == 2:
        def arbitrary():
            f = schwartz_sample(2)
            return np.abs(translate(f, plan, pts) - f(pts - y)).max()

        run.check("arbitrary function translates classically", arbitrary, 1e-6)
    return run.report


def schwartz_sample(m: int) -> CliffordFunction:
    """A fixed non-radial Clifford-valued Schwartz function, used by translation checks."""
    def evaluate(x):
        out = np.zeros((x.shape[0], 1 << m), dtype=np.complex128)
        g = np.exp(-0.5 * np.sum(x**2, axis=1))
        out[:, 0] = (1 + x[:, 0] - 0.5 * x[:, 1] ** 2) * g
        out[:, 1] = x[:, 0] * x[:, 1] * g
        out[:, -1] = (0.3 + x[:, 1] ** 3) * g
        return out

    return CliffordFunction(m, evaluate, name="schwartz-sample")


def run_suite(name: str, **kwargs) -> VerificationReport:
    table = {
        "algebra": suite_algebra,
        "polyops": suite_polyops,
        "specfun": suite_specfun,
        "kernel": suite_kernel,
        "transform": suite_transform,
        "translation": suite_translation,
    }
    if name not in table:
        raise KeyError(name)
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    return table[name](**kwargs)
