"""Tabulate measured versus predicted eigenvalues of the quadrature transform.

For each basis function the measured eigenvalue is the least-squares ratio
``<F psi, psi> / <psi, psi>`` over the evaluation points.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from clifford_fourier.quadrature import fullspace_rule
from clifford_fourier.transform import QuadratureTransform, basis_indices, basis_psi, expected_eigenvalue
from clifford_fourier.verify import sample_ball


@dataclass
class EigenConfig:
    dim: int = 2
    sign: str = "minus"
    max_j: int = 2
    max_k: int = 2
    grid_n: int | None = None
    seed: int = 42


def run(cfg: EigenConfig):
    grid = fullspace_rule(cfg.dim, cfg.grid_n or (40 if cfg.dim == 2 else 24))
    pts = sample_ball(np.random.default_rng(cfg.seed), 12, cfg.dim, 2.5)
    tr = QuadratureTransform(grid, pts, cfg.sign)
    for idx in basis_indices(cfg.dim, cfg.max_j, cfg.max_k):
        f = basis_psi(idx, cfg.dim)
        ref, out = f(pts).ravel(), tr(f).ravel()
        measured = np.vdot(ref, out) / np.vdot(ref, ref)
        yield idx, measured, expected_eigenvalue(idx, cfg.sign, cfg.dim)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dim", type=int, default=2, choices=[2, 4])
    ap.add_argument("--sign", default="minus", choices=["minus", "plus"])
    ap.add_argument("--max-j", type=int, default=2)
    ap.add_argument("--max-k", type=int, default=2)
    a = ap.parse_args()
    cfg = EigenConfig(a.dim, a.sign, a.max_j, a.max_k)
    print("parity,j,k,l,measured_re,measured_im,expected_re,expected_im,abs_diff")
    for idx, got, want in run(cfg):
        print(f"{idx.parity},{idx.j},{idx.k},{idx.l},{got.real:.12f},{got.imag:.12f},"
              f"{want.real:.0f},{want.imag:.0f},{abs(got - want):.2e}")


if __name__ == "__main__":
    main()
