"""Generalized translation in m=4: radial inputs shift classically, others do not."""
import argparse

import numpy as np

from clifford_fourier.transform import BasisIndex, CliffordFunction, basis_psi, gaussian
from clifford_fourier.translation import TranslationPlan, translate
from clifford_fourier.verify import sample_ball


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--y", default="0.6,0.2,-0.3,0.1")
    ap.add_argument("--seed", type=int, default=42)
    a = ap.parse_args()
    y = np.array([float(v) for v in a.y.split(",")])
    pts = sample_ball(np.random.default_rng(a.seed), 8, 4, 2.0)
    plan = TranslationPlan.default(4, y)
    inputs = {
        "gaussian": gaussian(4),
        "r^2 gaussian": CliffordFunction.radial(4, lambda r: r**2 * np.exp(-r**2 / 2)),
        "psi(even,0,1,0)": basis_psi(BasisIndex("even", 0, 1, 0), 4),
        "psi(odd,0,0,0)": basis_psi(BasisIndex("odd", 0, 0, 0), 4),
    }
    print("function,max |tau_y f(x) - f(x - y)|")
    for name, f in inputs.items():
        print(f"{name},{np.abs(translate(f, plan, pts) - f(pts - y)).max():.3e}")


if __name__ == "__main__":
    main()
