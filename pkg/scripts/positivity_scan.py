#!/usr/bin/env python3
"""Scan the weighted Gram spectrum over a t-grid for the built-in groups.

Prints the minimal eigenvalue of the first-weight matrix evaluated at q = t;
positive away from t = 1 and exactly one null direction at the boundary.
"""

import argparse

import numpy as np

from qvertex.groups import build_group
from qvertex.repring import first_xi, qcartan


def min_eig(g, t: float) -> float:
    A = qcartan(first_xi(g))
    n = g.n_classes
    M = np.array([[A.entries[i][j].eval_real(t) for j in range(n)] for i in range(n)], dtype=complex)
    return float(np.linalg.eigvalsh((M + M.conj().T) / 2)[0])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--groups", nargs="*", default=["cyclic:2", "cyclic:5", "bd:3", "bt"])
    ap.add_argument("--t-min", type=float, default=0.2)
    ap.add_argument("--t-max", type=float, default=3.0)
    ap.add_argument("--steps", type=int, default=15)
    args = ap.parse_args()

    ts = np.linspace(args.t_min, args.t_max, args.steps)
    groups = [build_group(s) for s in args.groups]
    header = "t       " + "".join(f"{g.name:>22s}" for g in groups)
    print(header)
    for t in ts:
        row = f"{t:7.3f} " + "".join(f"{min_eig(g, float(t)):22.6f}" for g in groups)
        print(row)


if __name__ == "__main__":
    main()
