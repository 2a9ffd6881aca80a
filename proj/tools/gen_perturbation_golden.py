#!/usr/bin/env python3
"""Writes the perturbation golden instances.

Each instance pairs a window g on Z_N with a lattice (a, b), a shift
(alpha, beta) satisfying alpha*b = beta*a = 0 mod N and a unimodular c
chosen so that -conj(c) is an eigenvalue of W = M_beta T_alpha. The
spectrum of the frame operator of G(g + c W g, a, b) is computed here by
brute force from the full list of time-frequency shifts.

Usage: gen_perturbation_golden.py OUTDIR
"""

import json
import pathlib
import sys

import numpy as np


def tf_shift(g, a, b):
    n = len(g)
    t = np.arange(n)
    return np.exp(2j * np.pi * b * t / n) * g[(t - a) % n]


def shift_matrix(n, alpha, beta):
    return np.column_stack([tf_shift(np.eye(n)[:, k], alpha, beta) for k in range(n)])


def spectrum(g, a, b):
    n = len(g)
    rows = [tf_shift(g, m * a, k * b) for m in range(n // a) for k in range(n // b)]
    f = np.array(rows)
    s = f.T @ f.conj()  # sum_n f_n f_n^*
    return np.linalg.eigvalsh((s + s.conj().T) / 2)


def window(kind, n, rng):
    t = np.arange(n)
    c = np.where(t <= n // 2, t, t - n) / (n / 8)
    if kind == "gaussian":
        g = np.exp(-np.pi * c**2).astype(complex)
    else:
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return g / np.linalg.norm(g)


INSTANCES = [
    # N, a, b, alpha, beta, window
    (8, 2, 2, 4, 4, "gaussian"),
    (8, 2, 2, 4, 0, "gaussian"),
    (8, 2, 2, 0, 4, "random"),
    (8, 1, 2, 4, 0, "random"),
    (8, 2, 4, 2, 4, "random"),
    (8, 4, 2, 4, 2, "gaussian"),
    (6, 2, 3, 2, 3, "random"),
    (6, 3, 2, 3, 2, "gaussian"),
    (12, 3, 4, 3, 4, "random"),
    (12, 2, 6, 2, 6, "random"),
    (12, 4, 3, 8, 6, "gaussian"),
    (4, 2, 2, 2, 2, "random"),
]


def main():
    out_dir = pathlib.Path(sys.argv[1])
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240607)
    for idx, (n, a, b, alpha, beta, kind) in enumerate(INSTANCES):
        assert n % a == 0 and n % b == 0
        assert (alpha * b) % n == 0 and (beta * a) % n == 0
        g = window(kind, n, rng)
        w = shift_matrix(n, alpha, beta)
        eig = np.linalg.eigvals(w)
        lam = eig[rng.integers(len(eig))]
        c = -np.conj(lam)
        phase = float(np.angle(c) / (2 * np.pi) % 1.0)
        c = np.exp(2j * np.pi * phase)
        h = g + c * tf_shift(g, alpha, beta)
        spec = spectrum(h, a, b)
        ratio = spec[0] / spec[-1]
        assert ratio < 1e-8, (idx, ratio)
        doc = {
            "N": n,
            "a": a,
            "b": b,
            "alpha": alpha,
            "beta": beta,
            "c_phase": phase,
            "window": {
                "dim": n,
                "N": n,
                "generator": kind,
                "entries": [[float(z.real), float(z.imag)] for z in g],
            },
            "spectrum": [float(x) for x in spec],
            "lambda_ratio": float(ratio),
        }
        path = out_dir / f"instance_{idx:02d}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(f"{path.name}: N={n} a={a} b={b} alpha={alpha} beta={beta} ratio={ratio:.3e}")


if __name__ == "__main__":
    main()
