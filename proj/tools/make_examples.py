#!/usr/bin/env python3
"""Writes the example CLI configs into tests/data/."""

import json
import pathlib

import mpmath as mp

mp.mp.dps = 40

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

T3 = [[1, 1, 2], [0, 1, 2], [0, 0, 1]]
B3 = ["0.41421356237309515", "0.7320508075688772", "0.2360679774997898"]
H2 = [[1, 1], [0, 1]]
B2 = ["0.41421356237309515", "0.57735026918962584"]


def term(l, re, im=0.0):
    t = {"l": l, "re": re}
    if im:
        t["im"] = im
    return t


def cosine(l, c):
    return [term(l, c / 2), term([-v for v in l], c / 2)]


def claim_terms(given):
    """Orbit of (0,0,1) with c_0 chosen so the obstruction sum vanishes."""
    b = [mp.mpf(float(v)) for v in B3]
    acc = mp.mpc(0)
    for k, c in given.items():
        p = -(mp.mpf(k ** 3 - k) / 3 * b[0] + (k * k - k) * b[1] + k * b[2])
        acc += mp.mpc(*c) * mp.expj(2 * mp.pi * p)
    coeffs = dict(given)
    coeffs[0] = (float(-acc.real), float(-acc.imag))
    terms = []
    for k, (re, im) in sorted(coeffs.items()):
        terms.append(term([k * k + k, 2 * k, 1], re, im))
        terms.append(term([-(k * k + k), -2 * k, -1], re, -im))
    return terms


def write(name, cfg):
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(cfg, indent=2) + "\n")


def main():
    t3 = {"matrix": T3, "translation": B3}
    h2 = {"matrix": H2, "translation": B2}
    t3_roof = {"dim": 3, "terms": [term([0, 0, 0], 2.0)] + cosine([0, 1, 0], 0.3)
               + claim_terms({1: (0.2, 0.0), -1: (0.0, 0.1), 2: (-0.05, 0.05)})}
    write("t3_example.json", {"system": t3, "roof": t3_roof, "tolerance": "1e-9"})
    write("identity.json", {"system": {"matrix": [[1, 0], [0, 1]], "translation": B2}})
    mixing_roof = {"dim": 2, "terms": [term([0, 0], 1.0)] + cosine([0, 1], 0.4)}
    write("heisenberg_correlation.json", {
        "system": h2, "roof": mixing_roof, "seed": 20240601,
        "experiment": {
            "R": {"box": [[0.05, 0.55], [0.05, 0.55]], "height": [0.1, 0.4]},
            "Q": {"box": [[0.3, 0.8], [0.4, 0.9]], "height": [0.2, 0.5]},
            "t_grid": [200, 250, 300, 350, 400],
            "samples": 20000,
        },
    })
    write("heisenberg_simulate.json", {
        "system": h2, "roof": mixing_roof, "seed": 7,
        "experiment": {"count": 4, "times": [0, 10.5, -3.25]},
    })
    t3_growth_roof = {"dim": 3, "terms": [term([0, 0, 0], 2.0)] + cosine([0, 0, 1], 0.5) + cosine([1, 1, 1], 0.3)}
    write("t3_growth.json", {
        "system": t3, "roof": t3_growth_roof, "seed": 11,
        "experiment": {"C": 2, "n_list": [64, 512, 4096], "samples": 20000, "n": 4096, "N_list": [100, 1000]},
    })
    write("heisenberg_stretch.json", {
        "system": h2, "roof": {"dim": 2, "terms": cosine([0, 1], 0.5)},
        "experiment": {"xhat": [0.3], "interval": [0.1, 0.2], "n_list": [10, 100, 1000]},
    })
    nilflow = {"nilflow": {"d": 3, "E": [1, 2, 6], "w": ["1", "0.41421356237309515", "0.3", "0.2"]}}
    alpha = {"dim": 4, "terms": [term([0, 0, 0, 0], 1.0)] + cosine([1, 0, 0, 0], 0.5) + cosine([0, 1, 0, 0], 0.3)}
    write("nilflow.json", {
        "system": nilflow,
        "experiment": {"alpha": alpha, "quad_panels": 4, "fit_degree": 1},
    })


if __name__ == "__main__":
    main()
