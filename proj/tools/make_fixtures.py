#!/usr/bin/env python3
"""Regenerates the bundled planar letter fixtures in data/fixtures/.

Each letter is a cubic interpolating spline through hand-placed control points,
traversed by arc length with minimum-jerk timing (so it starts and ends at
rest), sampled at 200 points and translated so the last sample is the origin.
"""

import argparse
import pathlib

import numpy as np
from scipy.interpolate import make_interp_spline

SAMPLES = 200
DURATION = 2.0

LETTERS = {
    "G": [(30, 30), (0, 40), (-30, 25), (-40, 0), (-30, -25), (0, -35), (30, -25), (35, 0), (10, 0)],
    "S": [(30, 35), (0, 40), (-30, 30), (-25, 10), (0, 0), (25, -10), (30, -30), (0, -40), (-30, -35)],
    "W": [(-40, 40), (-30, 0), (-20, -40), (-10, -10), (0, 20), (10, -10), (20, -40), (30, 0), (40, 40)],
}


def min_jerk(s):
    return s**3 * (10 - 15 * s + 6 * s * s)


def letter(points):
    pts = np.asarray(points, dtype=float)
    chord = np.r_[0.0, np.cumsum(np.linalg.norm(np.diff(pts, axis=0), axis=1))]
    spline = make_interp_spline(chord / chord[-1], pts, k=3)

    dense_u = np.linspace(0.0, 1.0, 20001)
    dense = spline(dense_u)
    arc = np.r_[0.0, np.cumsum(np.linalg.norm(np.diff(dense, axis=0), axis=1))]

    t = np.linspace(0.0, DURATION, SAMPLES)
    u = np.interp(min_jerk(t / DURATION) * arc[-1], arc, dense_u)
    xy = spline(u)
    return t, xy - xy[-1]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, points in LETTERS.items():
        t, xy = letter(points)
        lines = ["t,x,y"] + [f"{a:.17g},{b:.17g},{c:.17g}" for a, (b, c) in zip(t, xy)]
        (args.out / f"{name}.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
