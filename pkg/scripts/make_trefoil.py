"""Write a framed long trefoil as a piecewise-cubic knot file.

The knotted part is the (2,3) torus knot on a small torus, cut open at its
outermost point. Both ends climb above the torus before heading to the end
points, so closing the long knot at infinity gives back the trefoil.
"""
from __future__ import annotations

import argparse
import json
import math

import numpy as np

from gwknots.config_kernel import FramedKnot, hermite_coeffs

R, r = 0.45, 0.2
CUT = 0.12


def torus(th):
    p = np.array([(R + r * math.cos(3 * th)) * math.cos(2 * th), (R + r * math.cos(3 * th)) * math.sin(2 * th), r * math.sin(3 * th)])
    dp = np.array([
        -3 * r * math.sin(3 * th) * math.cos(2 * th) - 2 * (R + r * math.cos(3 * th)) * math.sin(2 * th),
        -3 * r * math.sin(3 * th) * math.sin(2 * th) + 2 * (R + r * math.cos(3 * th)) * math.cos(2 * th),
        3 * r * math.cos(3 * th),
    ])
    return p, dp


def build(pieces: int = 40) -> FramedKnot:
    a, b = CUT, 2 * math.pi - CUT
    pa, va = torus(a)
    pb, vb = torus(b)
    up = np.array([0.0, 0.0, 1.0])
    # waypoints (position, unit direction) in curve order
    pts = [
        (np.array([-1.0, 0, 0]), np.array([1.0, 0, 0])),
        (np.array([-0.7, 0.0, 0.6]), np.array([1.0, 0, 0])),
        (np.array([pa[0], pa[1], 0.6]), -up),
    ]
    ths = np.linspace(a, b, pieces + 1)
    pts += [(torus(t)[0], torus(t)[1] / np.linalg.norm(torus(t)[1])) for t in ths]
    pts += [
        (np.array([pb[0], pb[1], 0.85]), up),
        (np.array([0.8, 0.0, 0.85]), np.array([1.0, 0, 0])),
        (np.array([1.0, 0, 0]), np.array([1.0, 0, 0])),
    ]
    # times proportional to chord length
    gaps = [np.linalg.norm(pts[k + 1][0] - pts[k][0]) for k in range(len(pts) - 1)]
    ts = np.concatenate([[0.0], np.cumsum(gaps)])
    ts = -1 + 2 * ts / ts[-1]
    ts[-1] = 1.0
    speed = sum(gaps) / 2  # average |df/dt|
    segs = []
    zero = np.zeros(3)
    for k in range(len(pts) - 1):
        (p0, d0), (p1, d1) = pts[k], pts[k + 1]
        P = hermite_coeffs(ts[k], ts[k + 1], p0, p1, d0 * speed, d1 * speed)
        segs.append((float(ts[k]), float(ts[k + 1]), P, np.zeros((3, 4))))
    return FramedKnot.from_segments(segs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="knots/trefoil.json")
    args = ap.parse_args()
    knot = build()
    sep = knot.min_separation()
    pts = np.array([knot.position(t) for t in np.linspace(-1, 1, 2001)])
    if sep <= 0.5 or np.max(np.abs(pts)) > 1 + 1e-12:
        raise SystemExit(f"knot failed embedding checks (separation {sep:.3f})")
    with open(args.out, "w") as fh:
        json.dump(knot.to_json(), fh, indent=1)
        fh.write("\n")
    print(f"wrote {args.out}: {len(knot.curve)} segments, min separation ratio {sep:.2f}")


if __name__ == "__main__":
    main()
