"""Numeric framed configurations, insertion, cosimplicial maps, knot evaluation.

Conventions
-----------
* Points are indexed from 0. A spatial configuration with ``boundary=True``
  stores ``n + 2`` points: the fixed end points ``y0 = (-1, 0, 0)`` and
  ``y1 = (1, 0, 0)`` (identity frames) at indices 0 and ``n + 1``, with the
  ``n`` free points in between. This is what lets the coface ``d^i`` be the
  same insertion for every ``0 <= i <= n + 1``.
* ``u[j, k] = (x_j - x_k) / |x_j - x_k|`` for ``j < k`` and ``u[k, j] = -u[j, k]``.
  Along a knot running in the +x direction this points to -x, so the doubling
  configuration ``MU`` has ``u_01 = (-1, 0, 0)`` and an axis tie ("positive
  x-axis from j to k") is stored as ``-e1``.
* Frames are 3x3 orthogonal matrices; the first column is the doubling
  direction's opposite, i.e. the knot tangent.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import pdist
from scipy.spatial.transform import Rotation

DELTA = 1e-8  # collided vs distinct
ORTHO_DRIFT = 1e-10
E1 = np.array([1.0, 0.0, 0.0])
Y0 = np.array([-1.0, 0.0, 0.0])
Y1 = np.array([1.0, 0.0, 0.0])

stats = {"reorthonormalized": 0}


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configurations


@dataclass
class FramedConfig:
    x: np.ndarray  # (N, 3)
    u: np.ndarray  # (N, N, 3), antisymmetric
    frames: np.ndarray  # (N, 3, 3)
    boundary: bool = True

    @property
    def n(self) -> int:
        return len(self.x) - (2 if self.boundary else 0)

    @property
    def size(self) -> int:
        return len(self.x)

    def check(self, u_tol: float = 1e-9, frame_tol: float = 1e-12) -> None:
        for j, k in zip(*np.triu_indices(self.size, 1)):
            d = self.x[j] - self.x[k]
            r = np.linalg.norm(d)
            if r > DELTA and np.max(np.abs(self.u[j, k] - d / r)) > u_tol:
                raise ConfigError(f"u[{j},{k}] inconsistent with positions")
        eye = np.eye(3)
        for a in self.frames:
            if np.max(np.abs(a.T @ a - eye)) > frame_tol:
                raise ConfigError("frame not orthogonal")

    def distance(self, other: "FramedConfig") -> float:
        if self.x.shape != other.x.shape or self.boundary != other.boundary:
            return math.inf
        return float(
            max(
                np.max(np.abs(self.x - other.x), initial=0.0),
                np.max(np.abs(self.u - other.u), initial=0.0),
                np.max(np.abs(self.frames - other.frames), initial=0.0),
            )
        )

    def forget(self, keep: Sequence[int]) -> "FramedConfig":
        keep = np.asarray(keep, dtype=int)
        return FramedConfig(self.x[keep], self.u[np.ix_(keep, keep)], self.frames[keep], self.boundary)

    def interior(self) -> "FramedConfig":
        if not self.boundary:
            return self
        c = self.forget(range(1, self.size - 1))
        c.boundary = False
        return c


@dataclass
class InfConfig:
    """Configuration up to translation and positive scaling: directions and frames only."""

    u: np.ndarray
    frames: np.ndarray
    x: np.ndarray | None = field(default=None, repr=False)  # optional representative

    @property
    def size(self) -> int:
        return len(self.frames)

    @classmethod
    def from_points(cls, x: np.ndarray, frames: np.ndarray) -> "InfConfig":
        return cls(directions(x), np.asarray(frames, float), np.asarray(x, float))

    def distance(self, other: "InfConfig") -> float:
        if self.u.shape != other.u.shape:
            return math.inf
        return float(max(np.max(np.abs(self.u - other.u), initial=0.0), np.max(np.abs(self.frames - other.frames), initial=0.0)))

    def forget(self, keep: Sequence[int]) -> "InfConfig":
        keep = np.asarray(keep, dtype=int)
        return InfConfig(self.u[np.ix_(keep, keep)], self.frames[keep], None if self.x is None else self.x[keep])


MU = InfConfig(np.array([[[0, 0, 0], [-1.0, 0, 0]], [[1.0, 0, 0], [0, 0, 0]]]), np.stack([np.eye(3)] * 2))
UNIT = InfConfig(np.zeros((1, 1, 3)), np.eye(3)[None])


def directions(x: np.ndarray, fallback: Callable[[int, int], np.ndarray] | None = None) -> np.ndarray:
    """Antisymmetric array of unit directions; ``fallback(j, k)`` resolves collided pairs."""
    x = np.asarray(x, float)
    N = len(x)
    u = np.zeros((N, N, 3))
    for j in range(N):
        for k in range(j + 1, N):
            d = x[j] - x[k]
            r = np.linalg.norm(d)
            if r > DELTA:
                v = d / r
            elif fallback is not None:
                v = fallback(j, k)
            else:
                raise ConfigError(f"points {j} and {k} collide and no direction was supplied")
            u[j, k] = v
            u[k, j] = -v
    return u


def _orthonormal(frames: np.ndarray) -> np.ndarray:
    eye = np.eye(3)
    out = frames
    for idx, a in enumerate(frames):
        if np.max(np.abs(a.T @ a - eye)) > ORTHO_DRIFT:
            if out is frames:
                out = frames.copy()
            q, r = np.linalg.qr(a)
            out[idx] = q * np.sign(np.diag(r))
            stats["reorthonormalized"] += 1
    return out


def _check_frames(frames: np.ndarray) -> None:
    eye = np.eye(3)
    for a in frames:
        if np.max(np.abs(a.T @ a - eye)) > 1e-9:
            raise ConfigError("non-orthogonal frame")


# ---------------------------------------------------------------------------
# insertion


def _insert_arrays(x, u, frames, i: int, du, dframes):
    """Insert an m-point block at 0-based position i of an N-point configuration."""
    N, m = len(frames), len(dframes)
    if not 0 <= i < N:
        raise IndexError(f"insertion index {i} outside 0..{N - 1}")
    j = np.arange(N + m - 1)
    hat = np.where(j <= i, j, np.where(j <= i + m - 1, i, j + 1 - m))
    alpha = frames[i]
    w = u[np.ix_(hat, hat)].copy()
    w[i:i + m, i:i + m] = du @ alpha.T
    gamma = frames[hat].copy()
    gamma[i:i + m] = _orthonormal(alpha @ dframes)
    z = None if x is None else x[hat]
    return z, w, gamma


def insert(c: FramedConfig, i: int, d: InfConfig) -> FramedConfig:
    """``c o_i d``: the block ``d`` replaces free point ``i`` (1-based)."""
    if not 1 <= i <= c.n:
        raise IndexError(f"insertion index {i} outside 1..{c.n}")
    _check_frames(c.frames)
    _check_frames(d.frames)
    pos = i if c.boundary else i - 1
    z, w, g = _insert_arrays(c.x, c.u, c.frames, pos, d.u, d.frames)
    return FramedConfig(z, w, g, c.boundary)


def insert_inf(a: InfConfig, i: int, b: InfConfig) -> InfConfig:
    """Operadic insertion ``a o_i b`` (1-based i)."""
    if not 1 <= i <= a.size:
        raise IndexError(f"insertion index {i} outside 1..{a.size}")
    _, w, g = _insert_arrays(None, a.u, a.frames, i - 1, b.u, b.frames)
    return InfConfig(w, g)


# ---------------------------------------------------------------------------
# cosimplicial structure


def coface(i: int, c: FramedConfig) -> FramedConfig:
    """Spatial d^i, 0 <= i <= n+1: double point i (0 and n+1 are the end points)."""
    if not c.boundary:
        raise ConfigError("spatial cofaces need the boundary points")
    if not 0 <= i <= c.n + 1:
        raise IndexError(f"coface index {i} outside 0..{c.n + 1}")
    z, w, g = _insert_arrays(c.x, c.u, c.frames, i, MU.u, MU.frames)
    return FramedConfig(z, w, g, True)


def codegeneracy(i: int, c: FramedConfig) -> FramedConfig:
    """Forget free point i (1-based)."""
    if not 1 <= i <= c.n:
        raise IndexError(f"codegeneracy index {i} outside 1..{c.n}")
    pos = i if c.boundary else i - 1
    return c.forget([k for k in range(c.size) if k != pos])


def coface_inf(i: int, c: InfConfig) -> InfConfig:
    """Operadic d^i written out directly (no call to the insertion code)."""
    n = c.size
    if not 0 <= i <= n + 1:
        raise IndexError(f"coface index {i} outside 0..{n + 1}")
    u = np.zeros((n + 1, n + 1, 3))
    fr = np.zeros((n + 1, 3, 3))
    if i == 0 or i == n + 1:
        # a new point far to the left (d^0) or right (d^{n+1}) with identity frame
        s = slice(1, n + 1) if i == 0 else slice(0, n)
        new = 0 if i == 0 else n
        u[s, s] = c.u
        fr[s] = c.frames
        fr[new] = np.eye(3)
        others = np.arange(n + 1) != new
        sign = 1.0 if i == 0 else -1.0
        u[new, others] = -sign * E1
        u[others, new] = sign * E1
        return InfConfig(u, fr)
    src = np.concatenate([np.arange(i), np.arange(i - 1, n)])
    u = c.u[np.ix_(src, src)].copy()
    t = c.frames[i - 1] @ E1
    u[i - 1, i] = -t
    u[i, i - 1] = t
    return InfConfig(u, c.frames[src].copy())


def coface_inf_by_insertion(i: int, c: InfConfig) -> InfConfig:
    n = c.size
    if i == 0:
        return insert_inf(MU, 2, c)
    if i == n + 1:
        return insert_inf(MU, 1, c)
    return insert_inf(c, i, MU)


def codegeneracy_inf(i: int, c: InfConfig) -> InfConfig:
    if not 1 <= i <= c.size:
        raise IndexError(f"codegeneracy index {i} outside 1..{c.size}")
    return c.forget([k for k in range(c.size) if k != i - 1])


# ---------------------------------------------------------------------------
# knots


def _poly_eval(coeffs: np.ndarray, t: float) -> np.ndarray:
    """Rows are polynomials in t with increasing degree."""
    out = np.zeros(coeffs.shape[0])
    for k in range(coeffs.shape[1] - 1, -1, -1):
        out = out * t + coeffs[:, k]
    return out


def _poly_deriv(coeffs: np.ndarray) -> np.ndarray:
    k = np.arange(1, coeffs.shape[1])
    return coeffs[:, 1:] * k


def _local(t: float, t0: float, t1: float) -> tuple[float, float]:
    """Centered segment parameter s in [-1, 1] and dt/ds."""
    half = (t1 - t0) / 2
    return (t - (t0 + t1) / 2) / half, half


def hermite_coeffs(a: float, b: float, pa, pb, va, vb) -> np.ndarray:
    """Coefficients in the centered parameter of the cubic with given end values and t-slopes."""
    half = (b - a) / 2
    M = np.array([[1, -1, 1, -1], [1, 1, 1, 1], [0, 1, -2, 3], [0, 1, 2, 3]], float)
    rhs = np.stack([pa, pb, np.asarray(va) * half, np.asarray(vb) * half]).astype(float)
    return np.linalg.solve(M, rhs).T  # (3, 4)


@dataclass
class FramedKnot:
    """Piecewise-cubic long knot with a rotation-vector framing chart.

    Each segment ``(t0, t1, P, R)`` carries 3x4 monomial coefficients in the
    centered parameter ``s = (2t - t0 - t1) / (t1 - t0)``: ``P`` for the curve
    and ``R`` for the chart. The frame at
    ``t`` puts the unit tangent first and takes the normal from the chart
    rotation's second column (Gram-Schmidt), so the tangent condition holds
    by construction. Outside [-1, 1] the knot is ``(t, 0, 0)`` with identity
    frames.
    """

    breaks: np.ndarray
    curve: np.ndarray  # (S, 3, 4)
    chart: np.ndarray  # (S, 3, 4)

    @classmethod
    def from_segments(cls, segments: Sequence[tuple]) -> "FramedKnot":
        segs = sorted(segments, key=lambda s: s[0])
        breaks = np.array([s[0] for s in segs] + [segs[-1][1]], float)
        k = cls(breaks, np.array([s[2] for s in segs], float), np.array([s[3] for s in segs], float))
        k.validate()
        return k

    @classmethod
    def straight(cls) -> "FramedKnot":
        line = np.zeros((3, 4))
        line[0, 1] = 1.0
        return cls.from_segments([(-1.0, 1.0, line, np.zeros((3, 4)))])

    def validate(self, tol: float = 1e-9) -> None:
        b = self.breaks
        if abs(b[0] + 1) > 1e-12 or abs(b[-1] - 1) > 1e-12 or np.any(np.diff(b) <= 0):
            raise ConfigError("segments must tile [-1, 1] in order")
        if np.max(np.abs(self.position(-1.0) - Y0)) > tol or np.max(np.abs(self.position(1.0) - Y1)) > tol:
            raise ConfigError("knot must start at (-1,0,0) and end at (1,0,0)")
        for t in (-1.0, 1.0):
            d = self.derivative(t)
            if d[0] <= 0 or abs(d[1]) > tol or abs(d[2]) > tol:
                raise ConfigError("end derivatives must point along +x")
            if np.max(np.abs(self._chart_at(t))) > tol:
                raise ConfigError("framing chart must vanish at the end points")
        for s in range(1, len(b) - 1):
            t = b[s]
            for arr in (self.curve, self.chart):
                left = _poly_eval(arr[s - 1], 1.0)
                right = _poly_eval(arr[s], -1.0)
                if np.max(np.abs(left - right)) > tol:
                    raise ConfigError(f"discontinuity at t={t}")

    def min_separation(self, samples: int = 1000) -> float:
        """Smallest distance between non-adjacent samples, relative to the largest step."""
        ts = np.linspace(-1, 1, samples + 1)
        pts = np.array([self.position(t) for t in ts])
        step = np.max(np.linalg.norm(np.diff(pts, axis=0), axis=1))
        d = pdist(pts)
        n = len(pts)
        ii, jj = np.triu_indices(n, 1)
        mask = (jj - ii) >= 2
        return float(np.min(d[mask]) / step)

    def is_embedded(self, samples: int = 1000) -> bool:
        return self.min_separation(samples) > 0.5

    def _segment(self, t: float) -> int:
        s = int(np.searchsorted(self.breaks, t, side="right")) - 1
        return min(max(s, 0), len(self.curve) - 1)

    def position(self, t: float) -> np.ndarray:
        if t < -1 or t > 1:
            return np.array([t, 0.0, 0.0])
        k = self._segment(t)
        s, _ = _local(t, self.breaks[k], self.breaks[k + 1])
        return _poly_eval(self.curve[k], s)

    def derivative(self, t: float) -> np.ndarray:
        if t < -1 or t > 1:
            return E1.copy()
        k = self._segment(t)
        s, half = _local(t, self.breaks[k], self.breaks[k + 1])
        return _poly_eval(_poly_deriv(self.curve[k]), s) / half

    def tangent(self, t: float) -> np.ndarray:
        d = self.derivative(t)
        return d / np.linalg.norm(d)

    def _chart_at(self, t: float) -> np.ndarray:
        if t < -1 or t > 1:
            return np.zeros(3)
        k = self._segment(t)
        s, _ = _local(t, self.breaks[k], self.breaks[k + 1])
        return _poly_eval(self.chart[k], s)

    def frame(self, t: float) -> np.ndarray:
        T = self.tangent(t)
        r = self._chart_at(t)
        A = Rotation.from_rotvec(r).as_matrix() if np.any(r) else np.eye(3)
        for col in (1, 2):
            v = A[:, col] - (A[:, col] @ T) * T
            nv = np.linalg.norm(v)
            if nv > 1e-6:
                break
        v = v / nv
        return np.column_stack([T, v, np.cross(T, v)])

    def collision_direction(self, t: float, h: float = 1e-7) -> np.ndarray:
        """u between two points at the same time: the limit of (f(t) - f(s))/|.| as s decreases to t."""
        T = self.tangent(t)
        probe = self.position(t) - self.position(t + h) if t + h <= 1 else self.position(t - h) - self.position(t)
        return -T if probe @ T <= 0 else T

    # serialization
    def to_json(self) -> dict:
        segs = []
        frs = []
        for s in range(len(self.curve)):
            t0, t1 = float(self.breaks[s]), float(self.breaks[s + 1])
            segs.append({"t0": t0, "t1": t1, "coeffs": self.curve[s].tolist()})
            frs.append({"t0": t0, "t1": t1, "coeffs": self.chart[s].tolist()})
        return {"segments": segs, "framing": {"chart": "rotation-vector", "segments": frs}}

    @classmethod
    def from_json(cls, obj) -> "FramedKnot":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            segs = obj["segments"]
            frame = obj.get("framing") or {"segments": [{"t0": s["t0"], "t1": s["t1"], "coeffs": [[0] * 4] * 3} for s in segs]}
            fsegs = frame["segments"]
            if len(fsegs) != len(segs):
                raise ConfigError("framing and curve must use the same segments")
            rows = []
            for s, f in zip(segs, fsegs):
                if (s["t0"], s["t1"]) != (f["t0"], f["t1"]):
                    raise ConfigError("framing and curve must use the same segments")
                P = np.asarray(s["coeffs"], float)
                R = np.asarray(f["coeffs"], float)
                if P.shape != (3, 4) or R.shape != (3, 4):
                    raise ConfigError("coefficients must be 3x4")
                rows.append((float(s["t0"]), float(s["t1"]), P, R))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed knot: {exc}") from exc
        return cls.from_segments(rows)

    @classmethod
    def load(cls, path: str) -> "FramedKnot":
        with open(path) as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise ConfigError(f"malformed knot file: {exc}") from exc


def random_knot(rng: np.random.Generator, pieces: int | None = None, min_gap: float = 0.1) -> FramedKnot:
    """x-monotone piecewise-cubic knot (hence embedded) with a random framing chart.

    ``min_gap`` is a lower bound on segment lengths; the third derivative
    grows like ``1 / min_gap**3``.
    """
    pieces = pieces or int(rng.integers(2, 6))
    if pieces * min_gap >= 1.8:
        raise ValueError("min_gap too large for the number of pieces")
    while True:
        inner = np.sort(rng.uniform(-0.9, 0.9, pieces - 1))
        b = np.concatenate([[-1.0], inner, [1.0]])
        if np.min(np.diff(b)) > min_gap:
            break
    P = np.column_stack([b, rng.uniform(-0.4, 0.4, (pieces + 1, 2))])
    P[0], P[-1] = Y0, Y1
    V = np.column_stack([rng.uniform(0.5, 2.5, pieces + 1), rng.uniform(-0.5, 0.5, (pieces + 1, 2))])
    V[0, 1:] = V[-1, 1:] = 0.0
    R = rng.uniform(-1.0, 1.0, (pieces + 1, 3))
    R[0] = R[-1] = 0.0
    RV = rng.uniform(-1.0, 1.0, (pieces + 1, 3))
    segs = []
    for s in range(pieces):
        a, c = b[s], b[s + 1]
        segs.append((a, c, hermite_coeffs(a, c, P[s], P[s + 1], V[s], V[s + 1]),
                     hermite_coeffs(a, c, R[s], R[s + 1], RV[s], RV[s + 1])))
    knot = FramedKnot.from_segments(segs)
    # exact end values so boundary frames and points are exact
    return knot


# ---------------------------------------------------------------------------
# evaluation


def _check_times(t: Sequence[float]) -> np.ndarray:
    t = np.asarray(t, float)
    if np.any(np.diff(t) < 0):
        raise ConfigError("times must be weakly increasing")
    if np.any(t < -1) or np.any(t > 1):
        raise ConfigError("times must lie in [-1, 1]")
    return t


def evaluate(K: FramedKnot, t: Sequence[float], boundary: bool = True) -> FramedConfig:
    t = _check_times(t)
    times = np.concatenate([[-1.0], t, [1.0]]) if boundary else t
    x = np.array([K.position(s) for s in times]).reshape(-1, 3)
    if boundary:
        x[0], x[-1] = Y0, Y1
    frames = np.array([K.frame(s) for s in times]).reshape(-1, 3, 3)
    u = directions(x, lambda j, k: K.collision_direction(times[j]))
    return FramedConfig(x, u, frames, boundary)


def time_coface(i: int, t: Sequence[float]) -> list[float]:
    """Face of the simplex matching the spatial coface d^i."""
    t = list(t)
    if i == 0:
        return [-1.0] + t
    if i == len(t) + 1:
        return t + [1.0]
    return t[:i] + [t[i - 1]] + t[i:]


# ---------------------------------------------------------------------------
# little intervals


@dataclass(frozen=True)
class IntervalFamily:
    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev = -1.0
        for a, b in self.intervals:
            if not (-1 <= a < b <= 1) or a < prev:
                raise ConfigError(f"intervals must be ordered, disjoint and inside [-1,1]: {self.intervals}")
            prev = b

    def __len__(self) -> int:
        return len(self.intervals)

    @staticmethod
    def affine(a: float, b: float) -> tuple[float, float]:
        """(center, scale) with L(s) = center + scale * s."""
        return (a + b) / 2, (b - a) / 2

    def locate(self, t: float) -> int | None:
        for idx, (a, b) in enumerate(self.intervals):
            if a < t < b:
                return idx
        return None

    def nest(self, k: int, inner: "IntervalFamily") -> "IntervalFamily":
        """Operadic composition: replace interval k by inner mapped into it."""
        a, b = self.intervals[k]
        c, lam = self.affine(a, b)
        new = [(c + lam * p, c + lam * q) for p, q in inner.intervals]
        return IntervalFamily(self.intervals[:k] + tuple(new) + self.intervals[k + 1:])


def act_on_knots(Ls: IntervalFamily, Ks: Sequence[FramedKnot]) -> FramedKnot:
    if len(Ls) != len(Ks):
        raise ConfigError("need one knot per interval")
    def line(a, b):
        P = np.zeros((3, 4))
        P[0, 0], P[0, 1] = (a + b) / 2, (b - a) / 2
        return P

    segs = []
    cursor = -1.0
    for (a, b), K in zip(Ls.intervals, Ks):
        if a > cursor:
            segs.append((cursor, a, line(cursor, a), np.zeros((3, 4))))
        c, lam = IntervalFamily.affine(a, b)
        for s in range(len(K.curve)):
            # local parameters are unchanged; only values go through L-hat
            P = K.curve[s] * lam
            P[0, 0] += c
            R = K.chart[s]
            lo = a if s == 0 else c + lam * K.breaks[s]
            hi = b if s == len(K.curve) - 1 else c + lam * K.breaks[s + 1]
            segs.append((lo, hi, P, R))
        cursor = b
    if cursor < 1.0:
        segs.append((cursor, 1.0, line(cursor, 1.0), np.zeros((3, 4))))
    return FramedKnot.from_segments(segs)


def act_on_samples(Ls: IntervalFamily, phis: Sequence[Callable], t: Sequence[float]) -> FramedConfig:
    """Union of the rescaled restrictions phi_i|L_i with axis points for uncovered times."""
    if len(Ls) != len(phis):
        raise ConfigError("need one map per interval")
    t = _check_times(t)
    n = len(t)
    N = n + 2
    x = np.zeros((N, 3))
    frames = np.tile(np.eye(3), (N, 1, 1))
    x[0], x[-1] = Y0, Y1
    group = [-1] * N
    inner_u: dict[tuple[int, int], np.ndarray] = {}
    for g, ((a, b), phi) in enumerate(zip(Ls.intervals, phis)):
        c, lam = IntervalFamily.affine(a, b)
        members = [j for j in range(n) if a < t[j] < b]
        if not members:
            continue
        s = np.clip((t - c) / lam, -1.0, 1.0)
        conf = phi(s)
        if conf.boundary:
            conf = conf.interior()
        for j in members:
            x[j + 1] = lam * conf.x[j]
            x[j + 1, 0] += c
            frames[j + 1] = conf.frames[j]
            group[j + 1] = g
        for j in members:
            for k in members:
                if j < k:
                    inner_u[(j + 1, k + 1)] = conf.u[j, k]
    for j in range(n):
        if group[j + 1] < 0:
            x[j + 1] = (t[j], 0.0, 0.0)

    def fallback(j, k):
        if (j, k) in inner_u:
            return inner_u[(j, k)]
        return -E1  # axis tie: positive x-axis from j to k

    u = directions(x, fallback)
    for (j, k), v in inner_u.items():
        u[j, k], u[k, j] = v, -v
    return FramedConfig(x, u, frames, True)


def restriction_projection(phi: Callable) -> Callable:
    """p_n at sample level: evaluate on the face t_n = 1 and forget the last free point."""

    def projected(t: Sequence[float]) -> FramedConfig:
        c = phi(list(t) + [1.0])
        return codegeneracy(c.n, c)

    return projected


def evaluator(K: FramedKnot) -> Callable:
    return lambda t: evaluate(K, t)
