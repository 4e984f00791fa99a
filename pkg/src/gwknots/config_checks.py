"""Seeded numeric identity checks for :mod:`gwknots.config_kernel`.

Every check returns the largest entrywise discrepancy it saw for one seed.
Identity checks are compared against the run tolerance; the finite
difference probe has its own fixed threshold because it measures a
discretization error, not rounding.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.spatial.transform import Rotation

from . import config_kernel as ck

FD_STEP = 1e-4
FD_TOL = 1e-6
MAX_POINTS = 6


@dataclass(frozen=True)
class CheckRow:
    check: str
    seed: int
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance


# ---------------------------------------------------------------------------
# random inputs


def random_frames(rng: np.random.Generator, k: int) -> np.ndarray:
    R = Rotation.random(k, random_state=int(rng.integers(2 ** 31))).as_matrix().reshape(k, 3, 3)
    flip = rng.random(k) < 0.5
    R[flip] *= -1.0  # improper frames too: O(3), not SO(3)
    return R


def random_spatial(rng: np.random.Generator, n: int, collide: bool = True) -> ck.FramedConfig:
    x = np.vstack([ck.Y0, rng.uniform(-0.95, 0.95, (n, 3)), ck.Y1])
    frames = np.concatenate([np.eye(3)[None], random_frames(rng, n), np.eye(3)[None]])
    c = ck.FramedConfig(x, ck.directions(x), frames, True)
    if collide and n >= 2 and rng.random() < 0.5:
        # collided pair from a lower stratum
        c = ck.coface(int(rng.integers(0, n)), ck.codegeneracy(int(rng.integers(1, n + 1)), c))
    return c


def random_inf(rng: np.random.Generator, m: int) -> ck.InfConfig:
    c = ck.InfConfig.from_points(rng.normal(size=(m, 3)), random_frames(rng, m))
    if m >= 2 and rng.random() < 0.5:
        c = ck.coface_inf(int(rng.integers(1, m)), ck.codegeneracy_inf(int(rng.integers(1, m + 1)), c))
    return c


def random_times(rng: np.random.Generator, n: int, ties: bool = True) -> list[float]:
    t = np.sort(rng.uniform(-1, 1, n))
    if ties and n >= 2 and rng.random() < 0.5:
        j = int(rng.integers(0, n - 1))
        t[j + 1] = t[j]
    return [float(s) for s in t]


def random_family(rng: np.random.Generator, k: int) -> ck.IntervalFamily:
    pts = np.sort(rng.uniform(-1, 1, 2 * k))
    return ck.IntervalFamily(tuple((float(pts[2 * i]), float(pts[2 * i + 1])) for i in range(k)))


# ---------------------------------------------------------------------------
# cosimplicial identity families, generic over the model


def _identity_errors(d, s, size, x, dist) -> dict[str, float]:
    """Max errors of the five identity families at one object.

    ``d(i, c)``/``s(j, c)`` use the standard indexing: ``s(j)`` forgets the
    (j+1)-th point.
    """
    n = size(x)
    err = dict.fromkeys(["dd", "ss", "sd_lt", "sd_eq", "sd_gt"], 0.0)
    for j in range(n + 2):
        for i in range(j):
            err["dd"] = max(err["dd"], dist(d(j, d(i, x)), d(i, d(j - 1, x))))
    for j in range(n - 1):
        for i in range(j + 1):
            err["ss"] = max(err["ss"], dist(s(j, s(i, x)), s(i, s(j + 1, x))))
    for j in range(n + 1):
        for i in range(n + 2):
            lhs = s(j, d(i, x))
            if i < j:
                err["sd_lt"] = max(err["sd_lt"], dist(lhs, d(i, s(j - 1, x))))
            elif i in (j, j + 1):
                err["sd_eq"] = max(err["sd_eq"], dist(lhs, x))
            else:
                err["sd_gt"] = max(err["sd_gt"], dist(lhs, d(i - 1, s(j, x))))
    return err


def spatial_identities(rng) -> dict[str, float]:
    c = random_spatial(rng, int(rng.integers(1, MAX_POINTS - 1)))
    return _identity_errors(
        ck.coface, lambda j, c: ck.codegeneracy(j + 1, c), lambda c: c.n, c, lambda a, b: a.distance(b)
    )


def operadic_identities(rng) -> dict[str, float]:
    c = random_inf(rng, int(rng.integers(1, MAX_POINTS - 1)))
    return _identity_errors(
        ck.coface_inf, lambda j, c: ck.codegeneracy_inf(j + 1, c), lambda c: c.size, c, lambda a, b: a.distance(b)
    )


def insertion_associativity(rng) -> float:
    n = int(rng.integers(1, 3))
    m = int(rng.integers(1, 3))
    k = int(rng.integers(1, MAX_POINTS - n - m + 3))
    a = random_spatial(rng, n)
    b, c = random_inf(rng, m), random_inf(rng, k)
    i = int(rng.integers(1, n + 1))
    j = int(rng.integers(1, m + 1))
    lhs = ck.insert(ck.insert(a, i, b), i + j - 1, c)
    rhs = ck.insert(a, i, ck.insert_inf(b, j, c))
    return lhs.distance(rhs)


def insertion_unit(rng) -> float:
    a = random_spatial(rng, int(rng.integers(1, MAX_POINTS)))
    err = max(a.distance(ck.insert(a, i, ck.UNIT)) for i in range(1, a.n + 1))
    b = random_inf(rng, int(rng.integers(1, MAX_POINTS)))
    err = max(err, b.distance(ck.insert_inf(ck.UNIT, 1, b)))
    return max(err, max(b.distance(ck.insert_inf(b, i, ck.UNIT)) for i in range(1, b.size + 1)))


def operadic_coface_paths(rng) -> float:
    c = random_inf(rng, int(rng.integers(1, MAX_POINTS)))
    return max(ck.coface_inf(i, c).distance(ck.coface_inf_by_insertion(i, c)) for i in range(c.size + 2))


def evaluation_cofaces(rng) -> float:
    K = ck.random_knot(rng)
    n = int(rng.integers(0, MAX_POINTS))
    t = random_times(rng, n)
    c = ck.evaluate(K, t)
    err = 0.0
    for i in range(n + 2):
        err = max(err, ck.coface(i, c).distance(ck.evaluate(K, ck.time_coface(i, t))))
    for j in range(1, n + 1):
        err = max(err, ck.codegeneracy(j, c).distance(ck.evaluate(K, t[: j - 1] + t[j:])))
    return err


def projection_evaluation(rng) -> float:
    K = ck.random_knot(rng)
    n = int(rng.integers(1, MAX_POINTS + 1))
    t = random_times(rng, n - 1)
    return ck.restriction_projection(ck.evaluator(K))(t).distance(ck.evaluate(K, t))


def _family_and_knots(rng, knot=None):
    k = int(rng.integers(1, 4))
    Ls = random_family(rng, k)
    Ks = [knot if (knot is not None and rng.random() < 0.5) else ck.random_knot(rng) for _ in range(k)]
    return Ls, Ks


def _times_for(rng, Ls, n):
    """Random times biased into the intervals, with ties and endpoint hits."""
    pool = []
    for _ in range(n):
        r = rng.random()
        a, b = Ls.intervals[int(rng.integers(len(Ls)))]
        if r < 0.6:
            pool.append(float(rng.uniform(a, b)))
        elif r < 0.7:
            pool.append(a if rng.random() < 0.5 else b)
        else:
            pool.append(float(rng.uniform(-1, 1)))
    pool.sort()
    if n >= 2 and rng.random() < 0.4:
        j = int(rng.integers(0, n - 1))
        pool[j + 1] = pool[j]
    return pool


def equivariance(rng, knot=None) -> float:
    Ls, Ks = _family_and_knots(rng, knot)
    t = _times_for(rng, Ls, int(rng.integers(1, MAX_POINTS + 1)))
    lhs = ck.act_on_samples(Ls, [ck.evaluator(K) for K in Ks], t)
    rhs = ck.evaluate(ck.act_on_knots(Ls, Ks), t)
    return lhs.distance(rhs)


def projection_action(rng, knot=None) -> float:
    Ls, Ks = _family_and_knots(rng, knot)
    n = int(rng.integers(1, MAX_POINTS + 1))
    t = _times_for(rng, Ls, n - 1)
    phis = [ck.evaluator(K) for K in Ks]
    lhs = ck.restriction_projection(lambda s: ck.act_on_samples(Ls, phis, s))(t)
    rhs = ck.act_on_samples(Ls, phis, t)
    return lhs.distance(rhs)


def action_associativity(rng) -> float:
    outer = random_family(rng, int(rng.integers(1, 3)))
    k = int(rng.integers(len(outer)))
    inner = random_family(rng, int(rng.integers(1, 3)))
    inner_knots = [ck.random_knot(rng) for _ in range(len(inner))]
    outer_knots = [ck.random_knot(rng) for _ in range(len(outer))]
    nested = list(outer_knots)
    nested[k] = ck.act_on_knots(inner, inner_knots)
    flat = outer_knots[:k] + inner_knots + outer_knots[k + 1:]
    one = ck.act_on_knots(outer, nested)
    two = ck.act_on_knots(outer.nest(k, inner), flat)
    ts = np.linspace(-1, 1, 41)
    return float(max(
        max(np.max(np.abs(one.position(s) - two.position(s))), np.max(np.abs(one.frame(s) - two.frame(s))))
        for s in ts
    ))


def finite_difference(rng) -> float:
    # the centered secant is off by about h^2 |f'''| / (24 |f'|); long pieces keep f''' moderate
    K = ck.random_knot(rng, pieces=2, min_gap=0.5)
    # stay a step away from segment breaks: the curve is only C^1 there
    k = int(rng.integers(len(K.curve)))
    t = float(rng.uniform(K.breaks[k] + FD_STEP, K.breaks[k + 1] - FD_STEP))
    tied = ck.evaluate(K, [t, t]).u[1, 2]
    a, b = t - FD_STEP / 2, t + FD_STEP / 2
    d = K.position(a) - K.position(b)
    return float(np.max(np.abs(tied - d / np.linalg.norm(d))))


def straight_line(rng) -> float:
    """Nonzero iff the straight knot misses the aligned baseline exactly."""
    n = int(rng.integers(0, MAX_POINTS + 1))
    t = random_times(rng, n)
    c = ck.evaluate(ck.FramedKnot.straight(), t)
    N = c.size
    want_u = np.zeros((N, N, 3))
    iu = np.triu_indices(N, 1)
    want_u[iu] = -ck.E1
    want_u[iu[1], iu[0]] = ck.E1
    err = max(np.max(np.abs(c.u - want_u)), np.max(np.abs(c.frames - np.eye(3))))
    times = np.concatenate([[-1.0], t, [1.0]])
    want_x = np.column_stack([times, np.zeros(N), np.zeros(N)])
    return float(max(err, np.max(np.abs(c.x - want_x))))


# ---------------------------------------------------------------------------
# runner


def _suite(knot) -> list[tuple[str, Callable, bool]]:
    """(name prefix, function, uses tolerance) in a fixed order."""
    return [
        ("spatial", spatial_identities, True),
        ("operadic", operadic_identities, True),
        ("insert_assoc", insertion_associativity, True),
        ("insert_unit", insertion_unit, True),
        ("operadic_d_paths", operadic_coface_paths, True),
        ("ev_cosimplicial", evaluation_cofaces, True),
        ("proj_ev", projection_evaluation, True),
        ("ev_equivariance", lambda r: equivariance(r, knot), True),
        ("proj_action", lambda r: projection_action(r, knot), True),
        ("action_assoc", action_associativity, True),
        ("straight_line", straight_line, True),
        ("finite_difference", finite_difference, False),
    ]


def run_checks(seed: int = 0, samples: int = 1000, tol: float = 1e-9, knot: ck.FramedKnot | None = None) -> list[CheckRow]:
    if samples < 1:
        raise ValueError("samples >= 1")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    rows: list[CheckRow] = []
    for prefix, fn, governed in _suite(knot):
        limit = tol if governed else FD_TOL
        for k in range(samples):
            s = seed * 1_000_003 + k
            rng = np.random.default_rng([seed, k, len(prefix)])
            out = fn(rng)
            if isinstance(out, dict):
                rows.extend(CheckRow(f"{prefix}.{name}", s, float(v), limit) for name, v in out.items())
            else:
                rows.append(CheckRow(prefix, s, float(out), limit))
    return rows


def summarize(rows: Iterable[CheckRow]) -> list[CheckRow]:
    """Worst row per check, in first-seen order."""
    worst: dict[str, CheckRow] = {}
    for r in rows:
        if r.check not in worst or r.max_error > worst[r.check].max_error:
            worst[r.check] = r
    return list(worst.values())


def to_csv(rows: Iterable[CheckRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "seed", "max_error", "tolerance", "passed"])
    for r in rows:
        w.writerow([r.check, r.seed, f"{r.max_error:.3e}", f"{r.tolerance:.0e}", int(r.passed)])
    return buf.getvalue()
