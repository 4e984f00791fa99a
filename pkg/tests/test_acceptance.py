"""Acceptance criteria, one PASS/FAIL line each (shown in the pytest summary)."""
import itertools
import math
import os
import random
import subprocess
import sys
import time

import pytest

from gwknots import braid_homotopy as bh
from gwknots import chord_diagrams as cd
from gwknots import config_checks as cc
from gwknots import tower_ss as ts
from gwknots.exact_linalg import IntMatrix, determinant, smith_normal_form
from gwknots.lie_core import is_lyndon, multilinear_rank

from conftest import ACCEPTANCE


def verdict(name, ok, detail, seconds):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail} ({seconds:.1f} s)"
    print(line)
    ACCEPTANCE.append(line)
    assert ok, line


def test_hall_multilinear_ranks():
    t0 = time.time()
    got, oracle = {}, {}
    for k in range(2, 8):
        got[k] = multilinear_rank(k)
        # exhaustive: every arrangement of 1..k, kept when it is a Lyndon word
        oracle[k] = sum(1 for p in itertools.permutations(range(1, k + 1)) if is_lyndon(p))
    dt = time.time() - t0
    ok = all(got[k] == oracle[k] == math.factorial(k - 1) for k in got) and dt < 10
    verdict("Hall/Lie rank (k-1)! for k=2..7", ok, f"ranks {[got[k] for k in sorted(got)]}", dt)


def test_e1_zero_line_two_pipelines():
    t0 = time.time()
    rows, ok, t6 = [], True, 0.0
    for m in range(3, 7):
        s = time.time()
        quotient = bh.npi_free(m, m - 1).rank
        images = bh.hilton_images(m)
        det = determinant(images) if images.rows == images.cols else 0
        if m == 6:
            t6 = time.time() - s
        lie = multilinear_rank(m - 1)
        ok &= quotient == lie == bh.hilton_cube_rank(m) and det in (1, -1)
        rows.append(f"m={m}: {quotient}/{lie} det {det}")
    ok &= t6 < 300
    verdict("E1 0-line relator quotient vs Hilton cube, m=3..6", ok, "; ".join(rows) + f"; m=6 {t6:.1f} s", time.time() - t0)


def test_cosimplicial_identities():
    t0 = time.time()
    total, bad = 0, []
    for conv in ("graded-symmetric", "classical"):
        for n in range(1, 5):
            for length in (1, 2, 3):
                c, b = bh.cosimplicial_identity_failures(n, length, conv)
                total += c
                bad += [f"{conv}:n={n}:l={length}:{x}" for x in b]
    verdict("cosimplicial identities on induced matrices, n<=4", not bad, f"{total} identities, {len(bad)} failing", time.time() - t0)


def test_d1_squared_zero():
    t0 = time.time()
    pairs, bad = 0, []
    for n in (2, 3):
        for length in range(1, 5):
            first = bh.alternating_coface_sum(bh.npi_free(n, length))
            second = bh.alternating_coface_sum(bh.npi_free(n + 1, length))
            pairs += 1
            if not (second @ first).is_zero():
                bad.append((n, length))
    # eta-corrected d1 into column 3 followed by column 3 -> 4
    eta = ts.d1_into_zero_line(3).matrix
    after = bh.alternating_coface_sum(bh.npi_free(3, 2))
    pairs += 1
    if not (after @ eta).is_zero():
        bad.append("eta")
    verdict("d1 o d1 = 0, target column <= 5", not bad, f"{pairs} composable pairs, failing {bad}", time.time() - t0)


def test_e2_against_chords():
    t0 = time.time()
    hard, soft, notes = True, True, []
    for m in range(2, 6):
        e2 = ts.e2_zero_line(m).presentation
        ai = cd.a_i_presentation(m - 1)
        if m in (2, 3):
            hard &= e2.free_rank == 1 and e2.torsion == () and e2.same_group(ai)
        hard &= e2.free_rank == ai.free_rank
        soft &= e2.same_group(ai)
        notes.append(f"m={m}: E2 Z^{e2.free_rank}{list(e2.torsion)} vs A^I Z^{ai.free_rank}{list(ai.torsion)}")
    dt = time.time() - t0
    ok = hard and soft and dt < 600
    verdict("E2 vs chord diagrams m=2..5 (rational hard, integral soft)", ok, "; ".join(notes), dt)


def test_chord_enumeration():
    t0 = time.time()
    counts = [len(cd.enumerate(m)) for m in range(1, 7)]
    oracle = [1]
    for m in range(2, 7):
        oracle.append(oracle[-1] * (2 * m - 1))
    ok = counts == oracle == [1, 3, 15, 105, 945, 10395]
    verdict("chord enumeration (2m-1)!!, m=1..6", ok, f"{counts}", time.time() - t0)


def test_snf_suite():
    t0 = time.time()
    rng = random.Random(2024)
    bad = 0
    for _ in range(500):
        m, n = rng.randint(1, 40), rng.randint(1, 40)
        A = IntMatrix.from_dense([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        s = smith_normal_form(A)
        d = s.divisors
        good = (
            s.U @ A @ s.V == s.D
            and determinant(s.U) in (1, -1)
            and determinant(s.V) in (1, -1)
            and all(x > 0 for x in d)
            and all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        )
        bad += not good
    dt = time.time() - t0
    verdict("SNF property suite, 500 matrices <= 40x40", bad == 0 and dt < 60, f"{bad} failures", dt)


def test_numeric_kernel():
    t0 = time.time()
    rows = cc.run_checks(seed=42, samples=1000, tol=1e-9)
    worst = cc.summarize(rows)
    failing = [r.check for r in worst if not r.passed]
    governed = [r for r in worst if r.check != "finite_difference"]
    top = max(r.max_error for r in governed)
    straight = next(r for r in worst if r.check == "straight_line")
    ok = not failing and top < 1e-9 and straight.max_error == 0.0
    detail = f"{len(worst)} checks x 1000 seeds, max error {top:.2e}, straight line exact={straight.max_error == 0.0}"
    verdict("numeric kernel identities < 1e-9", ok, detail, time.time() - t0)


def _cli(args, threads):
    env = dict(os.environ, OMP_NUM_THREADS=str(threads), OPENBLAS_NUM_THREADS=str(threads), MKL_NUM_THREADS=str(threads))
    out = subprocess.run([sys.executable, "-m", "gwknots", "--no-cache", *args], capture_output=True, env=env)
    return out.returncode, out.stdout


def test_determinism():
    t0 = time.time()
    commands = [
        ["e2", "--m", "2..5"],
        ["chord", "--m", "4"],
        ["e1", "--m", "4", "--degree", "1"],
        ["d1", "--m", "5"],
        ["hall", "--alphabet", "1,2,3", "--length", "4"],
        ["config-check", "--seed", "7", "--samples", "30", "--all-rows"],
    ]
    differing = []
    for argv in commands:
        outputs = {_cli(argv, 1), _cli(argv, 1), _cli(argv, 4)}
        if argv[0] == "e2":
            outputs.add(_cli(argv + ["--jobs", "3"], 4))
        if len(outputs) != 1 or next(iter(outputs))[0] != 0:
            differing.append(argv[0])
    verdict("byte-identical reports across reruns, threads and jobs", not differing,
            f"{len(commands)} commands, differing {differing}", time.time() - t0)
