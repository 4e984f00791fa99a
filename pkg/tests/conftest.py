import itertools
import math

import pytest


def minors_divisors(rows):
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    from fractions import Fraction

    def det(M):
        M = [[Fraction(v) for v in r] for r in M]
        n, sign, out = len(M), 1, Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if M[r][c]), None)
            if p is None:
                return 0
            if p != c:
                M[c], M[p] = M[p], M[c]
                sign = -sign
            out *= M[c][c]
            for r in range(c + 1, n):
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
        return int(sign * out)

    m, n = len(rows), len(rows[0]) if rows else 0
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        dets.append(g)
    return [dets[k] // dets[k - 1] for k in range(1, len(dets))]


@pytest.fixture
def divisors_oracle():
    return minors_divisors


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("GW_CACHE", str(d))
    return d


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
