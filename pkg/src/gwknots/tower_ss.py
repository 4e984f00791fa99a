"""E1 page in total degrees 0 and 1, the d1 differential, and the 0-line E2.

Column ``m`` in total degree 0 is the normalized lattice in homotopy degree
``m`` (brackets of length ``m - 1``). Total degree 1 of column ``m - 1`` sits
in the same homotopy degree, so d1 keeps the bracket length fixed.

Column 2 in degree 1 is special: pi_3(S^2) = Z is generated by the Hopf map
eta rather than by a bracket. Under the graded convention the Whitehead square
[b12, b12] equals 2 eta, so the lattice spanned by brackets has index 2 in it.
The image of eta under d1 is computed with the Hopf-invariant-one rule
``H(sum a_k) = sum_{k<l} [a_k, a_l]`` (squares land on 2-point supports and
drop out of the covering target).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .braid_homotopy import (
    DEFAULT_CONVENTION,
    InducedMap,
    PiPresentation,
    _ring,
    alternating_coface_sum,
    coface_letter_map,
    npi_free,
)
from .exact_linalg import CokerPresentation, IntMatrix, cokernel
from .lie_core import add_into


@dataclass
class E1Column:
    m: int
    total_degree: int
    free_lattice: PiPresentation
    torsion_rank: int = 0
    eta_special: bool = False

    @property
    def free_rank(self) -> int:
        # eta generates Z; any bracket lattice there is a finite-index sublattice
        return 1 if self.eta_special else self.free_lattice.rank


@dataclass
class E2Group:
    m: int
    presentation: CokerPresentation

    @property
    def free_rank(self) -> int:
        return self.presentation.free_rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.presentation.torsion


def e1(m: int, total_degree: int, convention: str = DEFAULT_CONVENTION) -> E1Column:
    if m < 2:
        raise ValueError("columns start at m = 2")
    if total_degree == 0:
        return E1Column(m, 0, npi_free(m, m - 1, convention))
    if total_degree == 1:
        torsion = npi_free(m, m - 1, convention).rank
        return E1Column(m, 1, npi_free(m, m, convention), torsion, eta_special=(m == 2))
    raise ValueError("only total degrees 0 and 1 are modelled")


def hopf_image(m: int, convention: str = DEFAULT_CONVENTION) -> dict:
    """sum_i (-1)^i H(d^i b12) as a Lie element on 3 points (before reduction)."""
    ring = _ring(convention)
    out: dict = {}
    for i in range(4):
        image = coface_letter_map(i, 2)[(1, 2)]
        letters = sorted(image.items())
        sign = -1 if i % 2 else 1
        for a in range(len(letters)):
            for b in range(a + 1, len(letters)):
                (wa, ca), (wb, cb) = letters[a], letters[b]
                add_into(out, ring.bracket_words(wa, wb), sign * ca * cb)
    return out


def d1_into_zero_line(m: int, convention: str = DEFAULT_CONVENTION) -> InducedMap:
    """Matrix of d1 from the free part of e1(m-1, 1) to e1(m, 0)."""
    if m < 3:
        raise ValueError("d1 into the 0-line needs m >= 3")
    target = npi_free(m, m - 1, convention)
    source = npi_free(m - 1, m - 1, convention)
    if m == 3:
        y = target.coords(hopf_image(3, convention), foreign="drop")
        return InducedMap(source, target, IntMatrix.from_columns(target.rank, [{i: a for i, a in enumerate(y) if a}]))
    return InducedMap(source, target, alternating_coface_sum(source))


def e2_zero_line(m: int, convention: str = DEFAULT_CONVENTION, shuffle_seed: int | None = None) -> E2Group:
    """Cokernel of d1 in e1(m, 0).

    ``shuffle_seed`` permutes rows and columns first; the result must not
    depend on it (used by the order-independence tests).
    """
    if m < 2:
        raise ValueError("m >= 2")
    target_rank = e1(m, 0, convention).free_lattice.rank
    if m == 2:
        return E2Group(m, cokernel(IntMatrix(target_rank, 0)))
    mat = d1_into_zero_line(m, convention).matrix
    if shuffle_seed is not None:
        mat = _shuffled(mat, shuffle_seed)
    return E2Group(m, cokernel(mat))


def _shuffled(mat: IntMatrix, seed: int) -> IntMatrix:
    rng = random.Random(seed)
    rp = list(range(mat.rows))
    cp = list(range(mat.cols))
    rng.shuffle(rp)
    rng.shuffle(cp)
    return IntMatrix(mat.rows, mat.cols, {(rp[r], cp[c]): v for r, c, v in mat.triplets()})


def verify_e2comp(m: int, convention: str = DEFAULT_CONVENTION) -> dict:
    """Both sides of the E2 / chord-diagram comparison at column m as a JSON-ready report."""
    from .chord_diagrams import a_i_presentation

    deg0 = e1(m, 0, convention)
    if m >= 3:
        deg1 = e1(m - 1, 1, convention)
        d1 = d1_into_zero_line(m, convention).matrix
        d1_info = {"rows": d1.rows, "cols": d1.cols, "rank": d1.rows - cokernel(d1).free_rank}
        e1_deg1 = {"free": deg1.free_rank, "torsion2": deg1.torsion_rank, "eta_special": deg1.eta_special}
    else:
        d1_info = {"rows": deg0.free_lattice.rank, "cols": 0, "rank": 0}
        e1_deg1 = {"free": 0, "torsion2": 0, "eta_special": False}
    e2 = e2_zero_line(m, convention)
    chords = a_i_presentation(m - 1)
    exact = e2.presentation.same_group(chords)
    rational = e2.free_rank == chords.free_rank
    return {
        "m": m,
        "convention": convention,
        "e1_deg0": deg0.free_rank,
        "e1_deg1": e1_deg1,
        "d1": d1_info,
        "e2": {"free": e2.free_rank, "torsion": list(e2.torsion)},
        "chord_side": {"free": chords.free_rank, "torsion": list(chords.torsion)},
        "match": exact,
        "status": "exact" if exact else ("rational" if rational else "mismatch"),
    }
