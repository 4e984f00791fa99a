"""Interval chord diagrams and the group A^I_m = Z{diagrams} / (4T, SEP)."""
from __future__ import annotations

import builtins
import re
from dataclasses import dataclass
from functools import lru_cache

from .exact_linalg import CokerPresentation, IntMatrix, LatticeQuotient, cokernel, cokernel_dense

Pair = tuple[int, int]

# sign of D(left of p), D(right of p), D(left of q), D(right of q).
# "standard" is the invariance of the Casimir under the new chord's end
# (left minus right, summed over both ends of the chosen chord); it makes
# the two ways of closing a line diagram into a circle agree. "crossed"
# flips the q-pair and is kept for experiments only.
SIGN_PATTERNS = {
    "standard": (1, -1, 1, -1),
    "crossed": (1, -1, -1, 1),
}
DEFAULT_PATTERN = "standard"


@dataclass(frozen=True, order=True)
class ChordDiagram:
    """Perfect matching of positions 1..2m, stored as a sorted pair list."""

    chords: tuple[Pair, ...]

    def __post_init__(self):
        pts = sorted(p for c in self.chords for p in c)
        if pts != list(range(1, 2 * len(self.chords) + 1)):
            raise ValueError(f"not a perfect matching of 1..{2 * len(self.chords)}: {self.chords}")
        if any(a >= b for a, b in self.chords) or list(self.chords) != sorted(self.chords):
            raise ValueError("chords must be sorted (a, b) pairs with a < b")

    @classmethod
    def from_pairs(cls, pairs) -> "ChordDiagram":
        return cls(tuple(sorted(tuple(sorted(p)) for p in pairs)))

    @classmethod
    def parse(cls, text: str) -> "ChordDiagram":
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        if not pairs:
            raise ValueError(f"cannot parse diagram {text!r}")
        return cls.from_pairs((int(a), int(b)) for a, b in pairs)

    @property
    def m(self) -> int:
        return len(self.chords)

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.chords:
            out[a], out[b] = b, a
        return out

    def reflect(self) -> "ChordDiagram":
        n = 2 * self.m + 1
        return ChordDiagram.from_pairs((n - a, n - b) for a, b in self.chords)

    def is_separated(self) -> bool:
        return any(not any(a <= g < b for a, b in self.chords) for g in range(1, 2 * self.m))

    def __str__(self) -> str:
        return "[" + ",".join(f"({a},{b})" for a, b in self.chords) + "]"


def _matchings(points: tuple[int, ...]):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, other in builtins.enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield ((first, other),) + tail


@lru_cache(maxsize=None)
def enumerate_diagrams(m: int) -> tuple[ChordDiagram, ...]:
    """All (2m-1)!! diagrams in lexicographic order of their pair lists."""
    if m < 1:
        raise ValueError("m >= 1")
    return tuple(ChordDiagram(tuple(sorted(c))) for c in _matchings(tuple(range(1, 2 * m + 1))))


# public name shadows a builtin, so keep both
enumerate = enumerate_diagrams  # noqa: A001


def sep_relators(m: int) -> list[dict[ChordDiagram, int]]:
    return [{d: 1} for d in enumerate_diagrams(m) if d.is_separated()]


def _place(chords, far: float, near: float) -> ChordDiagram:
    pts = sorted([p for c in chords for p in c] + [far, near])
    rank = {x: i + 1 for i, x in builtins.enumerate(pts)}
    return ChordDiagram.from_pairs([(rank[a], rank[b]) for a, b in chords] + [(rank[far], rank[near])])


def four_t_relators(m: int, pattern: str = DEFAULT_PATTERN) -> list[dict[ChordDiagram, int]]:
    """4T relators: slide the near end of a new chord around both ends of a chosen chord.

    The far end sits in a fixed gap (``g + 0.5``); the near end sits just
    beside the chosen chord's endpoints (``p -+ 0.25``), so it is always
    adjacent to them even when it shares a gap with the far end.
    """
    if m < 2:
        return []
    signs = SIGN_PATTERNS[pattern]
    seen = set()
    out = []
    for template in enumerate_diagrams(m - 1):
        for p, q in template.chords:
            for g in range(0, 2 * m - 1):
                far = g + 0.5
                terms: dict[ChordDiagram, int] = {}
                for s, near in zip(signs, (p - 0.25, p + 0.25, q - 0.25, q + 0.25)):
                    d = _place(template.chords, far, near)
                    terms[d] = terms.get(d, 0) + s
                terms = {d: c for d, c in terms.items() if c}
                if not terms:
                    continue
                key = tuple(sorted(terms.items()))
                neg = tuple(sorted((d, -c) for d, c in terms.items()))
                if key in seen or neg in seen:
                    continue
                seen.add(key)
                out.append(terms)
    out.sort(key=lambda t: tuple(sorted(t.items())))
    return out


def relator_matrix(m: int, pattern: str = DEFAULT_PATTERN, negate: bool = False) -> IntMatrix:
    """Columns: SEP relators then 4T relators, over the diagram basis."""
    diagrams = enumerate_diagrams(m)
    index = {d: i for i, d in builtins.enumerate(diagrams)}
    sign = -1 if negate else 1
    cols = [{index[d]: c for d, c in r.items()} for r in sep_relators(m)]
    cols += [{index[d]: sign * c for d, c in r.items()} for r in four_t_relators(m, pattern)]
    return IntMatrix.from_columns(len(diagrams), cols)


@lru_cache(maxsize=None)
def a_i_presentation(m: int, pattern: str = DEFAULT_PATTERN, sparse: bool | None = None) -> CokerPresentation:
    """Free rank and torsion of A^I_m.

    ``sparse=None`` lets :func:`cokernel` choose; True forces the
    elimination route, False the dense SNF.
    """
    mat = relator_matrix(m, pattern)
    if sparse is None:
        return cokernel(mat)
    if sparse:
        return LatticeQuotient(mat.rows, mat.columns()).presentation
    return cokernel_dense(mat)


def report(m: int, pattern: str = DEFAULT_PATTERN, sparse: bool | None = None) -> dict:
    pres = a_i_presentation(m, pattern, sparse)
    return {
        "m": m,
        "diagrams": len(enumerate_diagrams(m)),
        "sep_count": len(sep_relators(m)),
        "fourt_count": len(four_t_relators(m, pattern)),
        "free_rank": pres.free_rank,
        "torsion": list(pres.torsion),
        "pattern": pattern,
    }
