"""Infinitesimal braid Lie rings and their cosimplicial structure maps.

The homotopy Lie ring of configurations of ``n`` points in R^3 is presented
by generators ``b_ij`` (1 <= i < j <= n) and the infinitesimal braid
relations

    [b_ij, b_kl] = 0                     {i,j} and {k,l} disjoint
    [b_ij, b_ik + b_jk] = 0              i, j, k distinct

The generators sit in odd degree (they come from pi_2 of a sphere, shifted
down by one), so the default convention is graded-symmetric: b_ji = -b_ij
(the antipodal map on S^2 has degree -1) and [b_ij, b_ij] need not vanish.
The ungraded reading (antisymmetric bracket, b_ji = b_ij) is kept as
``convention="classical"`` for comparison.

Generators are stored as ``(i, j)`` letters, so Lyndon words over them are
tuples of pairs. Relations are homogeneous in the *support* (the set of
indices used), so each length splits as a direct sum over supports, and the
component of support ``T`` is an order-preserving relabeling of the
full-support component on ``|T|`` points. The full-support ("covering")
components are the normalized homotopy.

Ideal components are built one length at a time from a Z-basis of the
previous length, ``I_{k+1} = [L_1, I_k]``, and quotients are taken with
:class:`~gwknots.exact_linalg.LatticeQuotient`.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .exact_linalg import IntMatrix, LatticeQuotient, kernel_basis
from .lie_core import (
    LieElement,
    LyndonRing,
    Vec,
    Word,
    add_into,
    basis_words_of_content,
    multidegree_basis,
    split,
    word_text,
)

DEFAULT_CONVENTION = "graded-symmetric"

Gen = tuple  # (i, j) with i < j


def braid_gens(n: int) -> list[Gen]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def gen(i: int, j: int) -> Gen:
    """Letter underlying b_ij (sorted pair)."""
    if i == j:
        raise ValueError("b_ii is not a generator")
    return (i, j) if i < j else (j, i)


def oriented(i: int, j: int, convention: str) -> Vec:
    """b_ij as an element: b_ji = -b_ij for odd generators, b_ji = b_ij classically."""
    sign = -1 if (i > j and convention == "graded-symmetric") else 1
    return {(gen(i, j),): sign}


def support(word: Word) -> frozenset:
    return frozenset(a for g in word for a in g)


def is_covering(word: Word, n: int) -> bool:
    return len(support(word)) == n


# ---------------------------------------------------------------------------
# relators


def base_relators(points: Sequence[int], ring: LyndonRing) -> list[Vec]:
    """Length-2 infinitesimal braid relators with support exactly ``points``.

    The three-index relation is imposed for every ordered triple.
    """
    pts = sorted(points)
    conv = ring.convention
    out: list[Vec] = []
    if len(pts) == 4:
        a, b, c, d = pts
        for e, f in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            out.append(ring.bracket({(e,): 1}, {(f,): 1}))
    elif len(pts) == 3:
        for i, j, k in itertools.permutations(pts):
            rhs = add_into(dict(oriented(i, k, conv)), oriented(j, k, conv))
            out.append(ring.bracket(oriented(i, j, conv), rhs))
    seen, uniq = set(), []
    for r in out:
        key = tuple(sorted(r.items()))
        if r and key not in seen:
            seen.add(key)
            uniq.append(r)
    return uniq


def covering_words(n: int, length: int, convention: str = DEFAULT_CONVENTION) -> list[Word]:
    """Basis words of the given length over b_ij that use every index 1..n."""
    if n < 2:
        return []
    out: list[Word] = []
    for ms in itertools.combinations_with_replacement(braid_gens(n), length):
        if len({a for g in ms for a in g}) == n:
            out.extend(basis_words_of_content(Counter(ms), convention))
    out.sort()
    return out


def relabel_word(word: Word, labels: Sequence[int]) -> Word:
    """Order-preserving relabel ``a -> labels[a-1]``; keeps Lyndon form."""
    return tuple((labels[i - 1], labels[j - 1]) for i, j in word)


def relabel_vec(vec: Vec, labels: Sequence[int]) -> Vec:
    return {relabel_word(w, labels): c for w, c in vec.items()}


class _Component:
    """Full-support component on ``s`` points at one length: ambient, ideal basis, quotient."""

    def __init__(self, s: int, length: int, words: list[Word], relators: Iterable[Vec]):
        self.s = s
        self.length = length
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        rel_iter = (self._to_sparse(v) for v in relators)
        self.quotient = LatticeQuotient(len(words), rel_iter)
        self.relator_count = self.quotient.relators_seen
        self._basis: list[Vec] | None = None

    def _to_sparse(self, vec: Vec) -> dict:
        idx = self.index
        return {idx[w]: c for w, c in vec.items()}

    def ideal_basis(self) -> list[Vec]:
        if self._basis is None:
            words = self.words
            self._basis = [
                {words[i]: c for i, c in v.items()} for v in self.quotient.relator_basis()
            ]
        return self._basis

    @property
    def rank(self) -> int:
        return self.quotient.free_rank


class IdealTable:
    """Memo of full-support ideal components, keyed by (points, length)."""

    def __init__(self, convention: str = DEFAULT_CONVENTION):
        self.convention = convention
        self.ring = LyndonRing(convention)
        self._components: dict[tuple[int, int], _Component] = {}

    def component(self, s: int, length: int) -> _Component:
        key = (s, length)
        comp = self._components.get(key)
        if comp is None:
            words = covering_words(s, length, self.convention)
            comp = _Component(s, length, words, self.generators(s, length))
            self._components[key] = comp
        return comp

    def generators(self, s: int, length: int) -> Iterable[Vec]:
        """Spanning set of the full-support ideal component.

        Length 2: the base relators. Longer: ``[b_e, v]`` for ``v`` running
        over a Z-basis of each sub-support component of the previous length
        with ``supp(v) | e == {1..s}``.
        """
        if length < 2 or s < 2:
            return
        if length == 2:
            yield from base_relators(range(1, s + 1), self.ring)
            return
        full = set(range(1, s + 1))
        bracket_words = self.ring.bracket_words
        for t in range(max(2, s - 2), s + 1):
            basis = self.component(t, length - 1).ideal_basis()
            if not basis:
                continue
            for T in itertools.combinations(range(1, s + 1), t):
                missing = full.difference(T)
                for e in braid_gens(s):
                    if not missing.issubset(e):
                        continue
                    ew = (e,)
                    for v in basis:
                        out: Vec = {}
                        for w, c in v.items():
                            add_into(out, bracket_words(ew, relabel_word(w, T)), c)
                        if out:
                            yield out


_TABLES: dict[str, IdealTable] = {}


def ideal_table(convention: str = DEFAULT_CONVENTION) -> IdealTable:
    t = _TABLES.get(convention)
    if t is None:
        t = _TABLES[convention] = IdealTable(convention)
    return t


def ib_relators(n: int, length: int, supp: Iterable[int] | None = None, convention: str = DEFAULT_CONVENTION) -> list[LieElement]:
    """Spanning set of the given-support component of the relator ideal at ``length``.

    Defaults to full support ``{1..n}``.
    """
    if length < 2:
        raise ValueError("relators start in length 2")
    labels = sorted(set(supp)) if supp is not None else list(range(1, n + 1))
    if labels and (labels[0] < 1 or labels[-1] > n):
        raise ValueError(f"support {labels} not inside 1..{n}")
    table = ideal_table(convention)
    return [
        LieElement.from_vec(relabel_vec(v, labels), convention)
        for v in table.generators(len(labels), length)
    ]


# ---------------------------------------------------------------------------
# presentations


@dataclass
class PiPresentation:
    """Free part of a homotopy lattice as (ambient Lyndon words) / (relator ideal).

    ``covering=True`` keeps only the full-support summand (the normalized
    part); otherwise every support is present.
    """

    n: int
    length: int
    covering: bool
    convention: str
    ambient: list[Word]
    blocks: list[tuple[tuple[int, ...], _Component]] = field(repr=False)

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.ambient)}
        # free coordinates are block-concatenated
        self._offsets = []
        off = 0
        for _, comp in self.blocks:
            self._offsets.append(off)
            off += comp.rank
        self.rank = off
        self._block_of = {}
        for b, (labels, _) in enumerate(self.blocks):
            self._block_of[tuple(labels)] = b

    @property
    def sphere_dimension(self) -> int:
        return self.length + 1

    @property
    def homotopy_degree(self) -> int:
        return self.length + 1

    def _block_for(self, word: Word) -> int | None:
        return self._block_of.get(tuple(sorted(support(word))))

    def coords(self, vec: Vec, foreign: str = "error") -> tuple[int, ...]:
        """Free coordinates of a Lie element over ambient words.

        ``foreign`` controls words outside this presentation (other supports
        when ``covering``): ``"error"`` raises, ``"drop"`` ignores them.
        """
        per_block: dict[int, dict] = {}
        for w, c in vec.items():
            b = self._block_for(w)
            if b is None:
                if foreign == "drop" and len(w) == self.length:
                    continue
                raise KeyError(f"word {word_text(w)} not in presentation (n={self.n}, length={self.length})")
            labels, comp = self.blocks[b]
            local = _unlabel_word(w, labels)
            per_block.setdefault(b, {})[comp.index[local]] = c
        out = [0] * self.rank
        for b, sparse in per_block.items():
            _, comp = self.blocks[b]
            off = self._offsets[b]
            for k, a in enumerate(comp.quotient.project(sparse)):
                out[off + k] = a
        return tuple(out)

    def is_zero(self, vec: Vec) -> bool:
        per_block: dict[int, dict] = {}
        for w, c in vec.items():
            b = self._block_for(w)
            if b is None:
                raise KeyError(f"word {word_text(w)} not in presentation")
            labels, comp = self.blocks[b]
            per_block.setdefault(b, {})[comp.index[_unlabel_word(w, labels)]] = c
        return all(self.blocks[b][1].quotient.is_zero(s) for b, s in per_block.items())

    def lift(self, k: int) -> Vec:
        """Ambient representative of the k-th free basis element."""
        for b, off in reversed(list(enumerate(self._offsets))):
            if k >= off:
                labels, comp = self.blocks[b]
                local = comp.quotient.lift(k - off)
                return {relabel_word(comp.words[i], labels): c for i, c in local.items()}
        raise IndexError(k)

    def lifts(self) -> list[Vec]:
        return [self.lift(k) for k in range(self.rank)]

    @property
    def relators(self) -> IntMatrix:
        cols = []
        for labels, comp in self.blocks:
            for v in comp.ideal_basis():
                cols.append({self.index[relabel_word(w, labels)]: c for w, c in v.items()})
        return IntMatrix.from_columns(len(self.ambient), cols)

    @property
    def basis_map(self) -> IntMatrix:
        """Free coordinates of every ambient monomial (columns)."""
        cols = []
        for w in self.ambient:
            cols.append({i: a for i, a in enumerate(self.coords({w: 1})) if a})
        return IntMatrix.from_columns(self.rank, cols)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "length": self.length,
            "covering": self.covering,
            "convention": self.convention,
            "ambient": [word_text(w) for w in self.ambient],
            "rank": self.rank,
            "relators": self.relators.to_json(),
        }


def _unlabel_word(word: Word, labels: Sequence[int]) -> Word:
    pos = {a: i + 1 for i, a in enumerate(labels)}
    return tuple((pos[i], pos[j]) for i, j in word)


@lru_cache(maxsize=None)
def _presentation(n: int, length: int, covering: bool, convention: str) -> PiPresentation:
    table = ideal_table(convention)
    blocks = []
    sizes = [n] if covering else range(2, n + 1)
    for s in sizes:
        if s < 2 or 2 * length < s:
            continue
        comp = table.component(s, length)
        if not comp.words:
            continue
        for labels in itertools.combinations(range(1, n + 1), s):
            blocks.append((labels, comp))
    blocks.sort(key=lambda b: b[0])
    ambient = sorted(relabel_word(w, labels) for labels, comp in blocks for w in comp.words)
    return PiPresentation(n, length, covering, convention, ambient, blocks)


def npi_free(n: int, length: int, convention: str = DEFAULT_CONVENTION) -> PiPresentation:
    """Normalized (full-support) free homotopy lattice, bracket length ``length``."""
    if n < 2 or length < 1:
        raise ValueError("need n >= 2 and length >= 1")
    return _presentation(n, length, True, convention)


def pi_free(n: int, length: int, convention: str = DEFAULT_CONVENTION) -> PiPresentation:
    """Free homotopy lattice with every support (the unnormalized group)."""
    if n < 0 or length < 1:
        raise ValueError("need n >= 0 and length >= 1")
    return _presentation(n, length, False, convention)


# ---------------------------------------------------------------------------
# structure maps


def coface_letter_map(k: int, n: int) -> dict[Gen, Vec]:
    """Images of generators under the k-th coface, n points -> n+1 points."""
    if not 0 <= k <= n + 1:
        raise IndexError(f"coface index {k} outside 0..{n + 1}")
    images: dict[Gen, Vec] = {}
    for i, j in braid_gens(n):
        if k == 0:
            images[(i, j)] = {((i + 1, j + 1),): 1}
        elif k == n + 1:
            images[(i, j)] = {((i, j),): 1}
        else:
            shift = lambda a: a if a < k else a + 1  # noqa: E731
            if k not in (i, j):
                images[(i, j)] = {((shift(i), shift(j)),): 1}
            elif j == k:  # b_ik with i < k
                images[(i, j)] = {((i, k),): 1, ((i, k + 1),): 1}
            else:  # b_kj with k < j
                images[(i, j)] = {((k, j + 1),): 1, ((k + 1, j + 1),): 1}
    return images


def codegeneracy_letter_map(k: int, n: int) -> dict[Gen, Vec]:
    """Images of generators under forgetting point k, n points -> n-1 points."""
    if not 1 <= k <= n:
        raise IndexError(f"codegeneracy index {k} outside 1..{n}")
    down = lambda a: a if a < k else a - 1  # noqa: E731
    return {
        (i, j): ({} if k in (i, j) else {((down(i), down(j)),): 1})
        for i, j in braid_gens(n)
    }


class Substitution:
    """Lie ring map determined by generator images, applied to Lyndon words."""

    def __init__(self, letter_map: dict[Gen, Vec], ring: LyndonRing):
        self.letter_map = letter_map
        self.ring = ring
        self._memo: dict[Word, Vec] = {}

    def word(self, w: Word) -> Vec:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            res = dict(self.letter_map[w[0]])
        else:
            u, v = split(w)
            res = self.ring.bracket(self.word(u), self.word(v))
        self._memo[w] = res
        return res

    def __call__(self, vec: Vec) -> Vec:
        out: Vec = {}
        for w, c in vec.items():
            add_into(out, self.word(w), c)
        return out


@dataclass
class InducedMap:
    source: PiPresentation
    target: PiPresentation
    matrix: IntMatrix

    def __matmul__(self, other: "InducedMap") -> "InducedMap":
        return InducedMap(other.source, self.target, self.matrix @ other.matrix)


def _ring(convention: str) -> LyndonRing:
    return ideal_table(convention).ring


def induced_map(
    letter_map: dict[Gen, Vec], source: PiPresentation, target: PiPresentation, check: bool = True
) -> InducedMap:
    """Matrix of a generator substitution between free lattices.

    With ``check``, relator images are verified to vanish in the target, i.e.
    the map is well defined on the quotient.
    """
    sub = Substitution(letter_map, _ring(source.convention))
    foreign = "drop" if target.covering else "error"
    cols = []
    for k in range(source.rank):
        y = target.coords(sub(source.lift(k)), foreign=foreign)
        cols.append({i: a for i, a in enumerate(y) if a})
    if check and not target.covering:
        for labels, comp in source.blocks:
            for v in comp.ideal_basis():
                img = sub(relabel_vec(v, labels))
                if img and not target.is_zero(img):
                    raise ArithmeticError("substitution does not preserve the relator ideal")
    return InducedMap(source, target, IntMatrix.from_columns(target.rank, cols))


def _same_kind(n: int, source: PiPresentation) -> PiPresentation:
    maker = npi_free if source.covering else pi_free
    return maker(n, source.length, source.convention)


def coface_matrix(k: int, source: PiPresentation, check: bool = True) -> InducedMap:
    """k-th coface (0 <= k <= n+1) into the presentation of the same kind on n+1 points."""
    target = _same_kind(source.n + 1, source)
    return induced_map(coface_letter_map(k, source.n), source, target, check)


def codegeneracy_matrix(k: int, source: PiPresentation, check: bool = True) -> InducedMap:
    """Forget point k (1 <= k <= n) into n-1 points (always the full lattice)."""
    if not 1 <= k <= source.n:
        raise IndexError(f"codegeneracy index {k} outside 1..{source.n}")
    target = pi_free(source.n - 1, source.length, source.convention)
    return induced_map(codegeneracy_letter_map(k, source.n), source, target, check)


def alternating_coface_sum(source: PiPresentation, correction: Callable | None = None) -> IntMatrix:
    """Sum_i (-1)^i d^i on a normalized lattice, as a matrix into npi_free(n+1)."""
    n = source.n
    target = npi_free(n + 1, source.length, source.convention)
    ring = _ring(source.convention)
    subs = [Substitution(coface_letter_map(i, n), ring) for i in range(n + 2)]
    cols = []
    for k in range(source.rank):
        x = source.lift(k)
        img: Vec = {}
        for i, sub in enumerate(subs):
            add_into(img, sub(x), -1 if i % 2 else 1)
        y = target.coords(img, foreign="drop")
        cols.append({r: a for r, a in enumerate(y) if a})
    return IntMatrix.from_columns(target.rank, cols)


def normalized_rank_by_kernels(n: int, length: int, convention: str = DEFAULT_CONVENTION) -> tuple[int, bool]:
    """Cross-check: rank of the common kernel of all codegeneracies on pi_free(n).

    Returns (rank, agrees) where ``agrees`` says the kernel lattice is exactly
    the covering summand inside the block decomposition.
    """
    full = pi_free(n, length, convention)
    if full.rank == 0:
        return 0, npi_free(n, length, convention).rank == 0
    stacked: dict[tuple[int, int], int] = {}
    row = 0
    for k in range(1, n + 1):
        m = codegeneracy_matrix(k, full, check=False).matrix
        for r, c, v in m.triplets():
            stacked[(row + r, c)] = v
        row += m.rows
    A = IntMatrix(row, full.rank, stacked) if row else IntMatrix(0, full.rank)
    ker = kernel_basis(A) if row else [[int(i == j) for j in range(full.rank)] for i in range(full.rank)]
    cover_cols = set()
    for b, (labels, comp) in enumerate(full.blocks):
        if len(labels) == n:
            off = full._offsets[b]
            cover_cols.update(range(off, off + comp.rank))
    agrees = len(ker) == len(cover_cols) and all(
        all(v[c] == 0 for c in range(full.rank) if c not in cover_cols) for v in ker
    )
    return len(ker), agrees


# ---------------------------------------------------------------------------
# Hilton cube side


def hilton_cube_basis(n: int, convention: str = DEFAULT_CONVENTION) -> list[Word]:
    """Brackets in x_1..x_{n-1} with every generator exactly once (the cube's total fiber)."""
    if n < 2:
        return []
    return multidegree_basis(list(range(1, n)), list(range(1, n)), convention)


def hilton_cube_rank(n: int, convention: str = DEFAULT_CONVENTION) -> int:
    return len(hilton_cube_basis(n, convention))


def hilton_images(n: int, convention: str = DEFAULT_CONVENTION) -> IntMatrix:
    """Square matrix: coordinates in npi_free(n, n-1) of the cube basis sent x_i -> b_in."""
    pres = npi_free(n, n - 1, convention)
    sub = Substitution({i: {((i, n),): 1} for i in range(1, n)}, _ring(convention))
    cols = []
    for w in hilton_cube_basis(n, convention):
        y = pres.coords(sub({w: 1}))
        cols.append({i: a for i, a in enumerate(y) if a})
    return IntMatrix.from_columns(pres.rank, cols)


# ---------------------------------------------------------------------------
# cosimplicial identities on induced matrices


def cosimplicial_identity_failures(n: int, length: int, convention: str = DEFAULT_CONVENTION) -> tuple[int, list[str]]:
    """Check every cosimplicial identity whose source has ``n`` points.

    Indexing: d^i (0 <= i <= n+1) doubles point i (0 and n+1 are the boundary
    points), s^j (1 <= j <= n) forgets point j. Checked identities:

        d^j d^i = d^i d^(j-1)        i < j
        s^j d^i = id                 j in {i, i+1}
        s^j d^i = d^i s^(j-1)        j > i+1
        s^j d^i = d^(i-1) s^j        j < i
        s^j s^i = s^i s^(j+1)        i <= j

    Returns (number of identities checked, labels of the failing ones).
    """
    src = pi_free(n, length, convention)
    d = lambda k, p: coface_matrix(k, p, check=False).matrix  # noqa: E731
    s = lambda k, p: codegeneracy_matrix(k, p, check=False).matrix  # noqa: E731
    up = pi_free(n + 1, length, convention)
    down = pi_free(n - 1, length, convention) if n >= 2 else None
    checked, bad = 0, []

    def record(label, lhs, rhs):
        nonlocal checked
        checked += 1
        if lhs != rhs:
            bad.append(label)

    for i in range(n + 2):
        for j in range(i + 1, n + 3):
            record(f"d{j}d{i}", d(j, up) @ d(i, src), d(i, up) @ d(j - 1, src))
    for i in range(n + 2):
        for j in range(1, n + 2):
            lhs = s(j, up) @ d(i, src)
            if j in (i, i + 1):
                rhs = IntMatrix.identity(src.rank)
            elif down is None:
                continue
            elif j > i + 1:
                rhs = d(i, down) @ s(j - 1, src)
            else:
                rhs = d(i - 1, down) @ s(j, src)
            record(f"s{j}d{i}", lhs, rhs)
    if down is not None:
        for i in range(1, n):
            for j in range(i, n):
                record(f"s{j}s{i}", s(j, down) @ s(i, src), s(i, down) @ s(j + 1, src))
    return checked, bad
