"""Exact integer linear algebra: Smith/Hermite forms, kernels, cokernels.

Everything is Python ``int`` so results never depend on word size. Two
engines are provided:

* :func:`smith_normal_form`, a dense elimination with full transform
  tracking (``U @ A @ V == D``), used for small matrices and as the final
  step of the sparse path;
* :class:`LatticeQuotient`, a sparse elimination over unit pivots for the
  large, very sparse relator systems that arise from Lie ideals and 4T
  relations. Whatever is left after unit pivoting is handed to the dense SNF.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

SparseVec = dict  # index -> nonzero int

DEFAULT_MAX_BITS = 4096

# how many reductions ran; the CLI cache tests read this
OPERATIONS: Counter = Counter()


class ResourceLimitError(RuntimeError):
    """Entry growth passed the configured bit-size cap."""


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Integer matrix stored sparsely by row."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self._data: dict[int, dict[int, int]] = {}
        if data:
            for (r, c), v in data.items():
                self[r, c] = v

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else (cols or 0)
        m = cls(nr, nc)
        for r, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    m._data.setdefault(r, {})[c] = int(v)
        return m

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVec]) -> "IntMatrix":
        m = cls(rows, len(columns))
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    m._check(r, c)
                    m._data.setdefault(r, {})[c] = int(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m._data[i] = {i: 1}
        return m

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        self._check(r, c)
        return self._data.get(r, {}).get(c, 0)

    def __setitem__(self, rc: tuple[int, int], v: int) -> None:
        r, c = rc
        self._check(r, c)
        v = int(v)
        if v:
            self._data.setdefault(r, {})[c] = v
        else:
            row = self._data.get(r)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del self._data[r]

    def row(self, r: int) -> SparseVec:
        return dict(self._data.get(r, {}))

    def column(self, c: int) -> SparseVec:
        return {r: row[c] for r, row in self._data.items() if c in row}

    def columns(self) -> list[SparseVec]:
        cols: list[SparseVec] = [{} for _ in range(self.cols)]
        for r, row in self._data.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(r, c, v) for r in sorted(self._data) for c, v in sorted(self._data[r].items())]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.cols, self.rows)
        for r, row in self._data.items():
            for c, v in row.items():
                t._data.setdefault(c, {})[r] = v
        return t

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        for r, row in self._data.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = other._data.get(k)
                if orow:
                    for c, b in orow.items():
                        acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out._data[r] = acc
        return out

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = self.copy()
        for r, row in other._data.items():
            for c, v in row.items():
                out[r, c] = out[r, c] + v
        return out

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        out = IntMatrix(self.rows, self.cols)
        if k:
            out._data = {r: {c: k * v for c, v in row.items()} for r, row in self._data.items()}
        return out

    def copy(self) -> "IntMatrix":
        out = IntMatrix(self.rows, self.cols)
        out._data = {r: dict(row) for r, row in self._data.items()}
        return out

    def apply(self, vec: SparseVec) -> SparseVec:
        """Matrix times sparse column vector."""
        out: dict[int, int] = {}
        for r, row in self._data.items():
            s = 0
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = s
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.triplets())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # serialization: {rows, cols, entries: [[r, c, "value"], ...]} row-major

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, str(v)] for r, c, v in self.triplets()],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "IntMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = cls(int(obj["rows"]), int(obj["cols"]))
        for r, c, v in obj["entries"]:
            m[int(r), int(c)] = int(v)
        return m


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    M = A.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Smith normal form (dense)


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _bits_guard(x: int, max_bits: int | None) -> None:
    if max_bits is not None and x.bit_length() > max_bits:
        raise ResourceLimitError(
            f"entry of {x.bit_length()} bits exceeds cap of {max_bits}; use a modular pivot strategy"
        )


def _snf_dense(
    A: list[list[int]], m: int, n: int, track: bool, max_bits: int | None
) -> tuple[list[list[int]], list[list[int]] | None, list[list[int]] | None, list[int]]:
    """In-place SNF of a dense m x n list matrix.

    Pivot = smallest nonzero |entry| in the active block, ties broken by
    (row, col). Returns (D, U, V, divisors) with U A V = D when tracked.
    """
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    divisors: list[int] = []

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def row_axpy(dst, src, q):  # row dst -= q * row src
        a_d, a_s = A[dst], A[src]
        for k in range(n):
            if a_s[k]:
                a_d[k] -= q * a_s[k]
        if U is not None:
            u_d, u_s = U[dst], U[src]
            for k in range(m):
                if u_s[k]:
                    u_d[k] -= q * u_s[k]

    def col_axpy(dst, src, q):  # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    def nearest_quotient(a, p):
        q, r = divmod(a, p)
        if 2 * abs(r) > abs(p):
            q += 1 if (r > 0) == (p > 0) else -1
        return q

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = nearest_quotient(a, p)
                    row_axpy(i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                a = A[t][j]
                if a:
                    q = nearest_quotient(a, p)
                    col_axpy(j, t, q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/col t onto the diagonal
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                else:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        if max_bits is not None:
            for row in A:
                for x in row:
                    _bits_guard(x, max_bits)
        divisors.append(A[t][t])
        t += 1
    return A, U, V, divisors


def smith_normal_form(A: IntMatrix, max_bits: int | None = DEFAULT_MAX_BITS) -> SmithForm:
    """Smith normal form with unimodular transforms, ``U @ A @ V == D``.

    Raises ResourceLimitError if an intermediate entry exceeds ``max_bits``.
    """
    m, n = A.rows, A.cols
    OPERATIONS["snf"] += 1
    D, U, V, divs = _snf_dense(A.to_dense(), m, n, True, max_bits)
    return SmithForm(IntMatrix.from_dense(U, m), IntMatrix.from_dense(D, n), IntMatrix.from_dense(V, n), tuple(divs))


def invariant_factors(A: IntMatrix, max_bits: int | None = DEFAULT_MAX_BITS) -> tuple[int, ...]:
    """Nonzero SNF diagonal without computing transforms."""
    OPERATIONS["snf"] += 1
    _, _, _, divs = _snf_dense(A.to_dense(), A.rows, A.cols, False, max_bits)
    return tuple(divs)


# ---------------------------------------------------------------------------
# Hermite normal form and kernels


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Output rows are a basis in echelon form: leading entries positive, entries
    above each pivot reduced into ``[0, pivot)``. Canonical for the lattice.
    """
    M = [list(map(int, r)) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while M and col < ncols:
        live = [r for r in M if r[col]]
        if not live:
            col += 1
            continue
        rest = [r for r in M if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r2 = [a - q * b for a, b in zip(r, p)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        M = rest
        col += 1
    # reduce above pivots
    pivots = []
    for r in out:
        pivots.append(next(k for k, a in enumerate(r) if a))
    for i in range(len(out)):
        for k in range(i):
            c = pivots[i]
            q = out[k][c] // out[i][c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return out


def kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Basis of the integer kernel {v : A v = 0}, in Hermite normal form.

    Taken from the trailing columns of the SNF column transform, which is
    unimodular, so the lattice is saturated.
    """
    snf = smith_normal_form(A, max_bits=None)
    r = snf.rank
    V = snf.V.to_dense()
    vecs = [[V[i][j] for i in range(A.cols)] for j in range(r, A.cols)]
    return hermite_rows(vecs, A.cols)


# ---------------------------------------------------------------------------
# cokernels


@dataclass(frozen=True)
class CokerPresentation:
    ambient_rank: int
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def rank_of_relators(self) -> int:
        return self.ambient_rank - self.free_rank

    def same_group(self, other: "CokerPresentation") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "free": self.free_rank, "torsion": list(self.torsion)}


def cokernel(relators: IntMatrix, max_bits: int | None = DEFAULT_MAX_BITS) -> CokerPresentation:
    """Z^rows modulo the span of the columns of ``relators``.

    Small or dense inputs go straight to the dense SNF; large sparse ones
    through :class:`LatticeQuotient`. Both give the same invariants.
    """
    cells = relators.rows * relators.cols
    if cells <= 40_000 or relators.nnz > 0.05 * cells:
        return cokernel_dense(relators, max_bits)
    return LatticeQuotient(relators.rows, relators.columns(), max_bits=max_bits).presentation


def cokernel_dense(relators: IntMatrix, max_bits: int | None = DEFAULT_MAX_BITS) -> CokerPresentation:
    """Same as :func:`cokernel` but through one dense SNF (oracle for the sparse path)."""
    divs = invariant_factors(relators, max_bits)
    return CokerPresentation(relators.rows, relators.rows - len(divs), tuple(d for d in divs if d != 1))


class LatticeQuotient:
    """``Z^n / span(relators)`` with coordinates on the quotient.

    Relators are consumed one at a time. Each is reduced by the rewriting
    rules found so far; if a unit coefficient remains, its generator becomes
    a pivot and is rewritten in terms of the others. Relators without a unit
    coefficient are kept aside and settled by a dense SNF at the end.

    After :meth:`finalize` the quotient is ``Z^free_rank + torsion``:
    :meth:`project` gives free coordinates, :meth:`lift` a preimage of each
    free basis vector, and :meth:`relator_basis` a Z-basis of the relator
    lattice itself.
    """

    def __init__(
        self,
        n: int,
        relators: Iterable[SparseVec] = (),
        *,
        max_bits: int | None = DEFAULT_MAX_BITS,
        pivot: str = "max",
    ):
        self.n = n
        self.max_bits = max_bits
        self.pivot = pivot
        self.rules: dict[int, SparseVec] = {}  # pivot -> rhs (pivot == rhs mod relators)
        self._rule_order: list[int] = []
        self._hard: list[SparseVec] = []
        self._final = False
        self.relators_seen = 0
        for r in relators:
            self.add(r)
        self.finalize()

    # -- construction --

    def _reduce(self, vec: SparseVec) -> SparseVec:
        rules = self.rules
        vec = {k: v for k, v in vec.items() if v}
        while True:
            hits = [k for k in vec if k in rules]
            if not hits:
                return vec
            for k in hits:
                c = vec.pop(k, 0)
                if c:
                    for g, a in rules[k].items():
                        x = vec.get(g, 0) + c * a
                        if x:
                            vec[g] = x
                        else:
                            vec.pop(g, None)

    def add(self, relator: SparseVec) -> None:
        if self._final:
            raise RuntimeError("quotient already finalized")
        for k in relator:
            if not 0 <= k < self.n:
                raise IndexError(f"relator index {k} outside ambient rank {self.n}")
        self.relators_seen += 1
        vec = self._reduce(relator)
        if vec:
            self._absorb(vec)

    def _absorb(self, vec: SparseVec) -> None:
        units = [k for k, v in vec.items() if v == 1 or v == -1]
        if not units:
            self._hard.append(vec)
            return
        p = max(units) if self.pivot == "max" else min(units)
        c = vec.pop(p)
        # c*p + rest = 0  =>  p = -c*rest   (c = +-1)
        self.rules[p] = {k: -c * v for k, v in vec.items()}
        self._rule_order.append(p)

    def finalize(self) -> "LatticeQuotient":
        if self._final:
            return self
        OPERATIONS["quotient"] += 1
        # settle hard relators; new unit pivots may appear after reduction
        while True:
            pending, self._hard = self._hard, []
            progressed = False
            for vec in pending:
                vec = self._reduce(vec)
                if not vec:
                    continue
                before = len(self.rules)
                self._absorb(vec)
                progressed |= len(self.rules) > before
            if not progressed:
                break
        self._normal: dict[int, SparseVec] = {}
        self.free_gens = [g for g in range(self.n) if g not in self.rules]
        self._free_pos = {g: i for i, g in enumerate(self.free_gens)}
        k = len(self.free_gens)
        hard = [self._reduce(v) for v in self._hard]
        hard = [v for v in hard if v]
        dense = [[0] * len(hard) for _ in range(k)]
        for c, v in enumerate(hard):
            for g, a in v.items():
                dense[self._free_pos[g]][c] = a
        D, U, V, divs = _snf_dense(dense, k, len(hard), True, self.max_bits)
        self._U = U
        self._Uinv_cache = None
        self._hard_final = hard
        self._hard_divs = divs
        r = len(divs)
        self.free_rank = k - r
        self.torsion = tuple(d for d in divs if d != 1)
        self._torsion_rows = [(i, d) for i, d in enumerate(divs) if d != 1]
        self.presentation = CokerPresentation(self.n, self.free_rank, self.torsion)
        self._final = True
        return self

    # -- queries --

    def normal_form(self, vec: SparseVec) -> SparseVec:
        """Rewrite onto non-pivot generators (memoized per generator)."""
        out: dict[int, int] = {}
        for g, c in vec.items():
            if not c:
                continue
            for h, a in self._gen_normal(g).items():
                x = out.get(h, 0) + c * a
                if x:
                    out[h] = x
                else:
                    out.pop(h, None)
        return out

    def _gen_normal(self, g: int) -> SparseVec:
        nf = self._normal.get(g)
        if nf is not None:
            return nf
        rhs = self.rules.get(g)
        if rhs is None:
            nf = {g: 1}
        else:
            # iterative to avoid deep recursion on long rule chains
            stack = [g]
            while stack:
                top = stack[-1]
                missing = [h for h in self.rules[top] if h in self.rules and h not in self._normal]
                if missing:
                    stack.extend(missing)
                    continue
                stack.pop()
                if top in self._normal:
                    continue
                acc: dict[int, int] = {}
                for h, a in self.rules[top].items():
                    src = self._normal.get(h, {h: 1}) if h in self.rules else {h: 1}
                    for f, b in src.items():
                        x = acc.get(f, 0) + a * b
                        if x:
                            acc[f] = x
                        else:
                            acc.pop(f, None)
                self._normal[top] = acc
            nf = self._normal[g]
        self._normal[g] = nf
        return nf

    def _coords(self, vec: SparseVec) -> list[int]:
        nf = self.normal_form(vec)
        k = len(self.free_gens)
        x = [0] * k
        for g, a in nf.items():
            x[self._free_pos[g]] = a
        U = self._U
        return [sum(U[i][j] * x[j] for j in range(k) if x[j]) for i in range(k)]

    def project(self, vec: SparseVec) -> tuple[int, ...]:
        """Free-part coordinates of the class of ``vec``."""
        y = self._coords(vec)
        return tuple(y[len(self._hard_divs):])

    def torsion_coordinates(self, vec: SparseVec) -> tuple[int, ...]:
        y = self._coords(vec)
        return tuple(y[i] % d for i, d in self._torsion_rows)

    def is_zero(self, vec: SparseVec) -> bool:
        y = self._coords(vec)
        r = len(self._hard_divs)
        if any(y[r:]):
            return False
        return all(y[i] % d == 0 for i, d in enumerate(self._hard_divs))

    @property
    def _Uinv(self) -> list[list[int]]:
        if self._Uinv_cache is None:
            self._Uinv_cache = _unimodular_inverse(self._U)
        return self._Uinv_cache

    def lift(self, k: int) -> SparseVec:
        """Ambient vector whose class is the k-th free basis element."""
        col = len(self._hard_divs) + k
        Uinv = self._Uinv
        return {g: Uinv[i][col] for i, g in enumerate(self.free_gens) if Uinv[i][col]}

    def projection_matrix(self, vectors: Sequence[SparseVec]) -> IntMatrix:
        """Columns = free coordinates of the given ambient vectors."""
        cols = [dict((i, a) for i, a in enumerate(self.project(v)) if a) for v in vectors]
        return IntMatrix.from_columns(self.free_rank, cols)

    def relator_basis(self) -> list[SparseVec]:
        """A Z-basis of the relator lattice: rule vectors plus the settled hard part."""
        basis = []
        for p in self._rule_order:
            v = {g: -a for g, a in self.rules[p].items()}
            v[p] = 1
            basis.append(v)
        if self._hard_final:
            k = len(self.free_gens)
            rows = []
            for v in self._hard_final:
                row = [0] * k
                for g, a in v.items():
                    row[self._free_pos[g]] = a
                rows.append(row)
            for row in hermite_rows(rows, k):
                basis.append({self.free_gens[i]: a for i, a in enumerate(row) if a})
        return basis

    @property
    def pivot_count(self) -> int:
        return len(self.rules)


def _unimodular_inverse(U: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix by exact Gauss-Jordan over Z."""
    n = len(U)
    if n == 0:
        return []
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        # unimodular => column gcd over remaining rows is 1; Euclid down to a unit pivot
        while True:
            live = [i for i in range(c, n) if A[i][c]]
            live.sort(key=lambda i: (abs(A[i][c]), i))
            p = live[0]
            for i in live[1:]:
                q = A[i][c] // A[p][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[p])]
            if all(A[i][c] == 0 for i in range(c, n) if i != p):
                break
        A[c], A[p] = A[p], A[c]
        if A[c][c] < 0:
            A[c] = [-a for a in A[c]]
        if A[c][c] != 1:
            raise ValueError("matrix is not unimodular")
        for i in range(n):
            if i != c and A[i][c]:
                q = A[i][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]
