import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gwknots import chord_diagrams as cd
from gwknots.exact_linalg import IntMatrix, LatticeQuotient, cokernel


def double_factorial(m):
    out = 1
    for k in range(1, m + 1):
        out *= 2 * k - 1
    return out


def involution_count(m):
    # fixed-point-free involutions of 2m points, straight from permutations
    pts = range(2 * m)
    return sum(
        1 for p in itertools.permutations(pts) if all(p[i] != i and p[p[i]] == i for i in pts)
    )


def rational_rank(columns, nrows):
    rows = [[Fraction(col.get(r, 0)) for col in columns] for r in range(nrows)]
    rank, ncols = 0, len(columns)
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(nrows):
            if r != rank and rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("m", range(1, 7))
def test_enumeration_count(m):
    diagrams = cd.enumerate_diagrams(m)
    assert len(diagrams) == double_factorial(m) == [1, 3, 15, 105, 945, 10395][m - 1]
    assert len(set(diagrams)) == len(diagrams)
    assert list(diagrams) == sorted(diagrams, key=lambda d: d.chords)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_enumeration_against_permutations(m):
    assert len(cd.enumerate(m)) == involution_count(m)


def test_enumeration_examples():
    assert [str(d) for d in cd.enumerate(1)] == ["[(1,2)]"]
    assert len(cd.enumerate(2)) == 3


def test_parse_and_text():
    d = cd.ChordDiagram.parse("[(2,4),(1,3)]")
    assert str(d) == "[(1,3),(2,4)]"
    with pytest.raises(ValueError):
        cd.ChordDiagram.parse("[(1,2),(2,3)]")
    with pytest.raises(ValueError):
        cd.ChordDiagram.parse("nothing")


def test_sep_examples():
    sep = {d for r in cd.sep_relators(2) for d in r}
    assert cd.ChordDiagram.parse("[(1,2),(3,4)]") in sep
    assert cd.ChordDiagram.parse("[(1,3),(2,4)]") not in sep
    assert cd.ChordDiagram.parse("[(1,4),(2,3)]") not in sep
    assert all(len(r) == 1 and set(r.values()) == {1} for r in cd.sep_relators(4))


def test_four_t_basics():
    assert cd.four_t_relators(1) == []
    for pattern in cd.SIGN_PATTERNS:
        for r in cd.four_t_relators(4, pattern):
            assert 1 <= len(r) <= 4
            assert sum(r.values()) == 0
            assert all(d.m == 4 for d in r)


def test_m2_ranks():
    diagrams = cd.enumerate(2)
    index = {d: i for i, d in enumerate(diagrams)}
    cols = [{index[d]: c for d, c in r.items()} for r in cd.four_t_relators(2)]
    only_4t = cokernel(IntMatrix.from_columns(3, cols))
    assert only_4t.free_rank == 2 and only_4t.torsion == ()
    assert cd.a_i_presentation(2).free_rank == 1


EXPECTED = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3}


@pytest.mark.parametrize("m", sorted(EXPECTED))
def test_presentation_values(m):
    pres = cd.a_i_presentation(m)
    assert pres.free_rank == EXPECTED[m] and pres.torsion == ()


@pytest.mark.parametrize("m", [2, 3, 4])
def test_rank_against_rational_oracle(m):
    mat = cd.relator_matrix(m)
    assert mat.rows - rational_rank(mat.columns(), mat.rows) == cd.a_i_presentation(m).free_rank


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sparse_and_dense_agree(m):
    assert cd.a_i_presentation(m, sparse=True).same_group(cd.a_i_presentation(m, sparse=False))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("pattern", sorted(cd.SIGN_PATTERNS))
def test_reflection_is_automorphism(m, pattern):
    diagrams = cd.enumerate(m)
    index = {d: i for i, d in enumerate(diagrams)}
    mat = cd.relator_matrix(m, pattern)
    q = LatticeQuotient(mat.rows, mat.columns())
    for col in mat.columns():
        image = {}
        for i, c in col.items():
            j = index[diagrams[i].reflect()]
            image[j] = image.get(j, 0) + c
        assert q.is_zero(image)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("pattern", sorted(cd.SIGN_PATTERNS))
def test_negation_invariance(m, pattern):
    a = cokernel(cd.relator_matrix(m, pattern))
    b = cokernel(cd.relator_matrix(m, pattern, negate=True))
    assert a.same_group(b)


def test_crossed_pattern_recorded():
    # the alternative sign grouping gives torsion; kept for comparison only
    pres = cd.a_i_presentation(2, "crossed")
    assert (pres.free_rank, pres.torsion) == (0, (2,))


def test_report_shape():
    rep = cd.report(3)
    assert rep == {
        "m": 3,
        "diagrams": 15,
        "sep_count": len(cd.sep_relators(3)),
        "fourt_count": len(cd.four_t_relators(3)),
        "free_rank": 1,
        "torsion": [],
        "pattern": "standard",
    }


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.sampled_from(cd.enumerate(m))))
def test_diagram_invariants(d):
    assert d.reflect().reflect() == d
    assert d.reflect().is_separated() == d.is_separated()
    assert cd.ChordDiagram.parse(str(d)) == d
    p = d.partner()
    assert all(p[p[x]] == x and p[x] != x for x in p)
