from itertools import product

import pytest

from apolar.classify import enumerate_candidates
from apolar.decomp import (NotCertifiedError, a_subspace, decompose, feasible_decompositions,
                           q_grid)
from apolar.kunte import certify_self_dual, module_of
from apolar.macaulay import sequence_admissible

from _pools import DIAG_X2_X, DIAG_X_1, mat, symmetric_pool


def certified(rows):
    return certify_self_dual(mat(rows)).module


def nonzero_rows(dec):
    return [r for _, r in dec.nonzero_rows()]


def naive_feasible(h):
    """Every table of rows with column sums h, filtered; no pruning, no symmetry shortcut."""
    d = len(h) - 1
    shapes = [list(product(*[range(h[t] + 1) for t in range(d - s + 1)])) for s in range(d + 1)]
    out = set()
    for rows in product(*shapes):
        if any(r != r[::-1] for r in rows):
            continue
        if rows[0][0] != h[d]:
            continue
        cols = [sum(r[t] for r in rows if t < len(r)) for t in range(d + 1)]
        if tuple(cols) != tuple(h):
            continue
        acc = [0] * (d + 1)
        ok = True
        for r in rows:
            for t, x in enumerate(r):
                acc[t] += x
            if not sequence_admissible(acc):
                ok = False
                break
        if ok:
            out.add(rows)
    return out


def test_a_subspace_examples():
    w = certified(DIAG_X_1)
    d = w.socle_degree
    assert a_subspace(w, 0, d + 1) == w.basis
    assert a_subspace(w, d + 1, 1).dim == 0
    assert a_subspace(w, 0, 1).dim == 2
    assert a_subspace(w, 0, 0).dim == 0
    assert a_subspace(w, -2, d + 1) == w.basis


def test_q_grid_example():
    g = q_grid(certified(DIAG_X_1))
    assert (g[0, 2], g[1, 1], g[0, 1]) == (1, 1, 1)
    assert g.total == 3


def test_decompose_examples():
    assert nonzero_rows(decompose(certified([["x^2+y^2"]]))) == [(1, 2, 1)]
    assert decompose(certified(DIAG_X_1)).rows == ((1, 1), (1,))
    assert decompose(certified(DIAG_X2_X)).rows == ((1, 1, 1), (1, 1), (0,))
    dec = decompose(certified([["x^3+y^3+z^2"]]))
    assert nonzero_rows(dec) == [(1, 2, 2, 1), (0, 1, 0)]


def test_table_rendering():
    text = decompose(certified(DIAG_X_1)).table()
    assert text.splitlines() == ["D0: 1 1", "D1: 1"]


def test_uncertified_module_rejected():
    w = module_of(mat([["x", "1"], ["1", "x"]]))
    with pytest.raises(NotCertifiedError, match="certificate=None"):
        decompose(w)
    with pytest.raises(NotCertifiedError):
        q_grid(w)
    with pytest.raises(NotCertifiedError):
        a_subspace(w, 0, 1)


def test_feasibility_examples():
    assert feasible_decompositions((1, 2, 3, 1, 1)) == []
    (only,) = feasible_decompositions((2, 1))
    assert only.rows == ((1, 1), (1,))
    tables = feasible_decompositions((3, 2, 3))
    assert [nonzero_rows(t) for t in tables] == [[(3, 2, 3)]]


def test_feasibility_rejects_bad_input():
    for h in ((), (1, 0, 1), (2, -1)):
        with pytest.raises(ValueError):
            feasible_decompositions(h)


@pytest.mark.parametrize("m", range(1, 7))
def test_feasibility_matches_naive_search(m):
    for h in enumerate_candidates(m):
        got = {t.rows for t in feasible_decompositions(h)}
        assert got == naive_feasible(h), h


@pytest.mark.parametrize("idx", range(100))
def test_theorem_on_pool(idx):
    N = symmetric_pool()[idx]
    w = certify_self_dual(N).module
    dec = decompose(w)  # raises DecompositionError if any clause fails
    g = q_grid(w)
    d = dec.d
    h = w.hilbert()
    for k in range(d + 2):
        assert g[k, 0] == 0 and g[d + 1, k] == 0
        for l in range(1, d + 2):
            assert g[k, l] == g[l - 1, k + 1]
            if k + l > d + 1:
                assert g[k, l] == 0
    for s, row in enumerate(dec.rows):
        assert len(row) == d - s + 1
        assert row == row[::-1]
    assert dec.rows[0][0] == dec.rows[0][-1] == h[d]
    assert h[0] >= h[d]
    assert dec.hilbert == h
    for partial in dec.partial_sums:
        assert sequence_admissible(partial)
    assert g.total == w.total_dim
    assert dec.rows in {t.rows for t in feasible_decompositions(h)}
