import pytest

from apolar.exact import Subspace
from apolar.invsys import closure, degree_layer, hilbert, loewy, monomials_upto, power_layer
from apolar.kunte import module_of
from apolar.macaulay import sequence_admissible
from apolar.poly import DualElement, Polynomial, contract_dual, parse_dual

from _pools import (CURATED_2231, DIAG_X2_X, EXAMPLE_MODULE, asymmetric_pool, mat,
                    symmetric_pool)


def W(*gens, nvars=None):
    return closure([parse_dual(g, nvars) for g in gens])


def brute_span(w):
    """Span of every y^a applied to every generator (no saturation loop)."""
    vecs = []
    for g in w.generators:
        for a in monomials_upto(w.num_vars, max(g.degree, 0)):
            v = w.grid.vector(contract_dual(a, g))
            dense = [0] * len(w.grid)
            for c, x in v.items():
                dense[c] = x
            vecs.append(dense)
    return Subspace.span(vecs, len(w.grid))


def slice_upto(w, k):
    n = len(w.grid)
    return Subspace.span([[int(i == c) for i in range(n)]
                          for c in range(n) if w.grid.degree[c] <= k], n)


def small_pool():
    return list(symmetric_pool()[:40]) + list(asymmetric_pool()[:40])


def test_closure_examples():
    assert W("x^2").total_dim == 3
    assert W("x^2, 0", "0, x").total_dim == 5
    assert W("x^3+y^3+z^2").total_dim == 7


def test_closure_rejects_bad_input():
    with pytest.raises(ValueError):
        closure([])
    with pytest.raises(ValueError):
        closure([DualElement([Polynomial.zero(2)])])
    with pytest.raises(ValueError):
        closure([parse_dual("x"), parse_dual("x, y")])


def test_hilbert_examples():
    assert hilbert(W("x^3+y^3+z^2")) == (1, 3, 2, 1)
    assert hilbert(module_of(mat(EXAMPLE_MODULE))) == (2, 4, 3, 2, 1, 1)
    assert hilbert(module_of(mat(DIAG_X2_X))) == (2, 2, 1)
    assert hilbert(module_of(mat(CURATED_2231))) == (2, 2, 3, 1)


def test_degree_layer_examples():
    w = W("x^3+y^3+z^2")
    assert degree_layer(w, 1).dim == 4
    assert degree_layer(w, -1).dim == 0
    assert degree_layer(w, w.socle_degree) == w.basis
    assert degree_layer(w, w.socle_degree + 3) == w.basis


def test_power_layer_examples():
    w = W("x^3+y^3+z^2")
    assert power_layer(w, 0) == w.basis
    assert power_layer(w, 3).dim == 1
    assert power_layer(w, w.socle_degree + 1).dim == 0
    with pytest.raises(ValueError):
        power_layer(w, -1)


def test_loewy_examples():
    w = module_of(mat(DIAG_X2_X))
    assert [power_layer(w, k).dim for k in range(4)] == [5, 3, 1, 0]
    assert loewy(w) == hilbert(w) == (2, 2, 1)
    w = W("x^3+y^3+z^2")
    assert loewy(w) == hilbert(w)


def test_loewy_differs_for_non_self_dual():
    w = W("x, y")
    assert hilbert(w) == (2, 1)
    assert loewy(w) == (1, 2)


@pytest.mark.parametrize("idx", range(80))
def test_closure_matches_brute_force(idx):
    N = small_pool()[idx]
    w = module_of(N)
    assert w.basis == brute_span(w)


@pytest.mark.parametrize("idx", range(80))
def test_layer_invariants(idx):
    w = module_of(small_pool()[idx])
    d = w.socle_degree
    for k in range(-1, d + 2):
        assert degree_layer(w, k) == w.basis & slice_upto(w, k)
        assert degree_layer(w, k) <= degree_layer(w, k + 1)
    for k in range(d + 2):
        assert power_layer(w, k + 1) <= power_layer(w, k)
    assert power_layer(w, d).dim > 0
    h, lw = hilbert(w), loewy(w)
    assert sum(h) == sum(lw) == w.total_dim
    assert sequence_admissible(h) and sequence_admissible(lw)
    assert len(h) == d + 1


def test_contraction_matrices_preserve_w():
    w = module_of(mat(EXAMPLE_MODULE))
    for m in w.contraction_matrices():
        assert len(m) == w.total_dim
    # closure: contracting any basis vector stays inside W
    for g in w.generators:
        for i in range(w.num_vars):
            op = tuple(int(j == i) for j in range(w.num_vars))
            assert w.contains(contract_dual(op, g))
