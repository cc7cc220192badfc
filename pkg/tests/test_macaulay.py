from math import comb

import pytest

from apolar.macaulay import macaulay_bound, macaulay_rep, sequence_admissible


def all_reps(a, s):
    """Every sum C(t_s,s)+C(t_{s-1},s-1)+... = a with t_s > t_{s-1} > ... and t_i >= i > 0."""
    out = []

    def rec(rest, i, prev_top, terms):
        if rest == 0:
            out.append(tuple(terms))
            return
        if i == 0:
            return
        for t in range(i, prev_top):
            c = comb(t, i)
            if c > rest:
                break
            rec(rest - c, i - 1, t, terms + [(t, i)])

    rec(a, s, a + s + 1, [])
    return out


def test_examples():
    assert macaulay_rep(4, 2).terms == ((3, 2), (1, 1))
    assert macaulay_bound(4, 2) == 5
    r = 5
    assert macaulay_rep(r + 1, r).terms == ((r + 1, r),)
    assert macaulay_rep(3, 5).terms == ((5, 5), (4, 4), (3, 3))


def test_rejects_nonpositive():
    for a, s in ((0, 1), (1, 0), (-3, 2)):
        with pytest.raises(ValueError):
            macaulay_rep(a, s)


@pytest.mark.parametrize("s", range(1, 7))
def test_representation_is_the_unique_one(s):
    for a in range(1, 120):
        reps = all_reps(a, s)
        assert reps == [macaulay_rep(a, s).terms]


def test_exhaustive_round_trip_and_shape():
    for s in range(1, 13):
        prev_bound = 0
        for a in range(1, 10**4 + 1):
            rep = macaulay_rep(a, s)
            assert rep.value == a
            tops = [t for t, _ in rep.terms]
            idxs = [i for _, i in rep.terms]
            assert idxs == list(range(s, s - len(idxs), -1))
            assert all(x > y for x, y in zip(tops, tops[1:]))
            assert all(t >= i > 0 for t, i in rep.terms)
            b = rep.bound()
            assert b >= prev_bound
            prev_bound = b


def test_bound_is_tight_for_small_values():
    for r in range(1, 40):
        for a in range(1, r + 1):
            assert macaulay_bound(a, r) == a
        assert macaulay_bound(r + 1, r) == r + 2


@pytest.mark.parametrize("h,ok,index,rule", [
    ((1, 2, 4, 1), False, 1, "macaulay"),
    ((1, 3, 2, 1), True, None, None),
    ((1, 0, 1), False, 1, "zeros-tail"),
    ((1, 1, 2), False, 1, "ones-tail"),
    ((1, 6, 1), True, None, None),
    ((2, 1, 1, 2), False, 2, "ones-tail"),
    ((1, 2, 3, 4, 5), True, None, None),
    ((1, 2, 3, 4, 6), False, 3, "macaulay"),
])
def test_sequence_admissible(h, ok, index, rule):
    res = sequence_admissible(h)
    assert (res.ok, res.index, res.rule) == (ok, index, rule)
    assert bool(res) == ok


def test_sequence_admissible_rejects_negative():
    with pytest.raises(ValueError):
        sequence_admissible((1, -1))
