import logging

import pytest

from apolar import classify
from apolar.classify import (CURATED_IMPOSSIBLE, IMPOSSIBLE, POSSIBLE, PUBLISHED_COUNTS, UNKNOWN,
                             algebra_exponents, census, enumerate_candidates, filter_sequence,
                             is_nonincreasing, verify_witness, witness_algebra,
                             witness_nonincreasing, witness_search)
from apolar.kunte import certify_self_dual, direct_sum, module_of
from apolar.macaulay import sequence_admissible
from apolar.poly import format_poly

from _ledger import EXTRAS, partitions
from _pools import mat

def test_enumerate_examples():
    assert enumerate_candidates(2) == [(2,), (1, 1)]
    assert enumerate_candidates(3) == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    assert (1, 2, 1) in enumerate_candidates(4)
    for m in range(1, 11):
        c = enumerate_candidates(m)
        assert len(c) == len(set(c)) == 2 ** (m - 1)
        assert all(sum(h) == m and min(h) > 0 for h in c)
    for bad in (0, -1):
        with pytest.raises(ValueError):
            enumerate_candidates(bad)


def test_filter_examples():
    assert filter_sequence((1, 2, 2)) == "first-last"
    assert filter_sequence((1, 2, 3, 1, 1)) == "decomposition-infeasible"
    assert filter_sequence((2, 2, 3, 1)) is None
    assert filter_sequence((1, 1, 2)) == "ones-tail"
    assert filter_sequence((1, 2, 4, 1)) == "macaulay"
    assert filter_sequence((2, 1, 2, 1)) == "ones-tail"
    assert filter_sequence((3, 1, 3)) == "ones-tail"
    assert filter_sequence((2, 1, 1, 2)) == "ones-tail"
    assert filter_sequence((1, 2, 3, 1)) == "half-sums"


def test_witness_nonincreasing_examples():
    assert witness_nonincreasing((1, 1, 1)) == mat([["x^2"]])
    assert witness_nonincreasing((2, 1)) == mat([["x", "0"], ["0", "1"]])
    assert witness_nonincreasing((2, 2, 1)) == mat([["x^2", "0"], ["0", "x"]])
    for bad in ((1, 2), (), (2, 0)):
        with pytest.raises(ValueError):
            witness_nonincreasing(bad)


@pytest.mark.parametrize("m", range(1, 9))
def test_witness_nonincreasing_realizes_every_partition(m):
    for h in partitions(m):
        assert verify_witness(h, witness_nonincreasing(h)) is None


def test_witness_algebra_examples():
    N = witness_algebra((1, 5, 3, 3, 1))
    assert format_poly(N.entries[0][0]) == "x1^4+x2^4+x3^4+x4^2+x5^2"
    assert module_of(N).hilbert() == (1, 5, 3, 3, 1)
    assert format_poly(witness_algebra((1, 2, 1)).entries[0][0]) == "x1^2+x2^2"
    assert format_poly(witness_algebra((1, 3, 2, 1)).entries[0][0]) == "x1^3+x2^3+x3^2"
    assert algebra_exponents((1, 1)) == [1]
    for bad in ((2, 1, 1), (1, 2, 3, 1), (1, 2, 2), (1,)):
        with pytest.raises(ValueError):
            witness_algebra(bad)


def test_witness_algebra_on_every_valid_shape():
    for m in range(2, 11):
        for h in enumerate_candidates(m):
            if h[0] == 1 and h[-1] == 1 and len(h) > 1 and is_nonincreasing(h[1:]):
                assert verify_witness(h, witness_algebra(h)) is None


def test_witness_search_examples():
    census(7)
    v = witness_search((2, 3, 1), classify._POSSIBLE)
    assert v.status == POSSIBLE
    assert v.evidence["provenance"] == "direct-sum"
    assert v.evidence["note"] == "(1, 1) + (1, 2, 1)"
    v = witness_search((3, 2, 3), classify._POSSIBLE)
    assert v.status == CURATED_IMPOSSIBLE and "not machine-checked" in v.evidence["note"]
    v = witness_search((2, 2, 3, 1), classify._POSSIBLE)
    assert v.status == POSSIBLE and v.evidence["provenance"] == "curated"
    assert v.matrix == mat([["x^3+y^3", "xy"], ["xy", "y"]])
    assert witness_search((5, 1, 5)).status == UNKNOWN


def test_verify_witness_rejects_bad_witnesses():
    assert "not symmetric" in verify_witness((2, 1), mat([["x", "1"], ["0", "1"]]))
    assert "realizes" in verify_witness((1, 1), mat([["x^2"]]))


@pytest.mark.parametrize("m", range(1, 9))
def test_census_matches_published_lists(m):
    c = census(m)
    verdicts = {v.sequence: v for v in c.verdicts}
    assert list(verdicts) == enumerate_candidates(m)
    nonincreasing = set(partitions(m))
    extras = EXTRAS.get(m, {})
    for h, v in verdicts.items():
        if h in nonincreasing:
            assert v.status == POSSIBLE, h
        elif h in extras:
            assert v.status == extras[h], h
        else:
            assert v.status == IMPOSSIBLE, h
    assert not c.unknown
    assert c.possible_count == len(nonincreasing) + sum(s == POSSIBLE for s in extras.values())


def test_census_counts_against_table():
    for m in range(1, 8):
        c = census(m)
        assert c.possible_count == PUBLISHED_COUNTS[m]
        assert not c.discrepancy
    c = census(8)
    assert c.published_count == 38
    assert c.possible_count == 39
    assert c.discrepancy
    rec = c.to_record()
    assert (rec["possible_count"], rec["published_count"], rec["discrepancy"]) == (39, 38, True)


@pytest.mark.parametrize("m", range(1, 9))
def test_verdict_soundness(m):
    for v in census(m).verdicts:
        if v.status == POSSIBLE:
            assert v.matrix.is_symmetric()
            assert v.evidence["verified"] is True
            cert = certify_self_dual(v.matrix)
            assert cert.hilbert == cert.loewy == v.sequence
        elif v.status == IMPOSSIBLE:
            assert v.evidence["kind"] == "filter"
            assert filter_sequence(v.sequence) == v.evidence["filter"]
        else:
            assert v.status == CURATED_IMPOSSIBLE and v.sequence == (3, 2, 3)
        assert sequence_admissible(v.sequence) or v.status == IMPOSSIBLE


def test_direct_sum_witnesses_name_their_summands():
    for v in census(8).possible:
        if v.evidence["provenance"] == "direct-sum":
            g, rest = [tuple(int(x) for x in part.strip(" ()").split(","))
                       for part in v.evidence["note"].split(" + ")]
            n = max(len(g), len(rest))
            pad = lambda s: s + (0,) * (n - len(s))
            assert tuple(a + b for a, b in zip(pad(g), pad(rest))) == v.sequence


def test_census_is_deterministic_across_workers(monkeypatch):
    first = census(6).to_record()
    classify.clear_cache()
    again = census(6, workers=2).to_record()
    assert first == again
    classify.clear_cache()
    monkeypatch.setenv("APOLAR_THREADS", "1")
    assert census(6).to_record() == first


def test_threads_env_validation(monkeypatch):
    monkeypatch.setenv("APOLAR_THREADS", "many")
    with pytest.raises(ValueError, match="APOLAR_THREADS"):
        classify._workers()
    monkeypatch.setenv("APOLAR_THREADS", "0")
    assert classify._workers() == 1


def test_unknown_is_logged(caplog, monkeypatch):
    monkeypatch.setattr(classify, "CURATED_IMPOSSIBLE_NOTES", {})
    classify.clear_cache()
    try:
        with caplog.at_level(logging.WARNING, logger="apolar.classify"):
            c = census(8, workers=1)
        assert [v.sequence for v in c.unknown] == [(3, 2, 3)]
        assert "(3, 2, 3)" in caplog.text
    finally:
        classify.clear_cache()


def test_census_rejects_nonpositive():
    with pytest.raises(ValueError):
        census(0)


def test_direct_sum_of_witnesses_matches_sum_of_functions():
    a, b = witness_algebra((1, 2, 1)), witness_nonincreasing((1, 1))
    assert module_of(direct_sum(b, a)).hilbert() == (2, 3, 1)
