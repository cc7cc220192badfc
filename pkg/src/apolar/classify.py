"""Census of local Hilbert functions of self-dual modules of small degree.

A sequence is POSSIBLE only when a symmetric witness matrix has been built and
its module recomputed; filters only ever rule sequences out.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decomp import feasible_decompositions
from .invsys import trim
from .kunte import EncodingMatrix, diagonal, direct_sum, module_of
from .macaulay import sequence_admissible
from .poly import Polynomial

log = logging.getLogger(__name__)

POSSIBLE = "POSSIBLE"
IMPOSSIBLE = "IMPOSSIBLE"
CURATED_IMPOSSIBLE = "CURATED_IMPOSSIBLE"
UNKNOWN = "UNKNOWN"

# Counts of possible Hilbert functions published for degrees 1..8.
PUBLISHED_COUNTS = {1: 1, 2: 2, 3: 3, 4: 6, 5: 9, 6: 16, 7: 24, 8: 38}

CURATED_WITNESSES = {
    (2, 2, 3, 1): (("x^3+y^3", "xy"), ("xy", "y")),
}

CURATED_IMPOSSIBLE_NOTES = {
    (3, 2, 3): (
        "palindromic, so any self-dual module reduces to a graded one; a graded "
        "realization lives in two variables and its constant layer has dimension 1, "
        "not 3 (hand argument, not machine-checked)"
    ),
}


@dataclass
class Verdict:
    sequence: tuple
    status: str
    evidence: dict = field(default_factory=dict)
    matrix: EncodingMatrix | None = None

    def to_record(self) -> dict:
        ev = dict(self.evidence)
        if self.matrix is not None:
            ev["matrix"] = self.matrix.to_record()
        return {"sequence": list(self.sequence), "status": self.status, "evidence": ev}


def enumerate_candidates(m: int) -> list[tuple]:
    """All compositions of m, shorter first, then lexicographically descending."""
    if m <= 0:
        raise ValueError("degree must be positive")
    out = []

    def rec(rest, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for x in range(rest, 0, -1):
            prefix.append(x)
            rec(rest - x, prefix)
            prefix.pop()

    rec(m, [])
    out.sort(key=lambda h: (len(h), tuple(-x for x in h)))
    return out


def _half_sums_ok(h) -> bool:
    # h(0..floor((k-1)/2)) against h(ceil((k+1)/2)..k)
    k = len(h) - 1
    if k < 1:
        return True
    return sum(h[: (k - 1) // 2 + 1]) >= sum(h[(k + 2) // 2:])


def filter_sequence(h) -> str | None:
    """Name of the first necessary condition ``h`` violates, or None."""
    h = tuple(h)
    adm = sequence_admissible(h)
    if not adm:
        return adm.rule
    if h[0] < h[-1]:
        return "first-last"
    if not _half_sums_ok(h):
        return "half-sums"
    if not feasible_decompositions(h):
        return "decomposition-infeasible"
    return None


def is_nonincreasing(h) -> bool:
    return all(a >= b for a, b in zip(h, h[1:]))


def witness_nonincreasing(h) -> EncodingMatrix:
    """diag(x^(c_1 - 1), ...) over the column heights c_i of h."""
    h = tuple(h)
    if not h or not is_nonincreasing(h) or h[-1] <= 0:
        raise ValueError(f"{h} is not a non-increasing positive sequence")
    heights = [sum(1 for x in h if x > i) for i in range(h[0])]
    return diagonal([Polynomial.monomial((c - 1,)) for c in heights])


def algebra_exponents(h) -> list[int]:
    """Exponents j(1..h(1)) of the diagonal form sum x_i^j(i) realizing h."""
    h = tuple(h)
    t = len(h) - 1
    if t < 1 or h[0] != 1 or h[t] != 1 or not is_nonincreasing(h[1:]):
        raise ValueError(f"{h} needs h(0) = 1, a non-increasing tail and last entry 1")
    drops = {n: h[n] - h[n + 1] if n < t else h[n] for n in range(1, t + 1)}
    j = [t]
    for n in range(t - 1, 0, -1):
        j.extend([n + 1] * drops[n])
    return j


def witness_algebra(h) -> EncodingMatrix:
    j = algebra_exponents(h)
    n = len(j)
    w = Polynomial(n, {tuple(e if k == i else 0 for k in range(n)): 1 for i, e in enumerate(j)})
    return EncodingMatrix(n, ((w,),))


def _sub(h, g):
    """h - g componentwise as a Hilbert function, or None if not one."""
    if len(g) > len(h):
        return None
    diff = [a - (g[i] if i < len(g) else 0) for i, a in enumerate(h)]
    if any(x < 0 for x in diff):
        return None
    diff = trim(diff)
    if not diff or 0 in diff:
        return None
    return diff


def _construct(h, possible: dict) -> tuple[EncodingMatrix, dict] | None:
    h = tuple(h)
    if is_nonincreasing(h):
        return witness_nonincreasing(h), {"kind": "witness", "provenance": "non-increasing"}
    if h[0] == 1 and h[-1] == 1 and len(h) > 1 and is_nonincreasing(h[1:]):
        return witness_algebra(h), {"kind": "witness", "provenance": "algebra"}
    # direct sums: a chain (1,...,1) first, longest first, then any smaller possible summand
    chains = [(1,) * k for k in range(len(h), 0, -1)]
    others = sorted((g for g in possible if g not in chains and sum(g) < sum(h)),
                    key=lambda g: (sum(g), len(g), g))
    for g in chains + others:
        if g not in possible:
            continue
        rest = _sub(h, g)
        if rest is not None and rest in possible:
            return (direct_sum(possible[g], possible[rest]),
                    {"kind": "witness", "provenance": "direct-sum",
                     "note": f"{_fmt(g)} + {_fmt(rest)}"})
    if h in CURATED_WITNESSES:
        N = EncodingMatrix.from_strings(CURATED_WITNESSES[h])
        return N, {"kind": "witness", "provenance": "curated"}
    return None


def _fmt(h) -> str:
    return "(" + ", ".join(map(str, h)) + ")"


def verify_witness(h, N: EncodingMatrix) -> str | None:
    """None if N is symmetric and realizes h self-dually, else the failure."""
    if not N.is_symmetric():
        return "witness matrix is not symmetric"
    w = module_of(N)
    got, lw = w.hilbert(), w.loewy()
    if got != tuple(h):
        return f"witness realizes {got}, not {tuple(h)}"
    if lw != got:
        return f"witness has loewy {lw} != hilbert {got}"
    return None


def witness_search(h, possible: dict | None = None, verify: bool = True) -> Verdict:
    """Verdict for a sequence that already passed :func:`filter_sequence`."""
    h = tuple(h)
    built = _construct(h, possible or {})
    if built is not None:
        N, ev = built
        if verify:
            err = verify_witness(h, N)
            if err:
                raise AssertionError(f"{h}: {err}")
        return Verdict(h, POSSIBLE, ev, N)
    if h in CURATED_IMPOSSIBLE_NOTES:
        return Verdict(h, CURATED_IMPOSSIBLE,
                       {"kind": "curated", "provenance": "curated-impossible",
                        "note": CURATED_IMPOSSIBLE_NOTES[h]})
    return Verdict(h, UNKNOWN, {"kind": "none", "note": "no witness and no refutation"})


def _verify_job(args):
    h, rec = args
    from .kunte import matrix_from_record
    return verify_witness(h, matrix_from_record(rec))


def _workers() -> int:
    env = os.environ.get("APOLAR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"APOLAR_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


@dataclass
class Census:
    m: int
    verdicts: list

    @property
    def possible(self) -> list:
        return [v for v in self.verdicts if v.status == POSSIBLE]

    @property
    def possible_count(self) -> int:
        return len(self.possible)

    @property
    def published_count(self) -> int | None:
        return PUBLISHED_COUNTS.get(self.m)

    @property
    def unknown(self) -> list:
        return [v for v in self.verdicts if v.status == UNKNOWN]

    @property
    def discrepancy(self) -> bool:
        return self.published_count is not None and self.published_count != self.possible_count

    def to_record(self) -> dict:
        return {
            "degree": self.m,
            "possible_count": self.possible_count,
            "published_count": self.published_count,
            "discrepancy": self.discrepancy,
            "unknown": [list(v.sequence) for v in self.unknown],
            "verdicts": [v.to_record() for v in self.verdicts],
        }


_CACHE: dict[int, Census] = {}
_POSSIBLE: dict[tuple, EncodingMatrix] = {}


def census(m: int, workers: int | None = None) -> Census:
    """Verdicts for every composition of m (lower degrees are computed first)."""
    if m <= 0:
        raise ValueError("degree must be positive")
    if m in _CACHE:
        return _CACHE[m]
    for lower in range(1, m):
        census(lower, workers)
    verdicts = []
    for h in enumerate_candidates(m):
        bad = filter_sequence(h)
        if bad is not None:
            verdicts.append(Verdict(h, IMPOSSIBLE, {"kind": "filter", "filter": bad,
                                                    "provenance": bad}))
        else:
            verdicts.append(witness_search(h, _POSSIBLE, verify=False))
    _verify_all(verdicts, workers if workers is not None else _workers())
    for v in verdicts:
        if v.status == POSSIBLE:
            _POSSIBLE[v.sequence] = v.matrix
        elif v.status == UNKNOWN:
            log.warning("degree %d: no verdict for %s", m, v.sequence)
    result = Census(m, verdicts)
    _CACHE[m] = result
    return result


def _verify_all(verdicts, workers: int) -> None:
    todo = [v for v in verdicts if v.status == POSSIBLE]
    if workers > 1 and len(todo) > 8:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            errs = list(pool.map(_verify_job, [(v.sequence, v.matrix.to_record()) for v in todo]))
    else:
        errs = [verify_witness(v.sequence, v.matrix) for v in todo]
    for v, err in zip(todo, errs):
        if err:
            raise AssertionError(f"{v.sequence}: {err}")
        v.evidence["verified"] = True


def clear_cache() -> None:
    _CACHE.clear()
    _POSSIBLE.clear()
