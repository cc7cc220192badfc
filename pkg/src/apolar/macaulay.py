"""Macaulay's binomial representation, the a^<s> growth bound, and sequence filters."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Sequence


@dataclass(frozen=True)
class MacaulayRep:
    """a = sum of comb(top, idx) over ``terms``, tops strictly decreasing, top >= idx > 0."""

    s: int
    terms: tuple[tuple[int, int], ...]  # (top, idx), idx descending from s

    @property
    def value(self) -> int:
        return sum(comb(t, i) for t, i in self.terms)

    def bound(self) -> int:
        return sum(comb(t + 1, i + 1) for t, i in self.terms)

    def __str__(self) -> str:
        return " + ".join(f"C({t},{i})" for t, i in self.terms)


def _largest_top(a: int, i: int) -> int:
    # largest t >= i with comb(t, i) <= a; a >= 1
    lo, hi = i, i + 1
    while comb(hi, i) <= a:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, i) <= a:
            lo = mid
        else:
            hi = mid
    return lo


def macaulay_rep(a: int, s: int) -> MacaulayRep:
    """Greedy (hence unique) s-th Macaulay representation of ``a``."""
    if a <= 0 or s <= 0:
        raise ValueError(f"macaulay_rep needs positive a and s, got a={a}, s={s}")
    terms = []
    rest, i = a, s
    while rest:
        t = _largest_top(rest, i)
        terms.append((t, i))
        rest -= comb(t, i)
        i -= 1
    return MacaulayRep(s, tuple(terms))


def macaulay_bound(a: int, s: int) -> int:
    """a^<s>."""
    return macaulay_rep(a, s).bound()


class Admissibility(NamedTuple):
    ok: bool
    index: int | None = None  # r such that the step r -> r+1 fails
    rule: str | None = None   # "zeros-tail" | "ones-tail" | "macaulay"

    def __bool__(self) -> bool:
        return self.ok


def sequence_admissible(h: Sequence[int]) -> Admissibility:
    """Check the necessary conditions every module Hilbert function satisfies.

    For each step r -> r+1: a zero is followed only by zeros; for r >= 1 a one is
    followed by at most one; and for r >= 1, h(r+1) <= h(r)^<r>.
    """
    h = list(h)
    if any(x < 0 for x in h):
        raise ValueError("Hilbert function values must be nonnegative")
    for r in range(len(h) - 1):
        a, b = h[r], h[r + 1]
        if a == 0:
            if b > 0:
                return Admissibility(False, r, "zeros-tail")
            continue
        if r == 0:
            continue
        if a == 1 and b > 1:
            return Admissibility(False, r, "ones-tail")
        if b > macaulay_bound(a, r):
            return Admissibility(False, r, "macaulay")
    return Admissibility(True)
