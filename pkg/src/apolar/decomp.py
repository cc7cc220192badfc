"""Symmetric decomposition of the Hilbert function of a self-dual module.

Everything is computed inside W, which is isomorphic to M once M is known to
be self-dual.  There ``m^k W`` is the power layer and ``(0 : m^l)_W`` is the
degree layer of index ``l - 1``; negative powers of the maximal ideal are the
unit ideal, so their annihilators vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exact import Subspace
from .invsys import InverseSystem
from .macaulay import sequence_admissible

SYMMETRIC_MATRIX = "SYMMETRIC_MATRIX"


class NotCertifiedError(ValueError):
    """Raised when a decomposition is requested for a module not certified self-dual."""


class DecompositionError(AssertionError):
    """A clause of the decomposition theorem failed; indicates an engine bug."""


@dataclass(frozen=True)
class QGrid:
    d: int
    q: tuple[tuple[int, ...], ...]  # (d+2) x (d+2)

    def __getitem__(self, kl):
        k, l = kl
        if 0 <= k <= self.d + 1 and 0 <= l <= self.d + 1:
            return self.q[k][l]
        return 0

    @property
    def total(self) -> int:
        return sum(map(sum, self.q))


@dataclass(frozen=True)
class SymmetricDecomposition:
    d: int
    rows: tuple[tuple[int, ...], ...]  # rows[s] has length d - s + 1
    partial_sums: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.partial_sums:
            object.__setattr__(self, "partial_sums", _partial_sums(self.d, self.rows))

    @property
    def hilbert(self) -> tuple:
        return self.partial_sums[-1]

    def nonzero_rows(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(s, r) for s, r in enumerate(self.rows) if any(r)]

    def table(self) -> str:
        """Aligned ragged table, one line per row Delta_s."""
        width = max(len(str(x)) for r in self.rows for x in r)
        lines = []
        for s, r in enumerate(self.rows):
            lines.append(f"D{s}: " + " ".join(str(x).rjust(width) for x in r))
        return "\n".join(lines)


def _partial_sums(d: int, rows) -> tuple:
    out = []
    acc = [0] * (d + 1)
    for r in rows:
        for t, x in enumerate(r):
            acc[t] += x
        out.append(tuple(acc))
    return tuple(out)


def _require_certified(w: InverseSystem) -> None:
    if w.certificate != SYMMETRIC_MATRIX:
        raise NotCertifiedError(
            f"module is not certified self-dual (certificate={w.certificate!r}); "
            "build it from a symmetric encoding matrix and certify it first")
    if w.hilbert() != w.loewy():
        raise NotCertifiedError(
            f"runtime self-duality check failed: hilbert {w.hilbert()} != loewy {w.loewy()}")


class _Lattice:
    """Caches the A_{k,l} subspaces of one module."""

    def __init__(self, w: InverseSystem):
        self.w = w
        self.d = w.socle_degree
        self.n = len(w.grid)
        self._a: dict = {}

    def power(self, k: int) -> Subspace:
        return self.w.power_layer(max(k, 0))

    def ann(self, l: int) -> Subspace:
        return self.w.degree_layer(l - 1)

    def a(self, k: int, l: int) -> Subspace:
        key = (k, l)
        if key not in self._a:
            if l <= 0 or k > self.d:
                self._a[key] = Subspace.zero(self.n)
            else:
                self._a[key] = self.power(k) & self.ann(l)
        return self._a[key]

    def q(self, k: int, l: int) -> int:
        return self.a(k, l).dim - (self.a(k + 1, l) + self.a(k, l - 1)).dim


def a_subspace(w: InverseSystem, k: int, l: int) -> Subspace:
    """A_{k,l} = m^k M  intersected with  (0 : m^l)_M, computed inside W."""
    _require_certified(w)
    return _Lattice(w).a(k, l)


def _grid(lat: _Lattice) -> QGrid:
    d = lat.d
    q = tuple(tuple(lat.q(k, l) for l in range(d + 2)) for k in range(d + 2))
    return QGrid(d, q)


def q_grid(w: InverseSystem) -> QGrid:
    _require_certified(w)
    return _grid(_Lattice(w))


def rows_from_grid(g: QGrid) -> tuple:
    d = g.d
    return tuple(tuple(g[t, d + 1 - (s + t)] for t in range(d - s + 1)) for s in range(d + 1))


def decompose(w: InverseSystem) -> SymmetricDecomposition:
    """Compute the rows Delta_s and verify every clause of the decomposition theorem."""
    _require_certified(w)
    lat = _Lattice(w)
    g = _grid(lat)
    dec = SymmetricDecomposition(g.d, rows_from_grid(g))
    check_theorem(lat, g, dec, w.hilbert())
    return dec


def _fail(clause: str, detail: str):
    raise DecompositionError(f"clause {clause} violated: {detail}")


def check_theorem(lat: _Lattice, g: QGrid, dec: SymmetricDecomposition, h: tuple) -> None:
    d = g.d
    w = lat.w
    # 1: Q_{k,0} = Q_{d+1,l} = 0
    for k in range(d + 2):
        if g[k, 0] or g[d + 1, k]:
            _fail("1", f"Q_{{{k},0}}={g[k, 0]}, Q_{{{d + 1},{k}}}={g[d + 1, k]}")
    # 2: A_{k,l} = A_{k,l-1} for k+l > d+1
    for k in range(d + 2):
        for l in range(d + 2):
            if k + l > d + 1:
                if lat.a(k, l) != lat.a(k, l - 1):
                    _fail("2", f"A_{{{k},{l}}} != A_{{{k},{l - 1}}}")
                if g[k, l]:
                    _fail("2", f"Q_{{{k},{l}}} = {g[k, l]}")
    # 3 (dimension level): C_{a+1} inside C_a and dim C_a / C_{a+1} = dim D_{a+1}
    c_dims = []
    for a in range(d + 2):
        total = 0
        for i in range(d + 1):
            e = d - (i + a)
            top = lat.power(i + 1)
            img = (lat.a(i, e) + top).dim - top.dim
            if a > 0:
                prev = lat.a(i, e + 1)
                if not lat.a(i, e) <= prev:
                    _fail("3", f"C_{a}^{i} not inside C_{a - 1}^{i}")
            total += img
        c_dims.append(total)
    for a in range(d + 1):
        d_next = sum(g[k, d - a - k] for k in range(d - a + 1))
        if c_dims[a] - c_dims[a + 1] != d_next:
            _fail("3", f"dim C_{a}/C_{a + 1} = {c_dims[a] - c_dims[a + 1]} != dim D_{a + 1} = {d_next}")
    # 4: Q_{k,l}^* = Q_{l-1,k+1} and row symmetry
    for k in range(d + 2):
        for l in range(1, d + 2):
            if k + 1 <= d + 1 and g[k, l] != g[l - 1, k + 1]:
                _fail("4", f"dim Q_{{{k},{l}}}={g[k, l]} != dim Q_{{{l - 1},{k + 1}}}={g[l - 1, k + 1]}")
    for s, row in enumerate(dec.rows):
        if row != row[::-1]:
            _fail("4", f"row {s} = {row} is not symmetric")
    # 5: h_a(t) = dim m^t M / (m^{t+1} M + A_{t, d-(t+a)})
    for a in range(d + 1):
        for t in range(d + 1):
            e = d - (t + a)
            direct = lat.power(t).dim - (lat.power(t + 1) + lat.a(t, e)).dim
            if direct != dec.partial_sums[a][t]:
                _fail("5", f"h_{a}({t}) = {dec.partial_sums[a][t]} but quotient has dim {direct}")
    # 6: h = sum of rows
    if tuple(dec.hilbert) != tuple(h) + (0,) * (d + 1 - len(h)):
        _fail("6", f"rows sum to {dec.hilbert}, Hilbert function is {h}")
    if g.total != w.total_dim:
        _fail("6", f"grid total {g.total} != dim {w.total_dim}")
    # trivial decomposition: Gr M maps isomorphically onto D_0
    if len(dec.nonzero_rows()) == 1:
        for k in range(d + 1):
            if h[k] != g[k, d + 1 - k]:
                _fail("surjection", f"h({k}) = {h[k]} != dim Q_{{{k},{d + 1 - k}}}")


# -- combinatorial feasibility ---------------------------------------------------------

def _symmetric_rows(length: int, cap: Sequence[int]):
    """All symmetric nonnegative rows of ``length`` bounded by ``cap`` entrywise."""
    half = (length + 1) // 2
    bounds = [min(cap[t], cap[length - 1 - t]) for t in range(half)]

    def rec(t, prefix):
        if t == half:
            yield tuple(prefix + prefix[: length - half][::-1])
            return
        for x in range(bounds[t] + 1):
            prefix.append(x)
            yield from rec(t + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def _admissible(partial: Sequence[int]) -> bool:
    return sequence_admissible(partial).ok


@lru_cache(maxsize=None)
def _feasible(h: tuple) -> tuple:
    d = len(h) - 1
    out = []

    def rec(s, rows, remaining, partial):
        if s > d:
            if not any(remaining):
                out.append(SymmetricDecomposition(d, tuple(rows)))
            return
        length = d - s + 1
        # columns beyond this row's support can no longer be filled
        if any(remaining[length:]):
            return
        for row in _symmetric_rows(length, remaining):
            if s == 0 and row[0] != h[d]:
                continue
            new_partial = [p + (row[t] if t < length else 0) for t, p in enumerate(partial)]
            if not _admissible(new_partial):
                continue
            new_rem = [r - (row[t] if t < length else 0) for t, r in enumerate(remaining)]
            rows.append(row)
            rec(s + 1, rows, new_rem, new_partial)
            rows.pop()

    rec(0, [], list(h), [0] * (d + 1))
    return tuple(out)


def feasible_decompositions(h: Sequence[int]) -> list[SymmetricDecomposition]:
    """Every integer table of symmetric rows summing to ``h`` whose partial sums pass
    the module filters.  An empty result proves ``h`` is not the Hilbert function
    of a self-dual module; a nonempty one proves nothing."""
    h = tuple(h)
    if not h or any(x <= 0 for x in h):
        raise ValueError("h must be a nonempty sequence of positive integers")
    return list(_feasible(h))
