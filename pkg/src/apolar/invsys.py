"""Inverse systems W = S f_1 + ... + S f_l and their layer filtrations.

W is stored as a subspace of the finite coordinate grid of (slot, monomial)
pairs with monomial degree at most D = max generator degree.  Coordinates are
ordered by descending degree, so an echelon basis of W reads off the degree
filtration directly from its pivots.

The apolar module is M = W^*.  Its Hilbert function comes from the degree
filtration of W, and its annihilator (Loewy) layers from the power layers
S_{>=k} W; the two agree whenever M is self-dual.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations_with_replacement
from math import lcm
from typing import Sequence

from .exact import Echelon, Subspace, _primitive
from .poly import DualElement, Polynomial

HilbertFunction = tuple


def trim(seq: Sequence[int]) -> tuple:
    """Drop trailing zeros."""
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def monomials_upto(nvars: int, max_degree: int) -> list[tuple]:
    """All exponent vectors of total degree <= max_degree."""
    out = []
    for deg in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


class Grid:
    """Coordinate system for the (slot, monomial) pairs of degree <= max_degree."""

    def __init__(self, nvars: int, rank: int, max_degree: int):
        self.nvars = nvars
        self.rank = rank
        self.max_degree = max_degree
        monos = monomials_upto(nvars, max_degree)
        coords = [(s, m) for s in range(rank) for m in monos]
        coords.sort(key=lambda sm: (-sum(sm[1]), sm[0], tuple(-e for e in sm[1])))
        self.coords = coords
        self.index = {c: i for i, c in enumerate(coords)}
        self.degree = [sum(m) for _, m in coords]
        # shift[i][c] = coordinate of y_i applied to coordinate c, or -1
        self.shift = []
        for i in range(nvars):
            row = []
            for s, m in coords:
                if m[i] == 0:
                    row.append(-1)
                else:
                    mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                    row.append(self.index[(s, mm)])
            self.shift.append(row)

    def __len__(self) -> int:
        return len(self.coords)

    def vector(self, f: DualElement) -> dict:
        """Primitive integer sparse row spanning the same line as ``f``."""
        items = []
        for s, p in enumerate(f.components):
            for m, c in p.terms.items():
                items.append((self.index[(s, m)], c))
        if not items:
            return {}
        den = lcm(*(c.denominator for _, c in items))
        return _primitive({i: int(c * den) for i, c in items})

    def contract(self, var: int, vec: dict) -> dict:
        sh = self.shift[var]
        out = {}
        for c, x in vec.items():
            t = sh[c]
            if t >= 0:
                out[t] = x
        return _primitive(out) if out else out

    def element(self, vec) -> DualElement:
        """Turn a dense or sparse coordinate vector back into a DualElement."""
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        comps = [dict() for _ in range(self.rank)]
        for c, x in items:
            if x:
                s, m = self.coords[c]
                comps[s][m] = x
        return DualElement([Polynomial(self.nvars, t) for t in comps], self.nvars)


class InverseSystem:
    """The S-closed span of a list of generators under contraction.

    Build with :func:`closure`.  ``certificate`` is set by the self-duality
    certifier and checked by the decomposition code.
    """

    def __init__(self, generators: Sequence[DualElement], grid: Grid, echelon: Echelon,
                 certificate: str | None = None):
        self.generators = tuple(generators)
        self.grid = grid
        self._echelon = echelon
        self.certificate = certificate

    @property
    def num_vars(self) -> int:
        return self.grid.nvars

    @property
    def rank(self) -> int:
        return self.grid.rank

    @property
    def total_dim(self) -> int:
        return len(self._echelon)

    @cached_property
    def basis(self) -> Subspace:
        return Subspace.from_echelon(self._echelon)

    @property
    def socle_degree(self) -> int:
        return max(self.grid.degree[p] for p in self._echelon.rows)

    def with_certificate(self, certificate: str | None) -> "InverseSystem":
        w = InverseSystem(self.generators, self.grid, self._echelon, certificate)
        w.__dict__.update({k: v for k, v in self.__dict__.items()
                           if k in ("basis", "_power_echelons")})
        return w

    def __repr__(self) -> str:
        return (f"InverseSystem(n={self.num_vars}, r={self.rank}, dim={self.total_dim}, "
                f"h={self.hilbert()})")

    # -- layers -------------------------------------------------------------------

    def degree_layer(self, k: int) -> Subspace:
        """{f in W : deg f <= k}."""
        n = len(self.grid)
        if k < 0:
            return Subspace.zero(n)
        deg = self.grid.degree
        rows = [b for p, b in zip(self.basis.pivots(), self.basis.basis) if deg[p] <= k]
        return Subspace(n, tuple(rows))

    @cached_property
    def _power_echelons(self) -> list[Echelon]:
        layers = [self._echelon]
        while len(layers[-1]):
            nxt = Echelon(len(self.grid))
            for row in layers[-1].rows.values():
                for i in range(self.num_vars):
                    v = self.grid.contract(i, row)
                    if v:
                        nxt.insert(v)
            layers.append(nxt)
        return layers

    def power_layer(self, k: int) -> Subspace:
        """Span of S_{>=k} applied to W (the dual of m^k M)."""
        if k < 0:
            raise ValueError("power layer index must be nonnegative")
        layers = self._power_echelons
        if k >= len(layers):
            return Subspace.zero(len(self.grid))
        return Subspace.from_echelon(layers[k])

    def power_dims(self) -> list[int]:
        return [len(e) for e in self._power_echelons]

    def degree_dims(self) -> list[int]:
        """dim degree_layer(k) for k = 0..socle_degree."""
        counts = [0] * (self.socle_degree + 1)
        for p in self._echelon.rows:
            counts[self.grid.degree[p]] += 1
        out, acc = [], 0
        for c in counts:
            acc += c
            out.append(acc)
        return out

    def hilbert(self) -> HilbertFunction:
        dims = self.degree_dims()
        return trim(b - a for a, b in zip([0] + dims, dims))

    def loewy(self) -> tuple:
        dims = self.power_dims()
        return trim(a - b for a, b in zip(dims, dims[1:]))

    # -- coordinates inside W -------------------------------------------------------

    def contains(self, f: DualElement) -> bool:
        return self._echelon.contains(self.grid.vector(f))

    def contraction_matrices(self):
        """Matrix of y_i acting on W in the canonical basis (column j = image of basis j)."""
        from fractions import Fraction

        basis = self.basis
        piv = basis.pivots()
        m = basis.dim
        mats = []
        for i in range(self.num_vars):
            sh = self.grid.shift[i]
            mat = [[Fraction(0)] * m for _ in range(m)]
            for j, b in enumerate(basis.basis):
                img = [Fraction(0)] * len(self.grid)
                for c, x in enumerate(b):
                    if x and sh[c] >= 0:
                        img[sh[c]] = x
                for k, p in enumerate(piv):
                    mat[k][j] = img[p]
            mats.append(mat)
        return mats


def closure(generators: Sequence[DualElement]) -> InverseSystem:
    """Saturate the span of ``generators`` under contraction by y_1..y_n."""
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator required")
    n, r = gens[0].nvars, gens[0].rank
    for g in gens:
        if g.nvars != n or g.rank != r:
            raise ValueError("generators must share the variable count and rank")
    if not any(gens):
        raise ValueError("all generators are zero; the zero module is excluded")
    grid = Grid(n, r, max(g.degree for g in gens))
    ech = Echelon(len(grid))
    queue = [grid.vector(g) for g in gens if g]
    while queue:
        nxt = []
        for v in queue:
            if ech.insert(v):
                for i in range(n):
                    w = grid.contract(i, v)
                    if w:
                        nxt.append(w)
        queue = nxt
    return InverseSystem(gens, grid, ech)


def degree_layer(w: InverseSystem, k: int) -> Subspace:
    return w.degree_layer(k)


def power_layer(w: InverseSystem, k: int) -> Subspace:
    return w.power_layer(k)


def hilbert(w: InverseSystem) -> HilbertFunction:
    return w.hilbert()


def loewy(w: InverseSystem) -> tuple:
    return w.loewy()
