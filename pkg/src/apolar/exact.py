"""Exact linear algebra over the rationals.

Everything here works on plain Python integers and :class:`fractions.Fraction`.
Elimination runs fraction-free on sparse integer rows (``{column: int}``) and
only the canonical reduced echelon basis of a :class:`Subspace` is stored as
fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = Sequence  # of int / Fraction
SparseRow = dict  # column -> nonzero int


def _check_rows(rows: Sequence[Vector], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError(f"ragged input: row {i} has length {len(row)}, expected {ncols}")
    return ncols


def to_sparse_int(vec: Iterable) -> SparseRow:
    """Scale a rational vector to a primitive integer sparse row (same span)."""
    items = [(c, Fraction(x)) for c, x in enumerate(vec) if x]
    return _int_row(items)


def sparse_to_int(row: dict) -> SparseRow:
    return _int_row([(c, Fraction(x)) for c, x in row.items() if x])


def _int_row(items) -> SparseRow:
    if not items:
        return {}
    den = lcm(*(x.denominator for _, x in items))
    out = {c: int(x * den) for c, x in items}
    return _primitive(out)


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: x // g for c, x in row.items()}
    return row


class Echelon:
    """Incremental row echelon form over the integers.

    Rows are primitive sparse integer vectors keyed by their pivot (smallest
    nonzero column).  Not reduced; use :meth:`rref` for the canonical form.
    """

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int, rows: Iterable[SparseRow] = ()):
        self.ncols = ncols
        self.rows: dict[int, SparseRow] = {}
        for r in rows:
            self.insert(r)

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols)
        e.rows = dict(self.rows)
        return e

    def reduce(self, vec: SparseRow) -> SparseRow:
        v = vec
        rows = self.rows
        while v:
            p = min(v)
            row = rows.get(p)
            if row is None:
                return v
            a, b = v[p], row[p]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {c: b * x for c, x in v.items()} if b != 1 else dict(v)
            for c, x in row.items():
                y = new.get(c, 0) - a * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            v = _primitive(new) if new else new
        return v

    def insert(self, vec: SparseRow) -> bool:
        """Add ``vec`` to the span; return True when the dimension grew."""
        r = self.reduce(vec)
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def contains(self, vec: SparseRow) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def rref(self) -> list[dict[int, Fraction]]:
        """Reduced echelon rows (pivot 1), ordered by pivot column."""
        piv = sorted(self.rows)
        out: list[dict[int, Fraction]] = []
        for p in reversed(piv):
            row = self.rows[p]
            lead = row[p]
            r = {c: Fraction(x, lead) for c, x in row.items()}
            for q in out:
                # q is reduced and has pivot > p; clear column of q's pivot in r
                qp = min(q)
                f = r.get(qp)
                if f:
                    for c, x in q.items():
                        y = r.get(c, 0) - f * x
                        if y:
                            r[c] = y
                        else:
                            r.pop(c, None)
            out.append(r)
        out.reverse()
        return out


def rank(rows: Sequence[Vector]) -> int:
    """Dimension of the span of ``rows``."""
    _check_rows(rows)
    e = Echelon(len(rows[0]) if rows else 0)
    for r in rows:
        e.insert(to_sparse_int(r))
    return len(e)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its reduced row echelon basis.

    The basis is canonical, so two equal subspaces compare equal field by field.
    """

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Vector], ambient_dim: int | None = None) -> "Subspace":
        vectors = list(vectors)
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient_dim required for an empty spanning set")
            ambient_dim = len(vectors[0])
        _check_rows(vectors, ambient_dim)
        e = Echelon(ambient_dim)
        for v in vectors:
            e.insert(to_sparse_int(v))
        return cls.from_echelon(e)

    @classmethod
    def from_echelon(cls, e: Echelon) -> "Subspace":
        n = e.ncols
        basis = []
        for r in e.rref():
            dense = [Fraction(0)] * n
            for c, x in r.items():
                dense[c] = x
            basis.append(tuple(dense))
        return cls(n, tuple(basis))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b) if x) for b in self.basis]

    def echelon(self) -> Echelon:
        return Echelon(self.ambient_dim, (to_sparse_int(b) for b in self.basis))

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        e = self.echelon()
        for b in other.basis:
            e.insert(to_sparse_int(b))
        return Subspace.from_echelon(e)

    def __and__(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows (a | a) and (b | 0); rows whose left half vanishes
        # span the intersection in the right half.
        self._same_ambient(other)
        n = self.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(n)
        e = Echelon(2 * n)
        for a in self.basis:
            row = to_sparse_int(a)
            e.insert({**row, **{c + n: x for c, x in row.items()}})
        for b in other.basis:
            e.insert(to_sparse_int(b))
        inter = Echelon(n)
        for p, row in e.rows.items():
            if p >= n:
                inter.insert({c - n: x for c, x in row.items()})
        return Subspace.from_echelon(inter)

    def __le__(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        e = other.echelon()
        return all(e.contains(to_sparse_int(b)) for b in self.basis)

    def contains(self, vec: Vector) -> bool:
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        return self.echelon().contains(to_sparse_int(vec))

    def perp(self) -> "Subspace":
        """Annihilator under the standard coordinate pairing."""
        n = self.ambient_dim
        piv = self.pivots()
        pivset = set(piv)
        vecs = []
        for f in range(n):
            if f in pivset:
                continue
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for p, b in zip(piv, self.basis):
                v[p] = -b[f]
            vecs.append(v)
        return Subspace.span(vecs, n)

    def coordinates(self, vec: Vector) -> list[Fraction]:
        """Coefficients of ``vec`` in the canonical basis (vec must lie in the span)."""
        coeffs = [Fraction(vec[p]) for p in self.pivots()]
        recon = [sum((c * b[j] for c, b in zip(coeffs, self.basis)), Fraction(0))
                 for j in range(self.ambient_dim)]
        if any(Fraction(x) != y for x, y in zip(vec, recon)):
            raise ValueError("vector is not in the subspace")
        return coeffs


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


# -- small dense matrix helpers -------------------------------------------------

Matrix = list  # list of rows of Fraction


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ncols = len(b[0]) if b else 0
    # structure matrices are mostly zero; walk only the nonzero entries
    b_nz = [[(j, x) for j, x in enumerate(r) if x] for r in b]
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for k, x in enumerate(row):
            if x:
                for j, y in b_nz[k]:
                    acc[j] += x * y
        out.append(acc)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ValueError if singular."""
    n = len(a)
    _check_rows(a, n)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
