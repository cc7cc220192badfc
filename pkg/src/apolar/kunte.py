"""Encoding matrices, transposition duality and the symmetric-matrix self-duality test.

Row k of an l x r encoding matrix is the generator sum_i N[k][i] e_i^*.
Transposing the matrix yields the dual module, so a symmetric square matrix
gives a self-dual module.  A non-symmetric matrix proves nothing either way;
it is only reported NOT_SELF_DUAL when the Hilbert and Loewy functions differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .decomp import SYMMETRIC_MATRIX
from .invsys import InverseSystem, closure
from .poly import DualElement, ParseError, Polynomial, format_poly, parse_poly

NOT_SELF_DUAL = "NOT_SELF_DUAL"
INCONCLUSIVE = "INCONCLUSIVE"


class SoundnessError(AssertionError):
    """A consequence guaranteed by a theorem failed to hold."""


class MatrixFormatError(ValueError):
    pass


@dataclass(frozen=True)
class EncodingMatrix:
    nvars: int
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("encoding matrix must have at least one row and column")
        cols = len(self.entries[0])
        for k, row in enumerate(self.entries):
            if len(row) != cols:
                raise ValueError(f"row {k} has {len(row)} entries, expected {cols}")
            for p in row:
                if p.nvars != self.nvars:
                    raise ValueError("entry variable count does not match nvars")
        if not any(p for row in self.entries for p in row):
            raise ValueError("zero encoding matrix")

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], nvars: int | None = None) -> "EncodingMatrix":
        if nvars is None:
            nvars = max(parse_poly(s).nvars for row in rows for s in row)
        return cls(nvars, tuple(tuple(parse_poly(s, nvars) for s in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i))

    def generators(self) -> list[DualElement]:
        return [DualElement(row, self.nvars) for row in self.entries]

    def strings(self) -> list[list[str]]:
        return [[format_poly(p) for p in row] for row in self.entries]

    def to_record(self) -> dict:
        return {"vars": self.nvars, "rows": self.rows, "cols": self.cols,
                "entries": self.strings()}

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(r) for r in self.strings()) + "]"


def matrix_from_record(rec: dict) -> EncodingMatrix:
    """Validate a {"vars", "rows", "cols", "entries"} record."""
    for key in ("vars", "rows", "cols", "entries"):
        if key not in rec:
            raise MatrixFormatError(f"missing field {key!r}")
    n, l, r = rec["vars"], rec["rows"], rec["cols"]
    ents = rec["entries"]
    if not all(isinstance(x, int) and x > 0 for x in (n, l, r)):
        raise MatrixFormatError("vars, rows and cols must be positive integers")
    if len(ents) != l or any(len(row) != r for row in ents):
        raise MatrixFormatError(f"entries do not form a {l}x{r} grid")
    rows = []
    for k, row in enumerate(ents):
        out = []
        for i, s in enumerate(row):
            if not isinstance(s, str):
                raise MatrixFormatError(f"entry [{k}][{i}] is not a string")
            try:
                out.append(parse_poly(s, n))
            except ParseError as e:
                raise MatrixFormatError(f"entry [{k}][{i}]: {e}") from None
        rows.append(tuple(out))
    try:
        return EncodingMatrix(n, tuple(rows))
    except ValueError as e:
        raise MatrixFormatError(str(e)) from None


def matrix_from_json(text: str) -> EncodingMatrix:
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(rec, dict):
        raise MatrixFormatError("matrix file must hold a JSON object")
    return matrix_from_record(rec)


def module_of(N: EncodingMatrix) -> InverseSystem:
    return closure(N.generators())


def transpose(N: EncodingMatrix) -> EncodingMatrix:
    return EncodingMatrix(N.nvars, tuple(zip(*N.entries)))


@dataclass(frozen=True)
class DualityReport:
    total_dim: int
    total_dim_transpose: int
    hilbert: tuple
    loewy: tuple
    hilbert_transpose: tuple
    loewy_transpose: tuple


def duality_consequences(N: EncodingMatrix) -> DualityReport:
    """Check that M(N) and M(N^T) behave like dual modules."""
    w, wt = module_of(N), module_of(transpose(N))
    rep = DualityReport(w.total_dim, wt.total_dim, w.hilbert(), w.loewy(),
                        wt.hilbert(), wt.loewy())
    if rep.total_dim != rep.total_dim_transpose:
        raise SoundnessError(f"dim M(N) = {rep.total_dim} but dim M(N^T) = {rep.total_dim_transpose}")
    if rep.hilbert != rep.loewy_transpose or rep.hilbert_transpose != rep.loewy:
        raise SoundnessError(
            f"hilbert/loewy mismatch across transposition: {rep.hilbert} vs {rep.loewy_transpose}, "
            f"{rep.hilbert_transpose} vs {rep.loewy}")
    return rep


@dataclass(frozen=True)
class Certificate:
    status: str
    matrix: EncodingMatrix
    module: InverseSystem
    hilbert: tuple
    loewy: tuple

    @property
    def proven(self) -> bool:
        return self.status == SYMMETRIC_MATRIX


def certify_self_dual(N: EncodingMatrix) -> Certificate:
    if not N.is_square:
        raise ValueError(f"certify needs a square matrix, got {N.rows}x{N.cols}")
    w = module_of(N)
    h, lw = w.hilbert(), w.loewy()
    if N.is_symmetric():
        if h != lw:
            raise SoundnessError(f"symmetric matrix but hilbert {h} != loewy {lw}")
        return Certificate(SYMMETRIC_MATRIX, N, w.with_certificate(SYMMETRIC_MATRIX), h, lw)
    status = NOT_SELF_DUAL if h != lw else INCONCLUSIVE
    return Certificate(status, N, w, h, lw)


def direct_sum(*matrices: EncodingMatrix) -> EncodingMatrix:
    """Block-diagonal sum; each summand gets its own fresh block of variables."""
    if not matrices:
        raise ValueError("direct_sum needs at least one summand")
    if len(matrices) == 1:
        return matrices[0]
    n = sum(m.nvars for m in matrices)
    r = sum(m.cols for m in matrices)
    zero = Polynomial.zero(n)
    rows = []
    var_off = col_off = 0
    for m in matrices:
        for row in m.entries:
            full = [zero] * r
            for i, p in enumerate(row):
                full[col_off + i] = p.embed(n, var_off)
            rows.append(tuple(full))
        var_off += m.nvars
        col_off += m.cols
    return EncodingMatrix(n, tuple(rows))


def diagonal(polys: Sequence[Polynomial]) -> EncodingMatrix:
    """Diagonal matrix sharing one ring (used by the chain witnesses)."""
    n = polys[0].nvars
    zero = Polynomial.zero(n)
    return EncodingMatrix(n, tuple(
        tuple(p if i == j else zero for j in range(len(polys))) for i, p in enumerate(polys)))
