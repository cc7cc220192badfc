"""Structure tensors of apolar modules and the Strassen / partial-symmetry checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import exact
from .exact import Echelon, identity, inverse, is_symmetric, matmul, transpose
from .invsys import InverseSystem, monomials_upto
from .kunte import Certificate
from .decomp import SYMMETRIC_MATRIX
from .poly import contract_dual

GENERIC_AND_ABELIAN = "GENERIC_AND_ABELIAN"
NOT_GENERIC = "NOT_GENERIC"
NOT_ABELIAN = "NOT_ABELIAN"


def multiplication_matrices(w: InverseSystem) -> list:
    """Matrices of y_1..y_n on M = W^* in the basis dual to W's canonical basis."""
    return [transpose(c) for c in w.contraction_matrices()]


@dataclass(frozen=True)
class StructureTensor:
    slices: tuple  # dim_a square matrices of size dim_b

    @property
    def dim_a(self) -> int:
        return len(self.slices)

    @property
    def dim_b(self) -> int:
        return len(self.slices[0]) if self.slices else 0

    dim_c = dim_b

    def evaluate(self, alpha) -> list:
        """t(alpha) = sum_j alpha_j * slice_j."""
        m = self.dim_b
        out = [[Fraction(0)] * m for _ in range(m)]
        for a, s in zip(alpha, self.slices):
            if a:
                for i in range(m):
                    for j in range(m):
                        out[i][j] += a * s[i][j]
        return out

    def to_record(self) -> dict:
        return {
            "schema": "apolar.tensor/1",
            "dim_a": self.dim_a, "dim_b": self.dim_b, "dim_c": self.dim_c,
            "slices": [[[str(x) for x in row] for row in s] for s in self.slices],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "StructureTensor":
        return cls(tuple([[Fraction(x) for x in row] for row in s] for s in rec["slices"]))


def structure_tensor(w: InverseSystem) -> StructureTensor:
    """Slice 0 is multiplication by 1, slice i is multiplication by y_i."""
    return StructureTensor(tuple([identity(w.total_dim)] + multiplication_matrices(w)))


@dataclass(frozen=True)
class StrassenReport:
    status: str
    alpha: tuple | None = None
    failing_pair: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status == GENERIC_AND_ABELIAN


def _invertible(m) -> bool:
    return exact.rank(m) == len(m)


def _candidate_alphas(k: int):
    for j in range(k):
        yield tuple(int(i == j) for i in range(k))
    for coeffs in product(range(-2, 3), repeat=k):
        if sum(map(abs, coeffs)) > 1:
            yield coeffs


def strassen_check(t: StructureTensor, max_tries: int = 500) -> StrassenReport:
    """1_A-genericity plus commutativity of t(A^*) t(alpha)^{-1}."""
    alpha = None
    for tries, cand in enumerate(_candidate_alphas(t.dim_a)):
        if tries >= max_tries:
            break
        if _invertible(t.evaluate(cand)):
            alpha = cand
            break
    if alpha is None:
        return StrassenReport(NOT_GENERIC)
    inv = inverse(t.evaluate(alpha))
    normalized = [matmul(s, inv) for s in t.slices]
    for i, j in combinations(range(t.dim_a), 2):
        if matmul(normalized[i], normalized[j]) != matmul(normalized[j], normalized[i]):
            return StrassenReport(NOT_ABELIAN, alpha, (i, j))
    return StrassenReport(GENERIC_AND_ABELIAN, alpha)


@dataclass(frozen=True)
class SelfDualPairing:
    """Nondegenerate symmetric pairing; ``gram_w`` on W, ``gram_m`` on M = W^*."""

    gram_w: list
    gram_m: list


def self_dual_pairing(cert: Certificate) -> SelfDualPairing:
    """The pairing <s.f_k, s'.f_k'> = constant term of s s' . N[k][k'] on W.

    On the operator-generated spanning set this is the coefficient of
    x^(a+a') in N[k][k'].
    """
    if cert.status != SYMMETRIC_MATRIX:
        raise ValueError(f"no self-duality certificate (status {cert.status})")
    N, w = cert.matrix, cert.module
    grid = w.grid
    basis = w.basis
    piv = basis.pivots()
    ech = Echelon(len(grid))
    chosen = []   # (k, a, coordinates in W's basis)
    for k, f in enumerate(N.generators()):
        for a in monomials_upto(N.nvars, max(f.degree, 0)):
            g = contract_dual(a, f)
            if not g:
                continue
            vec = grid.vector(g)
            if ech.insert(vec):
                dense = {}
                for s, p in enumerate(g.components):
                    for m, c in p.terms.items():
                        dense[grid.index[(s, m)]] = c
                chosen.append((k, a, [dense.get(p, Fraction(0)) for p in piv]))
            if len(chosen) == w.total_dim:
                break
    if len(chosen) != w.total_dim:
        raise AssertionError("operator images do not span W")
    gram_p = [[N.entries[k1][k2].coefficient(tuple(x + y for x, y in zip(a1, a2)))
               for (k2, a2, _) in chosen] for (k1, a1, _) in chosen]
    P = [c for _, _, c in chosen]
    P_inv = inverse(P)
    gram_w = matmul(matmul(P_inv, gram_p), transpose(P_inv))
    return SelfDualPairing(gram_w, inverse(gram_w))


@dataclass(frozen=True)
class SymmetryReport:
    ok: bool
    failing_slice: int | None = None
    detail: str = ""


def symmetry_check(t: StructureTensor, pairing: SelfDualPairing) -> SymmetryReport:
    """Every slice must be self-adjoint for the pairing, i.e. gram @ slice is symmetric."""
    H = pairing.gram_m
    if not is_symmetric(H):
        return SymmetryReport(False, None, "pairing is not symmetric")
    if not _invertible(H):
        return SymmetryReport(False, None, "pairing is degenerate")
    for j, s in enumerate(t.slices):
        if not is_symmetric(matmul(H, s)):
            return SymmetryReport(False, j, f"slice {j} is not self-adjoint")
    return SymmetryReport(True)
