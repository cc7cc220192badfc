"""Polynomials in x1..xn, vectors of them, and the contraction action.

A monomial is a tuple of exponents.  ``Polynomial`` keeps only nonzero
rational coefficients.  The operator ring acts by contraction:
``y^a . x^b = x^(b-a)`` when ``b >= a`` componentwise and ``0`` otherwise,
with no factorials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple

ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4, "u": 5, "v": 6}


class ParseError(ValueError):
    """Malformed polynomial text; ``column`` is 1-based."""

    def __init__(self, message: str, text: str, column: int):
        self.message = message
        self.text = text
        self.column = column
        super().__init__(f"{message} at column {column}: {text!r}")


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] = ()):
        self.nvars = nvars
        clean = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Monomial, c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _same_vars(self, other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.nvars, t)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.nvars, {m: c * x for m, x in self.terms.items()})

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Rename x_i to x_{i+offset} inside a ring with ``nvars`` variables."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring has too few variables")
        pad_after = nvars - offset - self.nvars
        return Polynomial(nvars, {(0,) * offset + m + (0,) * pad_after: c
                                  for m, c in self.terms.items()})


def _same_vars(a, b) -> None:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")


def contract(op: Monomial, target: Polynomial) -> Polynomial:
    """Apply the operator monomial ``y^op`` to ``target`` by contraction."""
    op = tuple(op)
    if len(op) != target.nvars:
        raise ValueError(f"variable count mismatch: {len(op)} vs {target.nvars}")
    out = {}
    for m, c in target.terms.items():
        if all(b >= a for a, b in zip(op, m)):
            out[tuple(b - a for a, b in zip(op, m))] = c
    return Polynomial(target.nvars, out)


class DualElement:
    """An element sum_i f_i e_i^* of the free module with ``len(components)`` slots."""

    __slots__ = ("nvars", "components")

    def __init__(self, components: Iterable[Polynomial], nvars: int | None = None):
        comps = tuple(components)
        if not comps:
            raise ValueError("a dual element needs at least one slot")
        if nvars is None:
            nvars = comps[0].nvars
        for p in comps:
            if p.nvars != nvars:
                raise ValueError("all components must share the variable count")
        self.nvars = nvars
        self.components = comps

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.components)

    def __bool__(self) -> bool:
        return any(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualElement):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.nvars, self.components))

    def __repr__(self) -> str:
        return f"DualElement({format_dual(self)!r})"


def contract_dual(op: Monomial, target: DualElement) -> DualElement:
    return DualElement((contract(op, p) for p in target.components), target.nvars)


def degree(f) -> int:
    """Maximum component degree of a dual element (or polynomial); -1 for zero."""
    return f.degree


def pairing(slot: int, op: Monomial, rhs: DualElement) -> Fraction:
    """<y^op e_slot, rhs>: the coefficient of x^op e_slot^* in ``rhs`` (slot is 0-based)."""
    if len(op) != rhs.nvars:
        raise ValueError("variable count mismatch")
    if not 0 <= slot < rhs.rank:
        return Fraction(0)
    return rhs.components[slot].coefficient(op)


# -- text form --------------------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_mono(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    """Canonical text, terms in descending graded-lex order (e.g. ``x1^2*x2-3/2x1+1``)."""
    if not p.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_mono(m)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = _format_coeff(a) + mono
        out.append(("-" if sign == "-" else "") + body if k == 0 else sign + body)
    return "".join(out)


def format_dual(f: DualElement) -> str:
    return ", ".join(format_poly(p) for p in f.components)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+|[xyzwuv])|(?P<op>[-+*/^]))")


def _tokens(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        yield kind, m.group(kind), start + 1
        pos = m.end()
    yield "end", "", n + 1


def _var_index(tok: str, text: str, col: int) -> int:
    if tok in ALIASES:
        return ALIASES[tok]
    idx = int(tok[1:])
    if idx < 1:
        raise ParseError(f"unknown variable {tok!r}", text, col)
    return idx


def parse_poly(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the polynomial grammar.  Aliases x,y,z,w,u,v mean x1..x6.

    With ``nvars`` given, variables beyond it are rejected; otherwise the ring
    is sized by the largest variable index used (at least 1).
    """
    toks = list(_tokens(text))
    i = 0
    terms: list[tuple[dict, Fraction]] = []

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def parse_int():
        kind, val, col = take()
        if kind != "num":
            raise ParseError("expected an integer", text, col)
        return int(val)

    def parse_var_power(exps):
        kind, val, col = take()
        idx = _var_index(val, text, col)
        if nvars is not None and idx > nvars:
            raise ParseError(f"unknown variable {val!r} (ring has {nvars} variables)", text, col)
        e = 1
        if peek()[:2] == ("op", "^"):
            take()
            e = parse_int()
        exps[idx] = exps.get(idx, 0) + e

    sign = 1
    kind, val, col = peek()
    if kind == "op" and val in "+-":
        take()
        sign = -1 if val == "-" else 1
    while True:
        kind, val, col = peek()
        coeff = Fraction(1)
        has_coeff = False
        exps: dict[int, int] = {}
        if kind == "num":
            num = parse_int()
            den = 1
            if peek()[:2] == ("op", "/"):
                take()
                den = parse_int()
                if den == 0:
                    raise ParseError("zero denominator", text, toks[i - 1][2])
            coeff = Fraction(num, den)
            has_coeff = True
            if peek()[:2] == ("op", "*") and toks[i + 1][0] == "var":
                take()
        if peek()[0] == "var":
            parse_var_power(exps)
            while True:
                k2, v2, _ = peek()
                if (k2, v2) == ("op", "*"):
                    take()
                    if peek()[0] != "var":
                        raise ParseError("expected a variable after '*'", text, peek()[2])
                    parse_var_power(exps)
                elif k2 == "var":
                    parse_var_power(exps)
                else:
                    break
        elif not has_coeff:
            raise ParseError("expected a term", text, col)
        terms.append((exps, sign * coeff))
        kind, val, col = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise ParseError(f"unexpected {val!r}", text, col)

    n = max([max(e, default=0) for e, _ in terms] + [1])
    if nvars is not None:
        n = nvars
    out: dict = {}
    for exps, c in terms:
        m = tuple(exps.get(j, 0) for j in range(1, n + 1))
        out[m] = out.get(m, 0) + c
    return Polynomial(n, out)


def parse_dual(text: str, nvars: int | None = None) -> DualElement:
    """Comma-separated component polynomials in slot order."""
    parts = text.split(",")
    if nvars is None:
        polys = []
        offset = 0
        for part in parts:
            try:
                polys.append(parse_poly(part))
            except ParseError as e:
                raise ParseError(e.message, text, e.column + offset) from None
            offset += len(part) + 1
        nvars = max(p.nvars for p in polys)
    polys = []
    offset = 0
    for part in parts:
        try:
            polys.append(parse_poly(part, nvars))
        except ParseError as e:
            raise ParseError(e.message, text, e.column + offset) from None
        offset += len(part) + 1
    return DualElement(polys, nvars)
