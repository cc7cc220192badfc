"""Command-line interface: ``apolar <command> [options]``.

Every command builds one record; ``--format json`` prints it verbatim and
``--format table`` renders the same fields as aligned text.  Exit codes are
0 on success, 1 when an ``--expect`` assertion fails (or a module cannot be
decomposed because it is not certified), and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import classify as _classify
from .decomp import SYMMETRIC_MATRIX, decompose, q_grid
from .kunte import (EncodingMatrix, MatrixFormatError, certify_self_dual,
                    matrix_from_json, module_of)
from .macaulay import macaulay_rep, sequence_admissible
from .poly import ParseError, parse_dual
from .tensor import self_dual_pairing, strassen_check, structure_tensor, symmetry_check

SCHEMA_VERSION = 1


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


class ExpectationFailed(Exception):
    pass


def _schema(cmd: str) -> str:
    return f"apolar.{cmd}/{SCHEMA_VERSION}"


def parse_sequence(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    col = 1
    out = []
    for raw, p in zip(text.split(","), parts):
        lead = len(raw) - len(raw.lstrip())
        if not p.isdigit():
            raise InputError(f"expected a nonnegative integer at column {col + lead} in {text!r}")
        out.append(int(p))
        col += len(raw) + 1
    return tuple(out)


def _fmt_seq(seq) -> str:
    return ",".join(map(str, seq))


# -- input ------------------------------------------------------------------------------

def _load_matrix(args) -> EncodingMatrix:
    if args.matrix:
        try:
            with open(args.matrix, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.matrix}: {e.strerror}") from None
        try:
            return matrix_from_json(text)
        except MatrixFormatError as e:
            raise InputError(f"{args.matrix}: {e}") from None
    rows = []
    for text in args.poly:
        try:
            rows.append(parse_dual(text, args.vars))
        except ParseError as e:
            raise InputError(f"{e.message} at column {e.column}\n  {e.text}\n  {' ' * (e.column - 1)}^") from None
    n = args.vars or max(r.nvars for r in rows)
    try:
        rows = [parse_dual(text, n) for text in args.poly]
        return EncodingMatrix(n, tuple(tuple(r.components) for r in rows))
    except ValueError as e:
        raise InputError(str(e)) from None


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", metavar="FILE", help="JSON encoding matrix {vars, rows, cols, entries}")
    g.add_argument("--poly", metavar="STRING", action="append",
                   help="generator (comma-separated components); repeat for more rows")
    p.add_argument("--vars", type=int, metavar="N", help="number of variables for --poly")


def _add_common(p: argparse.ArgumentParser, expect_help: str) -> None:
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--expect", metavar="VALUE", help=expect_help)


# -- commands ---------------------------------------------------------------------------

def cmd_hilbert(args) -> dict:
    N = _load_matrix(args)
    w = module_of(N)
    # hilbert is always that of M = W*; it is h of W itself only when self-dual
    status = certify_self_dual(N).status if N.is_square else None
    rec = {"schema": _schema("hilbert"), "vars": N.nvars, "rank": N.cols, "generators": N.rows,
           "hilbert": list(w.hilbert()), "loewy": list(w.loewy()),
           "hilbert_of": "W*", "certificate": status,
           "total_dim": w.total_dim, "socle_degree": w.socle_degree}
    if args.expect is not None and tuple(rec["hilbert"]) != parse_sequence(args.expect):
        raise ExpectationFailed(f"hilbert {_fmt_seq(rec['hilbert'])} != expected {args.expect}")
    return rec


def cmd_decompose(args) -> dict:
    N = _load_matrix(args)
    if not N.is_square:
        raise InputError(f"decompose needs a square matrix, got {N.rows}x{N.cols}")
    cert = certify_self_dual(N)
    rec = {"schema": _schema("decompose"), "certificate": cert.status,
           "hilbert": list(cert.hilbert)}
    if cert.status != SYMMETRIC_MATRIX:
        rec["error"] = "module is not certified self-dual; no decomposition computed"
        return rec
    dec = decompose(cert.module)
    g = q_grid(cert.module)
    rec.update({"socle_degree": dec.d,
                "rows": [list(r) for r in dec.rows],
                "q_grid": [list(r) for r in g.q]})
    if args.expect is not None:
        want = [parse_sequence(r) for r in args.expect.split(";")]
        got = [tuple(r) for s, r in dec.nonzero_rows()]
        if got != want:
            raise ExpectationFailed(f"nonzero rows {got} != expected {want}")
    return rec


def cmd_macaulay(args) -> dict:
    if args.sequence is not None:
        h = parse_sequence(args.sequence)
        adm = sequence_admissible(h)
        rec = {"schema": _schema("macaulay"), "sequence": list(h), "admissible": adm.ok,
               "rule": adm.rule, "index": adm.index}
        if args.expect is not None:
            want = {"admissible": True, "inadmissible": False}.get(args.expect)
            if want is None:
                raise InputError("--expect for --sequence is 'admissible' or 'inadmissible'")
            if want != adm.ok:
                raise ExpectationFailed(f"sequence is {'admissible' if adm.ok else 'inadmissible'}")
        return rec
    if args.value is None or args.index is None:
        raise InputError("macaulay needs --value and --index, or --sequence")
    try:
        rep = macaulay_rep(args.value, args.index)
    except ValueError as e:
        raise InputError(str(e)) from None
    rec = {"schema": _schema("macaulay"), "value": args.value, "index": args.index,
           "terms": [list(t) for t in rep.terms], "representation": str(rep),
           "bound": rep.bound()}
    if args.expect is not None and str(rec["bound"]) != args.expect.strip():
        raise ExpectationFailed(f"bound {rec['bound']} != expected {args.expect}")
    return rec


def cmd_certify(args) -> dict:
    N = _load_matrix(args)
    if not N.is_square:
        raise InputError(f"certify needs a square matrix, got {N.rows}x{N.cols}")
    cert = certify_self_dual(N)
    rec = {"schema": _schema("certify"), "status": cert.status, "symmetric": N.is_symmetric(),
           "hilbert": list(cert.hilbert), "loewy": list(cert.loewy),
           "total_dim": cert.module.total_dim}
    if args.expect is not None and cert.status != args.expect:
        raise ExpectationFailed(f"status {cert.status} != expected {args.expect}")
    return rec


def cmd_tensor_check(args) -> dict:
    N = _load_matrix(args)
    w = module_of(N)
    t = structure_tensor(w)
    rep = strassen_check(t)
    rec = {"schema": _schema("tensor-check"), "dims": [t.dim_a, t.dim_b, t.dim_c],
           "generic": rep.alpha is not None,
           "alpha": list(rep.alpha) if rep.alpha is not None else None,
           "strassen": rep.status,
           "failing_pair": list(rep.failing_pair) if rep.failing_pair else None}
    if N.is_square:
        cert = certify_self_dual(N)
        rec["certificate"] = cert.status
        if cert.status == SYMMETRIC_MATRIX:
            sym = symmetry_check(t, self_dual_pairing(cert))
            rec["symmetry"] = "ok" if sym.ok else "failed"
            rec["failing_slice"] = sym.failing_slice
        else:
            rec["symmetry"] = "skipped"
    else:
        rec["certificate"] = None
        rec["symmetry"] = "skipped"
    if args.expect is not None and rep.status != args.expect:
        raise ExpectationFailed(f"strassen {rep.status} != expected {args.expect}")
    return rec


def cmd_classify(args) -> dict:
    if args.degree < 1:
        raise InputError("--degree must be a positive integer")
    try:
        c = _classify.census(args.degree)
    except ValueError as e:
        raise InputError(str(e)) from None
    rec = {"schema": _schema("classify")}
    rec.update(c.to_record())
    if args.expect is not None and str(c.possible_count) != args.expect.strip():
        raise ExpectationFailed(f"possible count {c.possible_count} != expected {args.expect}")
    return rec


# -- rendering --------------------------------------------------------------------------

def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(isinstance(x, int) for x in v):
        return _fmt_seq(v)
    return str(v)


def _render_grid(name: str, grid, label) -> list[str]:
    width = max((len(str(x)) for r in grid for x in r), default=1)
    lines = [f"{name}:"]
    for i, r in enumerate(grid):
        lines.append(f"  {label(i)}: " + " ".join(str(x).rjust(width) for x in r))
    return lines


def _render_verdicts(verdicts) -> list[str]:
    rows = []
    for v in verdicts:
        ev = v["evidence"]
        detail = ev.get("note") or ""
        if "matrix" in ev:
            m = ev["matrix"]
            detail = ("[" + "; ".join(", ".join(r) for r in m["entries"]) + "]"
                      + (f"  {detail}" if detail else ""))
        rows.append((_fmt_seq(v["sequence"]), v["status"], ev.get("kind", "-"),
                     ev.get("provenance", "-") + (" (verified)" if ev.get("verified") else ""),
                     detail))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return [("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)) + f"  {r[4]}").rstrip()
            for r in rows]


def render_table(rec: dict) -> str:
    lines = []
    for key, v in rec.items():
        if key == "verdicts":
            lines.append("verdicts:")
            lines.extend(_render_verdicts(v))
        elif key == "rows":
            lines.extend(_render_grid("rows", v, lambda s: f"D{s}"))
        elif key == "q_grid":
            lines.extend(_render_grid("q_grid", v, lambda k: f"k={k}"))
        elif key == "terms":
            lines.append(f"terms: {' '.join(f'({t},{i})' for t, i in v)}")
        elif key == "unknown":
            lines.append(f"unknown: {' '.join('(' + _fmt_seq(s) + ')' for s in v) or '-'}")
        elif key == "discrepancy" and v:
            lines.append(f"discrepancy: yes (computed {rec['possible_count']}, "
                         f"published {rec['published_count']})")
        else:
            lines.append(f"{key}: {_scalar(v)}")
    return "\n".join(lines)


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, indent=2)
    return render_table(rec)


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="apolar", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("hilbert", help="local Hilbert function of an apolar module")
    _add_input(p)
    _add_common(p, "expected Hilbert function, e.g. 1,3,2,1")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("decompose", help="symmetric decomposition of a self-dual module")
    _add_input(p)
    _add_common(p, "expected nonzero rows, e.g. '1,1;1'")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("macaulay", help="Macaulay representation or sequence admissibility")
    p.add_argument("--value", type=int, metavar="A")
    p.add_argument("--index", type=int, metavar="S")
    p.add_argument("--sequence", metavar="H0,H1,...")
    _add_common(p, "expected bound, or admissible/inadmissible with --sequence")
    p.set_defaults(func=cmd_macaulay)

    p = sub.add_parser("certify", help="symmetric-matrix self-duality certificate")
    _add_input(p)
    _add_common(p, "expected status: SYMMETRIC_MATRIX, NOT_SELF_DUAL or INCONCLUSIVE")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("tensor-check", help="genericity, Strassen and symmetry checks")
    _add_input(p)
    _add_common(p, "expected Strassen status")
    p.set_defaults(func=cmd_tensor_check)

    p = sub.add_parser("classify", help="census of Hilbert functions of a given degree")
    p.add_argument("--degree", type=int, required=True, metavar="M")
    _add_common(p, "expected number of possible functions")
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        rec = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ExpectationFailed as e:
        print(f"expectation failed: {e}", file=sys.stderr)
        return 1
    try:
        print(render(rec, args.format))
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    if "error" in rec:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
