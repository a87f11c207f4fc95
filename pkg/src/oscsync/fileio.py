"""Line-oriented text formats for interconnections, weights, witnesses,
and node systems.

All formats share one lexical layer: whitespace-separated tokens, one item
per line, `#` starting a comment that runs to the end of the line.  Every
parse failure carries the 1-based line number it was detected on.

Interconnection document::

    q 4
    d 1 3          # one dissipative edge per line
    r 1 2          # one restorative edge per line
    w d 1 3 1.0    # optional weights; all-or-none per edge family
    w r 1 2 2/5

Witness document::

    witness
    x 1 2/1        # entry per restorative edge index; missing means zero

Node system document::

    n 2
    m 1 1 1.0      # row-major mass entries; unspecified entries are zero
    k 1 2 0.5
    b 1 1.0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dynamics import OscillatorSystem
from .graphs import Edge, Interconnection
from .structural import SignWitness


class ParseError(ValueError):
    """Input document violates the format; `line` locates the problem
    (None for whole-document problems)."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass(frozen=True)
class ParsedDocument:
    """An interconnection plus its optional weight assignments."""

    ic: Interconnection
    d_weights: tuple[Fraction, ...] | None
    r_weights: tuple[Fraction, ...] | None


def _tokenized_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            yield lineno, tokens


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno) from None


def _parse_fraction(token: str, what: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} must be a number, got {token!r}", lineno) from None


def _parse_edge(tokens: Sequence[str], q: int, lineno: int) -> Edge:
    k = _parse_int(tokens[0], "vertex index", lineno)
    l = _parse_int(tokens[1], "vertex index", lineno)
    for v in (k, l):
        if not 1 <= v <= q:
            raise ParseError(f"vertex index {v} out of range [1, {q}]", lineno)
    if k == l:
        raise ParseError(f"self-loop at vertex {k} is not allowed", lineno)
    return (k, l) if k < l else (l, k)


def parse_document(text: str) -> ParsedDocument:
    """Parse an interconnection document, weights included if present.

    A `w` line for one family makes weights mandatory for every edge of
    that family; the other family may remain unweighted (None).
    """
    q: int | None = None
    edges: dict[str, list[Edge]] = {"d": [], "r": []}
    seen: dict[str, set[Edge]] = {"d": set(), "r": set()}
    weights: dict[str, dict[Edge, Fraction]] = {"d": {}, "r": {}}
    weight_lines: dict[tuple[str, Edge], int] = {}

    for lineno, tokens in _tokenized_lines(text):
        kind = tokens[0]
        if kind == "q":
            if q is not None:
                raise ParseError("duplicate q line", lineno)
            if len(tokens) != 2:
                raise ParseError("q line must be `q <int>`", lineno)
            q = _parse_int(tokens[1], "vertex count", lineno)
            if q < 2:
                raise ParseError(f"vertex count must be at least 2, got {q}", lineno)
        elif kind in ("d", "r"):
            if q is None:
                raise ParseError("q must come before any edge line", lineno)
            if len(tokens) != 3:
                raise ParseError(f"edge line must be `{kind} <i> <j>`", lineno)
            edge = _parse_edge(tokens[1:], q, lineno)
            if edge in seen[kind]:
                raise ParseError(f"duplicate {kind} edge {edge}", lineno)
            seen[kind].add(edge)
            edges[kind].append(edge)
        elif kind == "w":
            if q is None:
                raise ParseError("q must come before any weight line", lineno)
            if len(tokens) != 5 or tokens[1] not in ("d", "r"):
                raise ParseError("weight line must be `w d|r <i> <j> <weight>`", lineno)
            family = tokens[1]
            edge = _parse_edge(tokens[2:4], q, lineno)
            value = _parse_fraction(tokens[4], "weight", lineno)
            if value <= 0:
                raise ParseError(f"weight must be positive, got {value}", lineno)
            if edge in weights[family]:
                raise ParseError(f"duplicate weight for {family} edge {edge}", lineno)
            weights[family][edge] = value
            weight_lines[(family, edge)] = lineno
        else:
            raise ParseError(f"unknown line kind {kind!r}", lineno)

    if q is None:
        raise ParseError("document has no q line")

    out: dict[str, tuple[Fraction, ...] | None] = {}
    for family in ("d", "r"):
        if not weights[family]:
            out[family] = None
            continue
        stray = set(weights[family]) - seen[family]
        if stray:
            edge = sorted(stray)[0]
            raise ParseError(
                f"weight given for nonexistent {family} edge {edge}",
                weight_lines[(family, edge)],
            )
        missing = [e for e in edges[family] if e not in weights[family]]
        if missing:
            raise ParseError(
                f"{family} edge {missing[0]} has no weight; weights are "
                "all-or-none per family"
            )
        out[family] = tuple(weights[family][e] for e in edges[family])

    ic = Interconnection(q, tuple(edges["d"]), tuple(edges["r"]))
    return ParsedDocument(ic=ic, d_weights=out["d"], r_weights=out["r"])


def parse_interconnection(text: str) -> Interconnection:
    """Parse an interconnection document, ignoring any weight lines."""
    return parse_document(text).ic


def _format_weight(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def write_document(
    ic: Interconnection,
    d_weights: Sequence | None = None,
    r_weights: Sequence | None = None,
) -> str:
    """Render an interconnection (and optional weights) as a document."""
    lines = [f"q {ic.q}"]
    lines += [f"d {k} {l}" for k, l in ic.dissipative_edges]
    lines += [f"r {k} {l}" for k, l in ic.restorative_edges]
    for family, edge_list, values in (
        ("d", ic.dissipative_edges, d_weights),
        ("r", ic.restorative_edges, r_weights),
    ):
        if values is None:
            continue
        if len(values) != len(edge_list):
            raise ValueError(
                f"{len(values)} weights for {len(edge_list)} {family} edges"
            )
        lines += [
            f"w {family} {k} {l} {_format_weight(v)}"
            for (k, l), v in zip(edge_list, values)
        ]
    return "\n".join(lines) + "\n"


def parse_witness(text: str, p_r: int | None = None) -> tuple[Fraction, ...]:
    """Parse a witness document into an entry vector.

    Indices are 1-based positions in the reduced restorative edge order;
    absent indices read as zero.  With ``p_r`` the result has exactly that
    length (rejecting larger indices); without it, the largest index seen
    sets the length.
    """
    lines = _tokenized_lines(text)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("witness document is empty") from None
    if tokens != ["witness"]:
        raise ParseError("first line must be `witness`", lineno)
    entries: dict[int, Fraction] = {}
    for lineno, tokens in lines:
        if tokens[0] != "x" or len(tokens) != 3:
            raise ParseError("entry line must be `x <index> <value>`", lineno)
        idx = _parse_int(tokens[1], "entry index", lineno)
        if idx < 1:
            raise ParseError(f"entry index must be positive, got {idx}", lineno)
        if p_r is not None and idx > p_r:
            raise ParseError(
                f"entry index {idx} exceeds the {p_r} restorative edges", lineno
            )
        if idx in entries:
            raise ParseError(f"duplicate entry for index {idx}", lineno)
        entries[idx] = _parse_fraction(tokens[2], "entry value", lineno)
    length = p_r if p_r is not None else (max(entries) if entries else 0)
    return tuple(entries.get(i, Fraction(0)) for i in range(1, length + 1))


def write_witness(x) -> str:
    """Render a witness vector (SignWitness or rational sequence)."""
    values = x.x if isinstance(x, SignWitness) else x
    lines = ["witness"]
    for i, v in enumerate(values, start=1):
        f = Fraction(v)
        lines.append(f"x {i} {f.numerator}/{f.denominator}")
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> OscillatorSystem:
    """Parse a node system document; unspecified matrix entries are zero.

    The node invariants (symmetric positive definite mass and stiffness,
    nonzero port) are checked after assembly and reported as whole-document
    errors.
    """
    n: int | None = None
    m: np.ndarray | None = None
    k: np.ndarray | None = None
    b: np.ndarray | None = None
    filled: set[tuple[str, int, int]] = set()

    for lineno, tokens in _tokenized_lines(text):
        kind = tokens[0]
        if kind == "n":
            if n is not None:
                raise ParseError("duplicate n line", lineno)
            if len(tokens) != 2:
                raise ParseError("n line must be `n <int>`", lineno)
            n = _parse_int(tokens[1], "node order", lineno)
            if n < 1:
                raise ParseError(f"node order must be at least 1, got {n}", lineno)
            m = np.zeros((n, n))
            k = np.zeros((n, n))
            b = np.zeros(n)
        elif kind in ("m", "k"):
            if n is None:
                raise ParseError("n must come before any matrix line", lineno)
            if len(tokens) != 4:
                raise ParseError(f"matrix line must be `{kind} <i> <j> <value>`", lineno)
            i = _parse_int(tokens[1], "row index", lineno)
            j = _parse_int(tokens[2], "column index", lineno)
            for v in (i, j):
                if not 1 <= v <= n:
                    raise ParseError(f"index {v} out of range [1, {n}]", lineno)
            if (kind, i, j) in filled:
                raise ParseError(f"duplicate entry {kind} {i} {j}", lineno)
            filled.add((kind, i, j))
            value = float(_parse_fraction(tokens[3], "matrix entry", lineno))
            (m if kind == "m" else k)[i - 1, j - 1] = value
        elif kind == "b":
            if n is None:
                raise ParseError("n must come before any port line", lineno)
            if len(tokens) != 3:
                raise ParseError("port line must be `b <i> <value>`", lineno)
            i = _parse_int(tokens[1], "port index", lineno)
            if not 1 <= i <= n:
                raise ParseError(f"index {i} out of range [1, {n}]", lineno)
            if ("b", i, 0) in filled:
                raise ParseError(f"duplicate entry b {i}", lineno)
            filled.add(("b", i, 0))
            b[i - 1] = float(_parse_fraction(tokens[2], "port entry", lineno))
        else:
            raise ParseError(f"unknown line kind {kind!r}", lineno)

    if n is None:
        raise ParseError("document has no n line")
    try:
        return OscillatorSystem(n=n, m=m, k=k, b=b)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_system(sys: OscillatorSystem) -> str:
    """Render a node system as a document (row-major matrix entries)."""
    lines = [f"n {sys.n}"]
    for name, mat in (("m", sys.m), ("k", sys.k)):
        lines += [
            f"{name} {i + 1} {j + 1} {repr(float(mat[i, j]))}"
            for i in range(sys.n)
            for j in range(sys.n)
        ]
    lines += [f"b {i + 1} {repr(float(sys.b[i]))}" for i in range(sys.n)]
    return "\n".join(lines) + "\n"
