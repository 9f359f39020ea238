"""Line-oriented text format for multiplication tables.

::

    # comment
    dim_even 3
    dim_odd 1
    prod x1 x1 = x2
    prod x2 x1 = x3 + -1/2 x1

Each ``prod`` line gives ``[a, b]`` as a sum of ``[<rational> ]<basis>``
terms; omitted products are zero.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import GradingError, SuperAlgebra

_RATIONAL = re.compile(r"-?[0-9]+(?:/[0-9]+)?$")
_BASIS = re.compile(r"[xy][1-9][0-9]*$")
_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


def _tokens(text: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in _TOKEN.finditer(text)]


def _rational(tok: str, line: int, col: int) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ParseError(line, col, f"expected a rational, got {tok!r}")
    num, _, den = tok.partition("/")
    if den and int(den) == 0:
        raise ParseError(line, col, "zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _header(tokens, keyword: str, lineno: int) -> int:
    if not tokens or tokens[0][1] != keyword:
        col = tokens[0][0] if tokens else 1
        raise ParseError(lineno, col, f"expected '{keyword} <count>'")
    if len(tokens) != 2 or not tokens[1][1].isdigit():
        col = tokens[1][0] if len(tokens) > 1 else tokens[0][0] + len(keyword)
        raise ParseError(lineno, col, f"'{keyword}' takes one non-negative integer")
    return int(tokens[1][1])


def parse_algebra(text: str) -> SuperAlgebra:
    """Parse the text format; raises :class:`ParseError` with a position."""
    header: list[int] = []
    probe: SuperAlgebra | None = None
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    seen: dict[tuple[int, int], int] = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = _tokens(body)
        if not tokens:
            continue
        if len(header) < 2:
            keyword = "dim_even" if not header else "dim_odd"
            header.append(_header(tokens, keyword, lineno))
            if len(header) == 2:
                probe = SuperAlgebra(header[0], header[1])
            continue
        assert probe is not None
        if tokens[0][1] != "prod":
            raise ParseError(lineno, tokens[0][0], f"expected 'prod', got {tokens[0][1]!r}")
        if len(tokens) < 5 or tokens[3][1] != "=":
            col = tokens[3][0] if len(tokens) > 3 else tokens[-1][0]
            raise ParseError(lineno, col, "expected 'prod <b> <b> = <terms>'")

        def basis(col: int, tok: str) -> int:
            if not _BASIS.match(tok):
                raise ParseError(lineno, col, f"expected a basis name, got {tok!r}")
            try:
                return probe.index(tok)
            except KeyError:
                raise ParseError(lineno, col, f"unknown basis element {tok!r}") from None

        left = basis(*tokens[1])
        right = basis(*tokens[2])
        if (left, right) in seen:
            raise ParseError(
                lineno, tokens[0][0],
                f"duplicate definition of [{tokens[1][1]}, {tokens[2][1]}] "
                f"(first on line {seen[(left, right)]})",
            )
        seen[(left, right)] = lineno

        vec: dict[int, Fraction] = {}
        rest = tokens[4:]
        k = 0
        while True:
            if k >= len(rest):
                raise ParseError(lineno, tokens[-1][0], "expected a term")
            col, tok = rest[k]
            coef = Fraction(1)
            if not _BASIS.match(tok):
                coef = _rational(tok, lineno, col)
                k += 1
                if k >= len(rest):
                    raise ParseError(lineno, col, "coefficient without a basis element")
                col, tok = rest[k]
            idx = basis(col, tok)
            target = (probe.parity(left) + probe.parity(right)) % 2
            if probe.parity(idx) != target and coef:
                raise ParseError(
                    lineno, col,
                    f"grading violation: [{tokens[1][1]}, {tokens[2][1]}] cannot have a "
                    f"{tok} component",
                )
            vec[idx] = vec.get(idx, Fraction(0)) + coef
            k += 1
            if k == len(rest):
                break
            if rest[k][1] != "+":
                raise ParseError(lineno, rest[k][0], f"expected '+', got {rest[k][1]!r}")
            k += 1
        products[(left, right)] = vec

    if len(header) < 2:
        keyword = "dim_even" if not header else "dim_odd"
        raise ParseError(lineno + 1, 1, f"missing '{keyword}' header")
    try:
        return SuperAlgebra(header[0], header[1], products)
    except GradingError as exc:  # pragma: no cover - caught per line above
        raise ParseError(lineno, 1, str(exc)) from None


def _term(coef: Fraction, name: str) -> str:
    return name if coef == 1 else f"{coef} {name}"


def dump_algebra(A: SuperAlgebra) -> str:
    """Canonical text: header, then product lines in basis order."""
    lines = [f"dim_even {A.n}", f"dim_odd {A.m}"]
    for i, j, vec in A.nonzero_products():
        terms = " + ".join(_term(c, A.name(k)) for k, c in enumerate(vec) if c)
        lines.append(f"prod {A.name(i)} {A.name(j)} = {terms}")
    return "\n".join(lines) + "\n"


def read_algebra(path) -> SuperAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def write_algebra(A: SuperAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_algebra(A))
