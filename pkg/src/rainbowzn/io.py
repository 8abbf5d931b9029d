"""Coloring file formats.

Text: first line ``n r``, second line the n color ids separated by spaces.
JSON: ``{"n": ..., "r": ..., "colors": [...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .group import Coloring


class ColoringParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(line: str):
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def _int(tok: str, line: int, column: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ColoringParseError(f"expected an integer, got {tok!r}", line, column) from None
    if value < 0:
        raise ColoringParseError(f"negative value {value}", line, column)
    return value


def _check(n: int, r: int, colors: list[int], line: int) -> Coloring:
    if len(colors) != n:
        raise ColoringParseError(f"expected {n} color ids, found {len(colors)}", line, 1)
    try:
        c = Coloring(tuple(colors))
    except ValueError as exc:
        raise ColoringParseError(str(exc), line, 1) from None
    if c.r != r:
        raise ColoringParseError(f"header says r={r} but {c.r} colors are used", 1, 1)
    return c


def parse_coloring(text: str) -> Coloring:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    lines = [ln for ln in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 2:
        raise ColoringParseError("expected a header line and a color line", len(lines) + 1, 1)
    header = list(_tokens(lines[0]))
    if len(header) != 2:
        raise ColoringParseError("header must be 'n r'", 1, 1)
    n, r = (_int(tok, 1, col) for tok, col in header)
    if n < 1:
        raise ColoringParseError("n must be positive", 1, header[0][1])
    if len(lines) > 2:
        raise ColoringParseError("unexpected extra line", 3, 1)
    colors = [_int(tok, 2, col) for tok, col in _tokens(lines[1])]
    return _check(n, r, colors, 2)


def _parse_json(text: str) -> Coloring:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ColoringParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        n, r, colors = int(obj["n"]), int(obj["r"]), [int(v) for v in obj["colors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ColoringParseError(f"bad coloring object: {exc}", 1, 1) from None
    return _check(n, r, colors, 1)


def read_coloring(path: str | Path) -> Coloring:
    return parse_coloring(Path(path).read_text())


def format_coloring(c: Coloring) -> str:
    return f"{c.n} {c.r}\n{' '.join(map(str, c.colors))}\n"


def coloring_to_dict(c: Coloring) -> dict:
    return {"n": c.n, "r": c.r, "colors": list(c.colors)}


def write_coloring(c: Coloring, path: str | Path, as_json: bool = False) -> None:
    text = json.dumps(coloring_to_dict(c)) + "\n" if as_json else format_coloring(c)
    Path(path).write_text(text)
