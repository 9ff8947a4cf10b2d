"""Text format for generator matrices.

Optional '#' comment lines, then a header line `n k q`, then k rows of n
characters from 0/1 (q = 2) or 0/1/w/W (q = 4) with no separators.
"""

from __future__ import annotations

from pathlib import Path
from typing import TextIO

from .circulant import GFMatrix, pack_row
from .field import symbol_to_element


def dump_matrix(g: GFMatrix, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    lines.append(f"{g.n_cols} {g.n_rows} {g.q}")
    lines.extend(g.row_string(i) for i in range(g.n_rows))
    return "\n".join(lines) + "\n"


def write_matrix(g: GFMatrix, path: str | Path, comments: list[str] | None = None) -> None:
    Path(path).write_text(dump_matrix(g, comments))


def parse_matrix(text: str) -> GFMatrix:
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx >= len(lines):
        raise ValueError("missing header line 'n k q'")
    parts = lines[idx].split()
    if len(parts) != 3:
        raise ValueError(f"header must be 'n k q', got {lines[idx]!r}")
    try:
        n, k, q = (int(x) for x in parts)
    except ValueError as exc:
        raise ValueError(f"non-integer header field in {lines[idx]!r}") from exc
    if q not in (2, 4):
        raise ValueError(f"unsupported field GF({q})")
    if n <= 0 or k <= 0:
        raise ValueError("dimensions must be positive")
    rows = []
    lineno = idx + 1
    for r in range(k):
        lineno += 1
        if idx + 1 + r >= len(lines):
            raise ValueError(f"expected {k} rows, found {r}")
        row = lines[idx + 1 + r].strip()
        if len(row) != n:
            raise ValueError(f"line {lineno}: row has {len(row)} symbols, expected {n}")
        rows.append(pack_row(q, [symbol_to_element(c, q) for c in row]))
    return GFMatrix(q, k, n, tuple(rows))


def read_matrix(source: str | Path | TextIO) -> GFMatrix:
    if hasattr(source, "read"):
        return parse_matrix(source.read())
    return parse_matrix(Path(source).read_text())
