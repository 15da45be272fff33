"""graph6 encoding for graphs with at most 62 vertices."""

from __future__ import annotations

import gzip
from pathlib import Path
from typing import Iterator

from .errors import (
    Graph6CharError,
    Graph6LengthError,
    Graph6PaddingError,
    Graph6SizeError,
    Graph6TrailingError,
    VertexError,
)
from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(text: str) -> Graph:
    word = text.rstrip("\r\n")
    if word.startswith(HEADER):
        word = word[len(HEADER):]
    if not word:
        raise Graph6LengthError("empty graph6 word")
    for ch in word:
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharError(f"character {ch!r} outside the graph6 range")
    n = ord(word[0]) - 63
    if n > MAX_VERTICES:
        raise Graph6SizeError("only the single-byte size form (n <= 62) is supported")
    need = _body_length(n)
    body = word[1:]
    if len(body) < need:
        raise Graph6LengthError(f"n={n} needs {need} data bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6TrailingError(f"{len(body) - need} bytes after the edge data")

    rows = [0] * n
    k = 0
    total = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            group = ord(body[k // 6]) - 63
            if group >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need:
        spare = need * 6 - total
        if (ord(body[-1]) - 63) & ((1 << spare) - 1):
            raise Graph6PaddingError("nonzero padding bits")
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if g.n > MAX_VERTICES:
        raise VertexError(f"graph6 output limited to {MAX_VERTICES} vertices")
    out = [chr(g.n + 63)]
    acc = 0
    filled = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            filled += 1
            if filled == 6:
                out.append(chr(acc + 63))
                acc = filled = 0
    if filled:
        out.append(chr((acc << (6 - filled)) + 63))
    return "".join(out)


def read_graph6_file(path: str | Path) -> Iterator[Graph]:
    """Yield graphs from a graph6 stream; ``.gz`` files are decompressed."""
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield parse_graph6(line)
