"""graph6 encoding (header-less ASCII, one graph per line)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph

HEADER = ">>graph6<<"
MAX_N = 258047


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 parse error at byte {offset}: {message}")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= MAX_N:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"graph6 supports n <= {MAX_N}, got {n}")


def to_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty input", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the printable range 63..126", base + k)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        raise Graph6Error(f"n > {MAX_N} is not supported", base + 1)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated long-form vertex count", base + len(s))
        n = 0
        for k in range(1, 4):
            n = (n << 6) | (ord(s[k]) - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error(f"long form used for n={n} <= 62", base + 1)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}", base + len(s))
    if len(body) > need:
        raise Graph6Error(f"{len(body) - need} trailing bytes after the bit vector", base + pos + need)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6 and (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("non-zero padding bits", base + pos + need - 1)
    return Graph(n, adj)


def read_graph6(stream: TextIO | Iterable[str]) -> Iterator[Graph]:
    """Parse a newline-delimited graph6 stream, skipping blank lines."""
    for line in stream:
        line = line.strip()
        if line:
            yield from_graph6(line)


def write_graph6(graphs: Iterable[Graph], stream: TextIO) -> int:
    count = 0
    for g in graphs:
        stream.write(to_graph6(g) + "\n")
        count += 1
    return count
