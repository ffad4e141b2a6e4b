"""graph6 encoding (bit-packed upper triangle, printable bytes offset 63)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graph import SimpleGraph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"n={n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def to_graph6(g: SimpleGraph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        mj = g.mask(j)
        for i in range(j):
            bits.append(mj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5])
        for k in range(0, len(bits), 6)
    )
    out = (_encode_n(g.n) + body).decode("ascii")
    return HEADER + out if header else out


def from_graph6(s: str | bytes) -> SimpleGraph:
    data = s.encode("ascii") if isinstance(s, str) else bytes(s)
    data = data.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    if data.startswith(b":") or data.startswith(b"&"):
        raise Graph6Error("sparse6/digraph6 input is not supported")
    if any(b < 63 or b > 126 for b in data):
        raise Graph6Error("graph6 bytes must lie in [63, 126]")
    n, off = _decode_n(data)
    body = data[off:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} body bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    # padding bits must be zero for a bit-exact round trip
    for k2 in range(nbits, need * 6):
        if (body[k2 // 6] - 63) >> (5 - k2 % 6) & 1:
            raise Graph6Error("non-zero padding bits")
    return SimpleGraph(n, edges)


def read_graph6_file(path: str | Path) -> Iterator[SimpleGraph]:
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield from_graph6(line)


def write_graph6_file(path: str | Path, graphs: Iterable[SimpleGraph]) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
            count += 1
    return count
