"""graph6 interchange format, plus input autodetection for the CLI.

Encoding follows the standard byte layout: a size header (1 byte for
n <= 62, '~' + 3 bytes for n <= 258047, '~~' + 6 bytes above), then the
upper adjacency triangle in column-major order packed 6 bits per byte,
each offset by 63. Decoding is strict: bad header bytes, out-of-range
bytes, truncated or trailing data, and nonzero padding bits are errors.
"""

from __future__ import annotations

from .errors import PreconditionError
from .graphs import Graph, from_edge_list_text

_HEADER = b">>graph6<<"
_MAX_N = 68719476735


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= _MAX_N:
        parts = [(n >> shift) & 63 for shift in (30, 24, 18, 12, 6, 0)]
        return bytes([126, 126] + [part + 63 for part in parts])
    raise PreconditionError(f"graph too large for graph6 ({n} vertices)")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise PreconditionError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise PreconditionError("truncated graph6 size header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        return n, 4
    if len(data) < 8:
        raise PreconditionError("truncated graph6 size header")
    n = 0
    for byte in data[2:8]:
        n = (n << 6) | (byte - 63)
    return n, 8


def to_graph6(g: Graph) -> str:
    out = bytearray(_encode_size(g.n))
    acc = 0
    width = 0
    for col in range(1, g.n):
        column = g.adj[col]
        for row in range(col):
            acc = (acc << 1) | (column >> row & 1)
            width += 1
            if width == 6:
                out.append(acc + 63)
                acc = 0
                width = 0
    if width:
        out.append((acc << (6 - width)) + 63)
    return out.decode("ascii")


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    for byte in data:
        if not 63 <= byte <= 126:
            raise PreconditionError(f"malformed graph6 byte {byte}")
    n, consumed = _decode_size(data)
    if n < 0 or n > _MAX_N:
        raise PreconditionError("malformed graph6 size header")
    body = data[consumed:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) < expected:
        raise PreconditionError("truncated graph6 body")
    if len(body) > expected:
        raise PreconditionError("trailing bytes after graph6 body")
    adj = [0] * n
    stream = _bit_stream(body)
    for col in range(1, n):
        for row in range(col):
            if next(stream):
                adj[row] |= 1 << col
                adj[col] |= 1 << row
    for leftover in stream:
        if leftover:
            raise PreconditionError("nonzero padding bits in graph6 body")
    return Graph(n, adj)


def _bit_stream(body: bytes):
    for byte in body:
        chunk = byte - 63
        for bit in range(5, -1, -1):
            yield chunk >> bit & 1


def parse_graph_text(text: str) -> Graph:
    """Autodetect graph6 vs edge-list text.

    graph6 bytes are all >= '?' (63) and contain no whitespace; edge lists
    contain digits/spaces, which fall below that range.
    """
    stripped = text.strip()
    if not stripped:
        raise PreconditionError("empty graph input")
    first = stripped.splitlines()[0].strip()
    if first.startswith(">>graph6<<"):
        return from_graph6(first)
    if " " not in first and all(63 <= ord(ch) <= 126 for ch in first):
        return from_graph6(first)
    return from_edge_list_text(text)
