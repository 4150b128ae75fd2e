"""Bit-exact graph6 codec.

Implements the nauty text format: a length header (1, 4, or 8 printable
bytes) followed by the upper triangle of the adjacency matrix in column
order, six bits per byte, each byte offset by 63.  Parsing is strict:
every byte must be printable (63..126), the body length must match the
header exactly, and padding bits must be zero.  Emission always uses the
minimal-length header.
"""

from .graphs import Graph, from_edge_list


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def _check_printable(data: bytes, start: int = 0) -> None:
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"non-printable graph6 byte {data[i]:#04x}", offset=i)


def _parse_header(data: bytes) -> tuple[int, int]:
    """Return (n, body offset)."""
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 2:
        raise Graph6Error("truncated extended length header", offset=1)
    if data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated 3-byte length header", offset=len(data))
        n = 0
        for i in range(1, 4):
            n = n << 6 | (data[i] - 63)
        return n, 4
    if len(data) < 8:
        raise Graph6Error("truncated 6-byte length header", offset=len(data))
    n = 0
    for i in range(2, 8):
        n = n << 6 | (data[i] - 63)
    return n, 8


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (an optional trailing newline is tolerated)."""
    if isinstance(text, bytes):
        data = text
    else:
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("non-ASCII graph6 input", offset=exc.start) from None
    data = data.rstrip(b"\r\n")
    if not data:
        raise Graph6Error("empty graph6 input", offset=0)
    _check_printable(data)
    n, body = _parse_header(data)
    if n == 0:
        raise Graph6Error("graph6 header encodes zero vertices", offset=0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - body < nbytes:
        raise Graph6Error(
            f"adjacency body truncated: need {nbytes} bytes, have {len(data) - body}",
            offset=len(data),
        )
    if len(data) - body > nbytes:
        raise Graph6Error("unexpected trailing bytes after adjacency body", offset=body + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[body + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    # Pad bits beyond the upper triangle must be zero.
    while k < nbytes * 6:
        byte = data[body + k // 6] - 63
        if byte >> (5 - k % 6) & 1:
            raise Graph6Error("nonzero padding bit", offset=body + k // 6)
        k += 1
    return from_edge_list(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode a graph with the minimal-length header."""
    n = g.n
    if n <= 62:
        header = [n + 63]
    elif n <= 258047:
        header = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        header = [126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    out = bytearray(header)
    acc = 0
    filled = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(acc + 63)
                acc = 0
                filled = 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    return out.decode("ascii")
