"""graph6 codec, bit-exact.

One record per line: an optional ``>>graph6<<`` header, a vertex-count field
(one byte ``63+n`` for n <= 62, or the 4-byte / 8-byte extended forms), then
the upper triangle of the adjacency matrix in column order
(0,1),(0,2),(1,2),(0,3),... packed into 6-bit groups, each stored as
``63 + group``, zero-padded to a byte boundary.

sparse6 and digraph6 records are rejected with a distinct error.  Decoding
accepts the extended vertex-count forms up to the package vertex cap; encoding
emits the shortest form.
"""

from __future__ import annotations

from .errors import Graph6Error, UnsupportedFormatError
from .graphs import MAX_VERTICES, Graph

_HEADER = b">>graph6<<"


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header length), validating byte ranges."""
    if not data:
        raise Graph6Error("empty record", 0)
    c = data[0]
    if c == 58:  # ':'
        raise UnsupportedFormatError("sparse6 record (':' prefix) is not graph6", 0)
    if c == 38:  # '&'
        raise UnsupportedFormatError("digraph6 record ('&' prefix) is not graph6", 0)
    if not 63 <= c <= 126:
        raise Graph6Error(f"invalid length byte {c}", 0)
    if c < 126:
        return c - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raw, width, start = data[2:8], 6, 2
    else:
        raw, width, start = data[1:4], 3, 1
    if len(raw) < width:
        raise Graph6Error("record truncated inside extended length field", len(data))
    n = 0
    for i, byte in enumerate(raw):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid length byte {byte}", start + i)
        n = (n << 6) | (byte - 63)
    return n, start + width


def parse_graph6(record: bytes | str) -> Graph:
    """Decode one graph6 record (header and trailing newline tolerated)."""
    if isinstance(record, str):
        data = record.encode("ascii")
    else:
        data = bytes(record)
    data = data.strip(b"\r\n")
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if data.startswith(b">>"):
        raise UnsupportedFormatError("unsupported format header", 0)
    n, pos = _decode_n(data)
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds cap {MAX_VERTICES}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error(
            f"record truncated: need {nbytes} body bytes, found {len(body)}",
            len(data),
        )
    if len(body) > nbytes:
        raise Graph6Error("trailing data after graph6 body", pos + nbytes)

    adj = [0] * n
    bit = 0
    col, row = 1, 0
    for i, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid body byte {byte}", pos + i)
        group = byte - 63
        for k in range(5, -1, -1):
            if bit >= nbits:
                if (group >> k) & 1:
                    raise Graph6Error("nonzero padding bits", pos + i)
                continue
            if (group >> k) & 1:
                adj[row] |= 1 << col
                adj[col] |= 1 << row
            bit += 1
            row += 1
            if row == col:
                col += 1
                row = 0
    return Graph.from_adjacency(adj)


def to_graph6(g: Graph) -> bytes:
    """Encode a graph as one graph6 record (no trailing newline)."""
    n = g.n
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds cap {MAX_VERTICES}", 0)
    if n <= 62:
        head = bytes([63 + n])
    else:
        head = bytes([126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    out = bytearray(head)
    group = 0
    filled = 0
    for col in range(1, n):
        column = g.adj[col]
        for row in range(col):
            group = (group << 1) | ((column >> row) & 1)
            filled += 1
            if filled == 6:
                out.append(63 + group)
                group = 0
                filled = 0
    if filled:
        out.append(63 + (group << (6 - filled)))
    return bytes(out)
