"""Edge-list loading, normalization and CSR construction."""

from __future__ import annotations

import io
import os
import struct
from dataclasses import dataclass
from typing import BinaryIO, Union

import numpy as np

EDGE_MAGIC = b"TCEL"
CSR_MAGIC = b"TCSR"

# ids are stored as int32 internally
MAX_VERTEX_ID = np.iinfo(np.int32).max - 1

Source = Union[str, bytes, os.PathLike, BinaryIO]


class GraphFormatError(ValueError):
    """Raised for malformed or unsupported graph input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class EdgeList:
    """Directed edge tuples over the id range ``[0, vertex_count)``."""

    edges: np.ndarray  # shape (E, 2), int64
    vertex_count: int

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", edges)
        if len(edges) and (edges.min() < 0 or edges.max() >= self.vertex_count):
            raise GraphFormatError("edge endpoint outside [0, vertex_count)")

    def __len__(self):
        return len(self.edges)

    def as_set(self):
        return {(int(u), int(v)) for u, v in self.edges}


@dataclass(frozen=True, eq=False)
class CsrGraph:
    """Compressed sparse row graph with sorted, duplicate-free neighbor lists."""

    begin: np.ndarray
    adjacency: np.ndarray

    def __post_init__(self):
        begin = np.ascontiguousarray(self.begin, dtype=np.int64)
        adjacency = np.ascontiguousarray(self.adjacency, dtype=np.int32)
        begin.flags.writeable = False
        adjacency.flags.writeable = False
        object.__setattr__(self, "begin", begin)
        object.__setattr__(self, "adjacency", adjacency)

    @property
    def vertex_count(self) -> int:
        return len(self.begin) - 1

    @property
    def edge_count(self) -> int:
        return len(self.adjacency)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.begin)

    def neighbors(self, u: int) -> np.ndarray:
        return self.adjacency[self.begin[u]:self.begin[u + 1]]

    def edges(self) -> np.ndarray:
        """Re-emit the (u, v) pairs in CSR order."""
        src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees)
        return np.column_stack([src, self.adjacency.astype(np.int64)])

    def __eq__(self, other):
        if not isinstance(other, CsrGraph):
            return NotImplemented
        return (np.array_equal(self.begin, other.begin)
                and np.array_equal(self.adjacency, other.adjacency))

    def check(self):
        """Validate the structural invariants; raises ``GraphFormatError``."""
        b = self.begin
        if len(b) == 0 or b[0] != 0 or b[-1] != self.edge_count:
            raise GraphFormatError("begin array must start at 0 and end at edge count")
        if np.any(np.diff(b) < 0):
            raise GraphFormatError("begin array is not non-decreasing")
        if self.edge_count:
            adj = self.adjacency.astype(np.int64)
            if adj.min() < 0 or adj.max() >= self.vertex_count:
                raise GraphFormatError("neighbor id out of range")
            src = np.repeat(np.arange(self.vertex_count), self.degrees)
            same = src[1:] == src[:-1]
            if np.any(np.diff(adj)[same] <= 0):
                raise GraphFormatError("neighbor lists must be sorted and duplicate-free")


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read()
    return source.read()


def _parse_text(data: bytes) -> np.ndarray:
    lines = data.decode("ascii", errors="replace").splitlines()
    pairs = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise GraphFormatError(f"expected 2 fields, got {len(fields)}", line=lineno)
        try:
            u, v = int(fields[0], 10), int(fields[1], 10)
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {stripped!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", line=lineno)
        pairs.append((u, v))
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def _parse_text_fast(data: bytes) -> np.ndarray:
    """numpy's C parser for big inputs; falls back to the line scanner for diagnostics."""
    try:
        arr = np.loadtxt(io.BytesIO(data), dtype=np.int64, comments=["#", "%"], ndmin=2)
    except ValueError:
        return _parse_text(data)
    if arr.size == 0:
        return arr.reshape(-1, 2)
    if arr.shape[1] != 2 or arr.min() < 0:
        return _parse_text(data)
    return arr


def _parse_binary(data: bytes) -> np.ndarray:
    if data[:4] == EDGE_MAGIC:
        if len(data) < 12:
            raise GraphFormatError("truncated binary header")
        (count,) = struct.unpack_from("<Q", data, 4)
        payload = data[12:]
        if len(payload) != count * 16:
            raise GraphFormatError(
                f"binary header declares {count} pairs but payload holds {len(payload) / 16:g}")
    else:
        payload = data
        if len(payload) % 16:
            raise GraphFormatError("binary payload is not a whole number of u64 pairs")
    arr = np.frombuffer(payload, dtype="<u8").reshape(-1, 2)
    if arr.size and arr.max() > MAX_VERTEX_ID:
        raise GraphFormatError(f"vertex id {int(arr.max())} exceeds 32-bit internal limit")
    return arr.astype(np.int64)


def load_edge_list(source: Source, format: str = "txt") -> EdgeList:
    """Parse a raw edge list.

    ``format`` is ``"txt"`` (one whitespace-separated ``u v`` pair per line;
    lines starting with ``#`` or ``%`` are comments) or ``"bin"``
    (little-endian u64 pairs, optionally preceded by the ``TCEL`` header).
    Nothing is deduplicated here.
    """
    data = _read_bytes(source)
    if format in ("txt", "text", "text-pairs"):
        arr = _parse_text_fast(data) if len(data) > (1 << 20) else _parse_text(data)
    elif format in ("bin", "binary", "binary-pairs"):
        arr = _parse_binary(data)
    else:
        raise GraphFormatError(f"unknown edge-list format {format!r}")
    if len(arr) == 0:
        raise GraphFormatError("empty edge list")
    top = int(arr.max())
    if top > MAX_VERTEX_ID:
        raise GraphFormatError(f"vertex id {top} exceeds 32-bit internal limit")
    return EdgeList(arr, top + 1)


def write_edge_list(edges: EdgeList, target, format: str = "bin") -> None:
    """Write an edge list as text pairs or as the ``TCEL`` binary format."""
    arr = np.asarray(edges.edges, dtype=np.int64)
    if format == "txt":
        with open(target, "w") as fh:
            for u, v in arr:
                fh.write(f"{u} {v}\n")
        return
    with open(target, "wb") as fh:
        fh.write(EDGE_MAGIC)
        fh.write(struct.pack("<Q", len(arr)))
        fh.write(arr.astype("<u8").tobytes())


def normalize(raw: EdgeList) -> tuple[EdgeList, np.ndarray]:
    """Drop self-loops and duplicates, symmetrize, and compact away orphans.

    Returns the normalized edge list together with an ``old -> new`` id map
    (``-1`` for removed vertices).  Compaction keeps the relative order of the
    surviving ids.
    """
    e = raw.edges
    e = e[e[:, 0] != e[:, 1]]
    both = np.concatenate([e, e[:, ::-1]])
    if len(both):
        key = (both[:, 0].astype(np.uint64) << np.uint64(32)) | both[:, 1].astype(np.uint64)
        key = np.unique(key)
        both = np.column_stack([(key >> np.uint64(32)).astype(np.int64),
                                (key & np.uint64(0xFFFFFFFF)).astype(np.int64)])
    id_map = np.full(raw.vertex_count, -1, dtype=np.int64)
    present = np.unique(both[:, 0]) if len(both) else np.empty(0, dtype=np.int64)
    id_map[present] = np.arange(len(present))
    if len(both):
        both = id_map[both]
    return EdgeList(both, len(present)), id_map


def build_csr(normalized: EdgeList) -> CsrGraph:
    """Build a CSR graph; neighbor lists come out sorted ascending."""
    e = normalized.edges
    n = normalized.vertex_count
    order = np.lexsort((e[:, 1], e[:, 0]))
    e = e[order]
    counts = np.bincount(e[:, 0], minlength=n) if len(e) else np.zeros(n, dtype=np.int64)
    begin = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=begin[1:])
    return CsrGraph(begin, e[:, 1])


def csr_from_lists(lists) -> CsrGraph:
    """Convenience constructor from a list of neighbor lists (sorted on the way in)."""
    lens = [len(x) for x in lists]
    begin = np.zeros(len(lists) + 1, dtype=np.int64)
    np.cumsum(lens, out=begin[1:])
    adj = np.concatenate([np.sort(np.asarray(x, dtype=np.int64)) for x in lists]) \
        if sum(lens) else np.empty(0, dtype=np.int64)
    return CsrGraph(begin, adj)


def load_graph(source: Source, format: str = "txt") -> tuple[CsrGraph, np.ndarray]:
    edges, id_map = normalize(load_edge_list(source, format))
    return build_csr(edges), id_map


def write_csr(g: CsrGraph, path) -> None:
    """Binary CSR: ``TCSR``, u64 vertex count, u64 edge count, u64 begin[], u32 adjacency[]."""
    with open(path, "wb") as fh:
        fh.write(CSR_MAGIC)
        fh.write(struct.pack("<QQ", g.vertex_count, g.edge_count))
        fh.write(g.begin.astype("<u8").tobytes())
        fh.write(g.adjacency.astype("<u4").tobytes())


def read_csr(path) -> CsrGraph:
    data = _read_bytes(path)
    if data[:4] != CSR_MAGIC:
        raise GraphFormatError("missing TCSR magic")
    nv, ne = struct.unpack_from("<QQ", data, 4)
    off = 20
    begin = np.frombuffer(data, dtype="<u8", count=nv + 1, offset=off)
    off += 8 * (nv + 1)
    adj = np.frombuffer(data, dtype="<u4", count=ne, offset=off)
    if off + 4 * ne != len(data):
        raise GraphFormatError("trailing or missing bytes in CSR file")
    return CsrGraph(begin.astype(np.int64), adj.astype(np.int32))
