"""Graphs, named graph families, stabilizer generators and graph-state expectations.

Vertices are numbered from 1 in every public function; internally vertex
``k`` is bit ``k - 1`` of an adjacency mask, matching the qubit convention of
:mod:`graphbell.pauli`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import GraphBellError, GraphParseError
from .pauli import MAX_QUBITS, PauliString


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[k]`` is the neighbor mask of vertex ``k + 1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise GraphBellError(f"vertex count {self.n} outside 1..{MAX_QUBITS}")
        if len(self.adj) != self.n:
            raise GraphBellError("adjacency list length differs from vertex count")
        full = (1 << self.n) - 1
        for k, a in enumerate(self.adj):
            if a & ~full:
                raise GraphBellError(f"vertex {k + 1} has neighbors beyond {self.n}")
            if a >> k & 1:
                raise GraphBellError(f"self-loop on vertex {k + 1}")
            for l in range(self.n):
                if (a >> l & 1) != (self.adj[l] >> k & 1):
                    raise GraphBellError(f"adjacency not symmetric for edge {k + 1}-{l + 1}")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for a, b in edges:
            if not (1 <= a <= n and 1 <= b <= n):
                raise GraphBellError(f"edge {a}-{b} outside 1..{n}")
            if a == b:
                raise GraphBellError(f"self-loop on vertex {a}")
            adj[a - 1] |= 1 << (b - 1)
            adj[b - 1] |= 1 << (a - 1)
        return cls(n, tuple(adj))

    def check_vertex(self, k: int) -> None:
        if not 1 <= k <= self.n:
            raise GraphBellError(f"vertex {k} outside 1..{self.n}")

    def neighbors(self, k: int) -> tuple[int, ...]:
        self.check_vertex(k)
        a = self.adj[k - 1]
        return tuple(l + 1 for l in range(self.n) if a >> l & 1)

    def degree(self, k: int) -> int:
        self.check_vertex(k)
        return bin(self.adj[k - 1]).count("1")

    def has_edge(self, a: int, b: int) -> bool:
        self.check_vertex(a)
        self.check_vertex(b)
        return bool(self.adj[a - 1] >> (b - 1) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(1, self.n + 1) for l in self.neighbors(k) if k < l]

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for k in range(self.n):
                if frontier >> k & 1:
                    nxt |= self.adj[k]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{a} {b}" for a, b in self.edges()]
        return "\n".join(lines) + "\n"


def _mask(vertices: Iterable[int], g: Graph) -> int:
    m = 0
    for v in vertices:
        g.check_vertex(v)
        m |= 1 << (v - 1)
    return m


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document.

    The first non-comment line holds the vertex count; each further
    non-empty line holds one edge as two 1-based vertex indices. Lines whose
    first non-blank character is ``#`` are comments. Repeated edges are
    accepted once.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise GraphParseError(f"non-integer field in {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise GraphParseError("first line must hold a vertex count >= 1", lineno)
            n = values[0]
            if n > MAX_QUBITS:
                raise GraphParseError(f"vertex count {n} exceeds {MAX_QUBITS}", lineno)
            continue
        if len(values) != 2:
            raise GraphParseError(f"expected two vertex indices, got {len(values)}", lineno)
        a, b = values
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphParseError(f"vertex index out of range 1..{n}", lineno)
        if a == b:
            raise GraphParseError(f"self-loop on vertex {a}", lineno)
        edges.append((a, b))
    if n is None:
        raise GraphParseError("empty graph document")
    return Graph.from_edges(n, edges)


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


FAMILIES = ("LC", "RC", "ST", "FC", "GRID")


def family(name: str, *params: int) -> Graph:
    """Named graph families.

    ``LC n`` path, ``RC n`` cycle (n >= 3), ``ST n`` star centered on vertex 1
    (n >= 2), ``FC n`` complete graph, ``GRID rows cols`` rectangular lattice
    with row-major numbering.
    """
    name = name.upper()
    if name == "GRID":
        if len(params) != 2:
            raise GraphBellError("GRID takes rows and cols")
        rows, cols = params
        if rows < 1 or cols < 1:
            raise GraphBellError("GRID needs rows, cols >= 1")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c + 1
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph.from_edges(rows * cols, edges)
    if len(params) != 1:
        raise GraphBellError(f"{name} takes a single vertex count")
    (n,) = params
    if name == "LC":
        if n < 1:
            raise GraphBellError("LC needs n >= 1")
        return Graph.from_edges(n, [(k, k + 1) for k in range(1, n)])
    if name == "RC":
        if n < 3:
            raise GraphBellError("RC needs n >= 3")
        return Graph.from_edges(n, [(k, k % n + 1) for k in range(1, n + 1)])
    if name == "ST":
        if n < 2:
            raise GraphBellError("ST needs n >= 2")
        return Graph.from_edges(n, [(1, k) for k in range(2, n + 1)])
    if name == "FC":
        if n < 1:
            raise GraphBellError("FC needs n >= 1")
        return Graph.from_edges(n, [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)])
    raise GraphBellError(f"unknown graph family {name!r}; expected one of {FAMILIES}")


def generator(g: Graph, k: int) -> PauliString:
    """X on vertex ``k`` and Z on each of its neighbors."""
    g.check_vertex(k)
    return PauliString(g.n, 1 << (k - 1), g.adj[k - 1])


def stabilizer_element(g: Graph, subset: Iterable[int]) -> PauliString:
    """Product of the generators of ``subset``, taken in ascending vertex order."""
    p = PauliString.identity(g.n)
    for k in sorted(set(subset)):
        p = p * generator(g, k)
    return p


def stabilizer_elements(g: Graph) -> Iterator[tuple[tuple[int, ...], PauliString]]:
    """All 2**n stabilizer elements, keyed by their generator subset."""
    for m in range(1 << g.n):
        subset = tuple(k + 1 for k in range(g.n) if m >> k & 1)
        yield subset, stabilizer_element(g, subset)


def is_independent_set(g: Graph, vertices: Iterable[int]) -> bool:
    m = _mask(vertices, g)
    return all(not (g.adj[k] & m) for k in range(g.n) if m >> k & 1)


def graph_state_expectation(g: Graph, p: PauliString) -> int:
    """Exact <G|p|G> for a Hermitian Pauli string: +1, -1 or 0.

    Each generator is the only one carrying X on its vertex, so the X
    support of ``p`` fixes the single stabilizer element that could match it.
    """
    if p.n != g.n:
        raise GraphBellError(f"string on {p.n} qubits, graph on {g.n} vertices")
    if not p.is_hermitian:
        raise GraphBellError(f"{p} is not Hermitian")
    subset = [k + 1 for k in range(g.n) if p.x_mask >> k & 1]
    s = stabilizer_element(g, subset)
    if s.z_mask != p.z_mask:
        return 0
    return 1 if s.phase == p.phase else -1
