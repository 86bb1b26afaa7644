"""Immutable simple graphs on dense vertex labels 0..n-1.

Adjacency is stored as one Python int bitmask per vertex, which keeps the
packing searches branch-free on set operations. Graphs are value objects:
every operation returns a new Graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of a graph's vertex range, stored as a bitmask."""

    n: int
    mask: int

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "VertexSet":
        m = 0
        for v in members:
            if not 0 <= v < n:
                raise PreconditionError(f"vertex {v} outside range 0..{n - 1}")
            m |= 1 << v
        return cls(n, m)

    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & other.mask == 0


class Graph:
    """Undirected simple graph; vertices are 0..n-1, rows are bitmasks."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        if len(adj) != n:
            raise PreconditionError("adjacency row count must equal n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise PreconditionError(f"adjacency row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise PreconditionError(f"self loop at vertex {v}")
        for v, row in enumerate(adj):
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise PreconditionError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "_edges", sum(row.bit_count() for row in adj) // 2)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Graph is immutable")

    # -- accessors ---------------------------------------------------------

    def edge_count(self) -> int:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(row):
                yield (u, v)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_independent(self, mask: int) -> bool:
        for v in bits(mask):
            if self.adj[v] & mask:
                return False
        return True

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (self.adj[v] & mask) != mask ^ (1 << v):
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


# -- constructors ----------------------------------------------------------


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from (u, v) pairs; duplicates collapse, loops are errors."""
    if n < 0:
        raise PreconditionError("vertex count must be nonnegative")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
        if u == v:
            raise PreconditionError(f"self loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


# -- operations ------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.full_mask()
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Concatenate graphs; the i-th input keeps its labels shifted by the
    total size of the inputs before it."""
    adj: list[int] = []
    offset = 0
    for g in graphs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(offset, adj)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus all cross edges; g's vertices come first."""
    g_all = g.full_mask()
    h_all = h.full_mask() << g.n
    adj = [row | h_all for row in g.adj]
    adj.extend((row << g.n) | g_all for row in h.adj)
    return Graph(g.n + h.n, adj)


def induced_subgraph(g: Graph, vertices: VertexSet | Iterable[int]) -> Graph:
    """Subgraph induced by the given vertices, relabeled to 0..k-1 preserving
    relative order."""
    if isinstance(vertices, VertexSet):
        if vertices.n != g.n:
            raise PreconditionError("vertex set bound to a different graph size")
        keep = list(vertices.members())
    else:
        keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} outside range 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(keep)}
    adj = [0] * len(keep)
    for v in keep:
        for u in bits(g.adj[v]):
            if u in index:
                adj[index[v]] |= 1 << index[u]
    return Graph(len(keep), adj)


def cross_edge_count(g: Graph, a: VertexSet | Iterable[int], b: VertexSet | Iterable[int]) -> int:
    """Number of edges with one endpoint in a and the other in b.

    The two sets must be disjoint; overlapping sets would double-count.
    """
    am = a.mask if isinstance(a, VertexSet) else mask_of(a)
    bm = b.mask if isinstance(b, VertexSet) else mask_of(b)
    if am & ~g.full_mask() or bm & ~g.full_mask():
        raise PreconditionError("set contains vertices outside the graph")
    if am & bm:
        raise PreconditionError("cross_edge_count requires disjoint sets")
    return sum((g.adj[v] & bm).bit_count() for v in bits(am))


# -- structure helpers -----------------------------------------------------


def components(g: Graph) -> list[int]:
    """Connected component masks, ordered by smallest member."""
    out = []
    rem = g.full_mask()
    while rem:
        seed = rem & -rem
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            frontier = grow & rem & ~comp
            comp |= frontier
        out.append(comp)
        rem &= ~comp
    return out


def clique_component_sizes(g: Graph) -> list[int] | None:
    """If every component induces a complete graph, return the sorted
    (descending) size list; otherwise None. Singletons count as size 1."""
    sizes = []
    for comp in components(g):
        if not g.is_clique(comp):
            return None
        sizes.append(comp.bit_count())
    sizes.sort(reverse=True)
    return sizes


# -- edge-list text format -------------------------------------------------


def to_edge_list_text(g: Graph) -> str:
    """Human-friendly format: a leading vertex-count line, then one "u v"
    pair per line. '#' starts a comment."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse the edge-list format. The leading single-integer line is the
    vertex count; if absent, n is max endpoint + 1."""
    declared_n: int | None = None
    pairs: list[tuple[int, int]] = []
    saw_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1 and not saw_data:
            try:
                declared_n = int(tokens[0])
            except ValueError:
                raise PreconditionError(f"line {lineno}: expected an integer vertex count")
            saw_data = True
            continue
        if len(tokens) != 2:
            raise PreconditionError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise PreconditionError(f"line {lineno}: endpoints must be integers")
        if u < 0 or v < 0:
            raise PreconditionError(f"line {lineno}: endpoints must be nonnegative")
        pairs.append((u, v))
        saw_data = True
    if declared_n is None:
        declared_n = 1 + max((max(u, v) for u, v in pairs), default=-1)
    return from_edge_list(declared_n, pairs)
