"""Simple undirected graphs stored as per-vertex adjacency bit rows.

Vertex sets are plain ``int`` bitmasks over the vertex indices of a fixed
ground graph; bit ``v`` set means vertex ``v`` is a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import CapExceeded, VertexError

MAX_VERTICES = 62
HOMOGENEOUS_CAP = 16


def bits(mask: int) -> list[int]:
    """Vertices of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbourhood bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise VertexError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise VertexError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise VertexError(f"row {v} has bits beyond n={self.n}")
            if row >> v & 1:
                raise VertexError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise VertexError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise VertexError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexError(f"vertex {v} outside 0..{self.n - 1}")

    def check_set(self, s: int) -> None:
        if s < 0 or s & ~self.full:
            raise VertexError(f"vertex set {s:#x} escapes a graph on {self.n} vertices")


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise VertexError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    """Return ``g[s]`` and the order-preserving index map.

    The map is a tuple ``m`` with ``m[i]`` the original vertex behind new vertex ``i``.
    """
    g.check_set(s)
    verts = bits(s)
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in iter_bits(g.adj[v] & s):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(verts), tuple(rows)), tuple(verts)


def lift_mask(mask: int, index_map: tuple[int, ...]) -> int:
    """Map a mask over an induced subgraph back to the ground graph."""
    out = 0
    for i in iter_bits(mask):
        out |= 1 << index_map[i]
    return out


def neighbors(g: Graph, v: int) -> int:
    g.check_vertex(v)
    return g.adj[v]


def set_neighbors(g: Graph, x: int) -> int:
    """N(X): vertices outside ``x`` with a neighbour inside it."""
    g.check_set(x)
    out = 0
    for v in iter_bits(x):
        out |= g.adj[v]
    return out & ~x


def is_complete_to(g: Graph, x: int, y: int) -> bool:
    g.check_set(x)
    g.check_set(y)
    return all(g.adj[v] & y == y for v in iter_bits(x))


def is_anticomplete_to(g: Graph, x: int, y: int) -> bool:
    g.check_set(x)
    g.check_set(y)
    return all(not g.adj[v] & y for v in iter_bits(x))


class AdjacencyReport(NamedTuple):
    neighbors_of_vertex: int
    neighbors_of_set: int
    complete: bool
    anticomplete: bool


def adjacency_queries(g: Graph, v: int, x: int, y: int) -> AdjacencyReport:
    return AdjacencyReport(
        neighbors(g, v), set_neighbors(g, x), is_complete_to(g, x, y), is_anticomplete_to(g, x, y)
    )


@dataclass(frozen=True)
class SubstitutionRecord:
    """Where the pieces of a substitution ended up.

    ``carry`` maps each surviving original vertex to its index in the result;
    ``inserted`` is the bitmask of the copy of the substituted graph.
    """

    source_vertex: int
    inserted: int
    carry: dict[int, int] = field(hash=False)

    def inverse(self) -> dict[int, int]:
        return {new: old for old, new in self.carry.items()}


def substitute(g: Graph, x: int, h2: Graph) -> tuple[Graph, SubstitutionRecord]:
    """Replace vertex ``x`` of ``g`` by a copy of ``h2``.

    Survivors keep their relative order and come first; the copy of ``h2``
    is appended in its own vertex order and joined to exactly N(x).
    """
    g.check_vertex(x)
    if h2.n < 1:
        raise VertexError("cannot substitute an empty graph")
    n_out = g.n - 1 + h2.n
    if n_out > MAX_VERTICES:
        raise VertexError(f"substitution would have {n_out} vertices")
    survivors = [v for v in range(g.n) if v != x]
    carry = {v: i for i, v in enumerate(survivors)}
    offset = len(survivors)
    inserted = ((1 << h2.n) - 1) << offset
    attach = 0
    for u in iter_bits(g.adj[x]):
        attach |= 1 << carry[u]
    rows = []
    for v in survivors:
        row = 0
        for u in iter_bits(g.adj[v]):
            if u != x:
                row |= 1 << carry[u]
        if g.adj[v] >> x & 1:
            row |= inserted
        rows.append(row)
    for row in h2.adj:
        rows.append(row << offset | attach)
    return Graph(n_out, tuple(rows)), SubstitutionRecord(x, inserted, carry)


def is_homogeneous(g: Graph, x: int) -> bool:
    size = popcount(x)
    if not 1 < size < g.n:
        return False
    for v in iter_bits(g.full & ~x):
        seen = g.adj[v] & x
        if seen and seen != x:
            return False
    return True


def find_homogeneous_sets(g: Graph, cap: int = HOMOGENEOUS_CAP) -> list[int]:
    """Every homogeneous set of ``g``, ordered by size and then by mask value."""
    if g.n > cap:
        raise CapExceeded("find_homogeneous_sets", g.n, cap)
    by_size: dict[int, list[int]] = {}
    for x in range(1, 1 << g.n):
        if is_homogeneous(g, x):
            by_size.setdefault(popcount(x), []).append(x)
    return [x for size in sorted(by_size) for x in by_size[size]]
