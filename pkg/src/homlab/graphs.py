"""Finite undirected graphs, loops allowed, at most one edge per pair.

A ``Graph`` is immutable: a vertex count and a frozenset of edges
``(u, v)`` with ``u <= v``; ``u == v`` encodes a loop.  Loops are part of
the class so that quotients by vertex partitions stay inside it.  The
empty graph (``vertex_count == 0``) is a valid object and is the unit
for disjoint union.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError


def _normalize_edge(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset

    def __post_init__(self):
        if self.vertex_count < 0:
            raise FormatError(f"negative vertex count {self.vertex_count}")
        for e in self.edges:
            u, v = e
            if not (0 <= u <= v < self.vertex_count):
                raise FormatError(
                    f"edge {e} out of range for {self.vertex_count} vertices"
                )

    @cached_property
    def adjacency_masks(self):
        """Per-vertex bitmask of neighbours; a loop makes v adjacent to itself."""
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def loop_mask(self):
        m = 0
        for u, v in self.edges:
            if u == v:
                m |= 1 << u
        return m

    @cached_property
    def degree_sequence(self):
        """Sorted degrees; a loop contributes 2 to its vertex."""
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(sorted(deg))

    @cached_property
    def sorted_edges(self):
        return tuple(sorted(self.edges))

    def has_edge(self, u, v):
        return _normalize_edge(u, v) in self.edges

    def has_loop(self):
        return self.loop_mask != 0

    def loop_count(self):
        return sum(1 for u, v in self.edges if u == v)

    def nonloop_edge_count(self):
        return len(self.edges) - self.loop_count()

    def __repr__(self):
        return f"Graph({self.vertex_count}, {sorted(self.edges)})"


def build_graph(vertex_count, edge_list) -> Graph:
    """Validated constructor; deduplicates edges, normalizes endpoint order."""
    edges = set()
    for e in edge_list:
        u, v = tuple(e)
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise FormatError(f"edge {tuple(e)} out of range for {vertex_count} vertices")
        edges.add(_normalize_edge(u, v))
    return Graph(vertex_count, frozenset(edges))


EMPTY_GRAPH = Graph(0, frozenset())


def complete_graph(k, loops=0) -> Graph:
    """K_k with an optional loop at every vertex.

    Only ``loops`` in {0, 1} is representable: a second loop on a vertex
    would need a multigraph, which is outside this class.
    """
    if k < 0:
        raise FormatError("vertex count must be non-negative")
    if loops not in (0, 1):
        raise FormatError("loops must be 0 or 1 (multigraphs unsupported)")
    edges = {(u, v) for u in range(k) for v in range(u + 1, k)}
    if loops:
        edges |= {(v, v) for v in range(k)}
    return Graph(k, frozenset(edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Coproduct: g2's vertices are shifted past g1's."""
    off = g1.vertex_count
    edges = set(g1.edges)
    edges.update((u + off, v + off) for u, v in g2.edges)
    return Graph(off + g2.vertex_count, frozenset(edges))


def tensor_product(g1: Graph, g2: Graph) -> Graph:
    """Categorical product: (u,a)~(v,b) iff u~v in g1 and a~b in g2.

    Vertex (u, a) gets index u * |V(g2)| + a.  Loops participate: a loop
    makes a vertex adjacent to itself, so G x (looped point) = G.
    """
    n2 = g2.vertex_count
    edges = set()
    for u, v in g1.edges:
        for a, b in g2.edges:
            edges.add(_normalize_edge(u * n2 + a, v * n2 + b))
            edges.add(_normalize_edge(u * n2 + b, v * n2 + a))
    return Graph(g1.vertex_count * n2, frozenset(edges))


def coproduct_power(g: Graph, n: int) -> Graph:
    out = EMPTY_GRAPH
    for _ in range(n):
        out = disjoint_union(out, g)
    return out


def product_power(g: Graph, n: int) -> Graph:
    out = complete_graph(1, loops=1)  # terminal object
    for _ in range(n):
        out = tensor_product(out, g)
    return out


def subgraph(g: Graph, vertices, edges=None) -> Graph:
    """The embedded subgraph on ``vertices`` (sorted), relabelled to 0..k-1.

    With ``edges=None`` takes every edge of g inside the vertex set;
    otherwise only the given subset (which must lie inside it).
    """
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    if edges is None:
        edges = [e for e in g.edges if e[0] in pos and e[1] in pos]
    relabelled = set()
    for u, v in edges:
        if u not in pos or v not in pos:
            raise FormatError(f"edge {(u, v)} leaves the vertex set")
        relabelled.add(_normalize_edge(pos[u], pos[v]))
    return Graph(len(vs), frozenset(relabelled))


def quotient_graph(g: Graph, block_of) -> Graph:
    """Quotient by a vertex partition given as a block index per vertex.

    Edges are the images of edges: an edge inside a block becomes a loop.
    """
    k = max(block_of) + 1 if block_of else 0
    edges = {_normalize_edge(block_of[u], block_of[v]) for u, v in g.edges}
    return Graph(k, frozenset(edges))


def connected_components(g: Graph):
    """Vertex sets of connected components, each sorted, ordered by minimum."""
    seen = [False] * g.vertex_count
    comps = []
    masks = g.adjacency_masks
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            m = masks[v]
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


# --- text format ------------------------------------------------------------
#
# line 1: "graph <n>"; every following non-empty line "u v" (v v = loop);
# "#" starts a comment.


def parse_graph(text: str) -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "graph":
        raise FormatError(f"expected 'graph <n>' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise FormatError(f"bad vertex count {head[1]!r}") from None
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v' edge line, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer endpoint in {line!r}") from None
        edges.append((u, v))
    return build_graph(n, edges)


def graph_to_text(g: Graph) -> str:
    lines = [f"graph {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"
