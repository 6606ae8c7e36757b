"""Boundaried graphs: gluing, splitting at a boundary, canonization, enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CanonizationCapExceeded, EnumerationBudgetExceeded
from .graph import Graph, induced_subgraph

CANONIZATION_CAP = 10


@dataclass(frozen=True)
class BoundariedGraph:
    """Graph with an ordered, injectively labeled boundary."""

    graph: Graph
    boundary: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.boundary) != len(self.labels):
            raise ValueError("boundary and labels differ in length")
        if len(set(self.boundary)) != len(self.boundary):
            raise ValueError("boundary vertices must be distinct")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be injective")
        for v in self.boundary:
            if not (0 <= v < self.graph.n):
                raise ValueError(f"boundary vertex {v} not in graph")
        for l in self.labels:
            if l <= 0:
                raise ValueError("labels must be positive")

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    def vertex_of_label(self, label: int) -> int:
        return self.boundary[self.labels.index(label)]

    def label_of(self) -> dict[int, int]:
        return dict(zip(self.boundary, self.labels))

    def interior(self) -> list[int]:
        b = set(self.boundary)
        return [v for v in range(self.graph.n) if v not in b]

    def boundary_subgraph(self) -> Graph:
        """Boundary-induced graph with vertex i-1 carrying label i's role.

        Vertices are ordered by ascending label, so equality of these graphs
        means equality of boundary adjacency label-for-label.
        """
        order = [v for _, v in sorted(zip(self.labels, self.boundary))]
        pos = {v: i for i, v in enumerate(order)}
        edges = [
            (pos[u], pos[v])
            for u, v in self.graph.edges
            if u in pos and v in pos
        ]
        return Graph.from_edges(len(order), edges)


@dataclass(frozen=True)
class GlueResult:
    graph: Graph
    heir1: dict[int, int]
    heir2: dict[int, int]


def glue(g1: BoundariedGraph, g2: BoundariedGraph) -> GlueResult:
    """Identify equally-labeled boundary vertices; edges are the union."""
    shared = g1.label_set & g2.label_set
    heir1 = {v: v for v in range(g1.graph.n)}
    heir2 = {}
    lab2 = g2.label_of()
    nxt = g1.graph.n
    for v in range(g2.graph.n):
        lbl = lab2.get(v)
        if lbl in shared:
            heir2[v] = g1.vertex_of_label(lbl)
        else:
            heir2[v] = nxt
            nxt += 1
    edges = set(g1.graph.edges)
    for u, v in g2.graph.edges:
        a, b = heir2[u], heir2[v]
        edges.add((a, b) if a < b else (b, a))
    return GlueResult(Graph(nxt, frozenset(edges)), heir1, heir2)


@dataclass(frozen=True)
class SplitResult:
    g_x: BoundariedGraph
    g_r: BoundariedGraph
    to_x: dict[int, int]  # host vertex -> vertex of g_x
    to_r: dict[int, int]


def boundary_of(g: Graph, S) -> frozenset[int]:
    """Vertices of S with at least one neighbor outside S."""
    S = set(S)
    for v in S:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    return frozenset(v for v in S if g.adj[v] - S)


def split(g: Graph, X) -> SplitResult:
    """Cut g at the boundary of X into two boundaried graphs that glue back to g.

    Both sides carry boundary labels 1..|bd(X)| assigned in ascending host
    vertex id order.
    """
    X = set(X)
    bd = sorted(boundary_of(g, X))
    labels = tuple(range(1, len(bd) + 1))
    gx, map_x = induced_subgraph(g, X)
    rest = (set(range(g.n)) - X) | set(bd)
    gr, map_r = induced_subgraph(g, rest)
    bg_x = BoundariedGraph(gx, tuple(map_x[v] for v in bd), labels)
    bg_r = BoundariedGraph(gr, tuple(map_r[v] for v in bd), labels)
    return SplitResult(bg_x, bg_r, map_x, map_r)


# ---------------------------------------------------------------------------
# canonization and enumeration


def canonical_code(b: BoundariedGraph, cap: int = CANONIZATION_CAP) -> bytes:
    """Code invariant under isomorphisms fixing every boundary label.

    Brute force: boundary vertices are pinned in label order, interior
    vertices range over all permutations; the minimum adjacency bit string
    wins.
    """
    n = b.graph.n
    if n > cap:
        raise CanonizationCapExceeded(f"{n} vertices exceed canonization cap {cap}")
    fixed = [v for _, v in sorted(zip(b.labels, b.boundary))]
    free = b.interior()
    best = None
    for perm in itertools.permutations(free):
        order = fixed + list(perm)
        bits = 0
        for i in range(n):
            for j in range(i + 1, n):
                bits <<= 1
                if b.graph.has_edge(order[i], order[j]):
                    bits |= 1
        if best is None or bits < best:
            best = bits
    header = f"{n}|{','.join(map(str, sorted(b.labels)))}|".encode()
    nbytes = (n * (n - 1) // 2 + 7) // 8
    return header + (best or 0).to_bytes(max(nbytes, 1), "big")


def enumerate_boundaried(
    max_vertices: int,
    label_count: int,
    fixed_boundary_subgraph: Graph | None = None,
    budget: int | None = None,
):
    """One representative per label-fixing isomorphism class, smallest first.

    Yields boundaried graphs with at most max_vertices vertices whose boundary
    is vertices 0..label_count-1 labeled 1..label_count. When
    fixed_boundary_subgraph is given (vertex i-1 standing for label i), only
    graphs with exactly that boundary-induced subgraph are produced. The
    budget bounds the number of raw candidates examined, not just yields.
    """
    if not (max_vertices >= label_count >= 0):
        raise ValueError("need max_vertices >= label_count >= 0")
    if fixed_boundary_subgraph is not None and fixed_boundary_subgraph.n != label_count:
        raise ValueError("fixed boundary subgraph must have label_count vertices")
    examined = 0
    boundary = tuple(range(label_count))
    labels = tuple(range(1, label_count + 1))
    start = label_count if label_count > 0 else 0
    for n in range(start, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if fixed_boundary_subgraph is not None:
            pinned = set(fixed_boundary_subgraph.edges)
            free = [
                p for p in pairs if not (p[0] < label_count and p[1] < label_count)
            ]
            base = [p for p in pairs if p[0] < label_count and p[1] < label_count and p in pinned]
        else:
            free = pairs
            base = []
        seen = set()
        for bits in range(1 << len(free)):
            if budget is not None and examined >= budget:
                raise EnumerationBudgetExceeded(
                    f"enumeration exceeded budget of {budget} candidates"
                )
            examined += 1
            edges = list(base)
            for i, p in enumerate(free):
                if bits >> i & 1:
                    edges.append(p)
            bg = BoundariedGraph(Graph.from_edges(n, edges), boundary, labels)
            code = canonical_code(bg, cap=max(CANONIZATION_CAP, max_vertices))
            if code in seen:
                continue
            seen.add(code)
            yield bg
