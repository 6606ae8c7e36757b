"""Simple undirected graphs with dense 0..n-1 vertex ids, generators, and text I/O."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import EdgeListParseError

INFINITY = math.inf


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices {0..n-1}."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or not normalized")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        return Graph(n, frozenset(_norm_edge(u, v) for u, v in edges))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Open-neighborhood bitmasks, for brute-force subset loops."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def vertices(self) -> range:
        return range(self.n)


def parse_edge_list(text: str) -> Graph:
    """Parse "n m" header plus "u v" lines (0-indexed). Duplicate edges collapse."""
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise EdgeListParseError("line 1: missing 'n m' header")
    head = lines[0].split()
    if len(head) != 2:
        raise EdgeListParseError("line 1: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise EdgeListParseError("line 1: header must be two integers") from None
    if n < 0 or m < 0:
        raise EdgeListParseError("line 1: negative count in header")
    edges = set()
    seen = 0
    for idx, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"line {idx}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {idx}: non-integer endpoint") from None
        if u == v:
            raise EdgeListParseError(f"line {idx}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(f"line {idx}: endpoint out of range [0,{n})")
        edges.add(_norm_edge(u, v))
        seen += 1
    if seen != m:
        raise EdgeListParseError(f"header announces {m} edges, found {seen} edge lines")
    return Graph(n, frozenset(edges))


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines)


def parse_dimacs(text: str) -> Graph:
    """DIMACS reader: 'p edge n m' header, 'e u v' 1-indexed edge lines."""
    n = None
    edges = set()
    for idx, ln in enumerate(text.splitlines(), start=1):
        parts = ln.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise EdgeListParseError(f"line {idx}: bad problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise EdgeListParseError(f"line {idx}: edge before problem line")
            if len(parts) != 3:
                raise EdgeListParseError(f"line {idx}: expected 'e u v'")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u == v:
                raise EdgeListParseError(f"line {idx}: self-loop")
            if not (0 <= u < n and 0 <= v < n):
                raise EdgeListParseError(f"line {idx}: endpoint out of range")
            edges.add(_norm_edge(u, v))
        else:
            raise EdgeListParseError(f"line {idx}: unknown record '{parts[0]}'")
    if n is None:
        raise EdgeListParseError("missing problem line")
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# deterministic graph families


@dataclass(frozen=True)
class FamilySpec:
    """Deterministic generator spec; identical (spec, seed) gives identical graphs."""

    kind: str
    params: tuple[int, ...] = ()
    seed: int = 0
    parts: tuple["FamilySpec", ...] = field(default=())

    def __str__(self) -> str:
        if self.kind == "disjoint-union":
            return "+".join(str(p) for p in self.parts)
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


FAMILY_KINDS = (
    "grid",
    "path",
    "cycle",
    "star-of-paths",
    "grid-with-pendant-paths",
    "disjoint-union",
    "random-sparse",
)


def parse_family(text: str, seed: int = 0) -> FamilySpec:
    """Parse e.g. "grid:3,3", "star-of-paths:4,2", "grid:2,2+cycle:5"."""
    if "+" in text:
        parts = tuple(parse_family(p, seed) for p in text.split("+"))
        return FamilySpec("disjoint-union", (), seed, parts)
    kind, _, rest = text.partition(":")
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family kind '{kind}'")
    params = tuple(int(x) for x in rest.split(",")) if rest else ()
    return FamilySpec(kind, params, seed)


def _grid(a: int, b: int) -> Graph:
    if a <= 0 or b <= 0:
        raise ValueError("grid dimensions must be positive")
    edges = []
    vid = lambda i, j: i * b + j
    for i in range(a):
        for j in range(b):
            if j + 1 < b:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < a:
                edges.append((vid(i, j), vid(i + 1, j)))
    return Graph.from_edges(a * b, edges)


def _path(n: int) -> Graph:
    if n <= 0:
        raise ValueError("path length must be positive")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _star_of_paths(k: int, length: int) -> Graph:
    """Hub vertex 0 with k pendant paths of `length` edges each."""
    if k <= 0 or length <= 0:
        raise ValueError("star-of-paths parameters must be positive")
    edges = []
    nxt = 1
    for _ in range(k):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def _grid_with_pendant_paths(a: int, b: int, npaths: int, plen: int) -> Graph:
    """a x b grid with npaths pendant paths of plen edges, attached round-robin."""
    if npaths <= 0 or plen <= 0:
        raise ValueError("pendant path parameters must be positive")
    base = _grid(a, b)
    edges = list(base.edges)
    nxt = base.n
    for i in range(npaths):
        prev = i % base.n
        for _ in range(plen):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def _random_sparse(n: int, percent: int, seed: int) -> Graph:
    """Each pair independently with probability percent/100; not planarity-safe."""
    if n <= 0 or not (0 <= percent <= 100):
        raise ValueError("random-sparse needs n > 0 and percent in [0,100]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < percent / 100.0:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def disjoint_union(graphs: list[Graph]) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph.from_edges(off, edges)


def generate(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "grid":
        return _grid(*p)
    if kind == "path":
        return _path(*p)
    if kind == "cycle":
        return _cycle(*p)
    if kind == "star-of-paths":
        return _star_of_paths(*p)
    if kind == "grid-with-pendant-paths":
        return _grid_with_pendant_paths(*p)
    if kind == "random-sparse":
        return _random_sparse(p[0], p[1] if len(p) > 1 else 25, spec.seed)
    if kind == "disjoint-union":
        return disjoint_union([generate(s) for s in spec.parts])
    raise ValueError(f"unknown family kind '{kind}'")


# ---------------------------------------------------------------------------
# basic graph operations


def distances_from(g: Graph, sources) -> dict[int, float]:
    """Multi-source BFS hop distances; unreachable vertices map to INFINITY."""
    sources = set(sources)
    for s in sources:
        if not (0 <= s < g.n):
            raise ValueError(f"source {s} out of range")
    dist: dict[int, float] = {v: INFINITY for v in range(g.n)}
    frontier = list(sources)
    for s in frontier:
        dist[s] = 0
    d = 0
    while frontier:
        nxt = []
        d += 1
        for u in frontier:
            for w in g.adj[u]:
                if dist[w] == INFINITY:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def induced_subgraph(g: Graph, X) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on X with dense relabeling; returns (graph, old->new map)."""
    order = sorted(X)
    remap = {v: i for i, v in enumerate(order)}
    edges = [
        (remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap
    ]
    return Graph.from_edges(len(order), edges), remap


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def articulation_points(g: Graph) -> list[int]:
    """Cut vertices via iterative lowpoint DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    ap = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack = [(root, iter(g.adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = u
                    if u == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent[u]:
                    low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        ap.add(p)
        if root_children > 1:
            ap.add(root)
    return sorted(ap)
