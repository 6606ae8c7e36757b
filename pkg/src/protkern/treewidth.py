"""Exact treewidth decisions with certificates, and nice tree decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TooLargeForExactTreewidth
from .graph import Graph

EXACT_TW_VERTEX_CAP = 32

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of bags over `graph`; parent[i] is None exactly for the root."""

    graph: Graph
    parent: tuple
    bags: tuple

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    @property
    def root(self) -> int:
        for i, p in enumerate(self.parent):
            if p is None:
                return i
        raise ValueError("decomposition has no root")

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(i)
        return ch


@dataclass(frozen=True)
class NiceTreeDecomposition(TreeDecomposition):
    """Binary decomposition with leaf/introduce/forget/join node kinds."""

    kinds: tuple = ()


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        return -1
    return max(len(b) for b in td.bags) - 1


def validate(td: TreeDecomposition) -> list[str]:
    """Empty list iff td is a valid (and, for nice form, well-kinded) decomposition."""
    g = td.graph
    out = []
    n_nodes = len(td.bags)
    if len(td.parent) != n_nodes:
        return ["parent/bag arrays differ in length"]
    roots = [i for i, p in enumerate(td.parent) if p is None]
    if len(roots) != 1:
        out.append(f"expected exactly one root, found {len(roots)}")
    for i, p in enumerate(td.parent):
        if p is not None and not (0 <= p < n_nodes):
            out.append(f"node {i} has out-of-range parent {p}")
    # acyclicity via walking to the root
    for i in range(n_nodes):
        seen = set()
        j = i
        while j is not None:
            if j in seen:
                out.append(f"cycle in parent links through node {i}")
                return out
            seen.add(j)
            j = td.parent[j]
    for b in td.bags:
        for v in b:
            if not (0 <= v < g.n):
                out.append(f"bag vertex {v} outside the host graph")
    # every vertex occurs, in a connected set of nodes
    occ: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, b in enumerate(td.bags):
        for v in b:
            occ[v].append(i)
    ch = td.children()
    for v in range(g.n):
        nodes = occ[v]
        if not nodes:
            out.append(f"vertex {v} appears in no bag")
            continue
        start = nodes[0]
        nodeset = set(nodes)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            nbrs = list(ch[u])
            if td.parent[u] is not None:
                nbrs.append(td.parent[u])
            for w in nbrs:
                if w in nodeset and w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != nodeset:
            out.append(f"occurrences of vertex {v} are disconnected")
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags):
            out.append(f"edge ({u},{v}) not contained in any bag")
    if isinstance(td, NiceTreeDecomposition):
        out.extend(_validate_nice(td, ch))
    return out


def _validate_nice(td: NiceTreeDecomposition, ch: list[list[int]]) -> list[str]:
    out = []
    if len(td.kinds) != len(td.bags):
        return ["kinds/bag arrays differ in length"]
    for i, kind in enumerate(td.kinds):
        kids = ch[i]
        bag = td.bags[i]
        if kind == LEAF:
            if kids:
                out.append(f"leaf node {i} has children")
            if len(bag) > 1:
                out.append(f"leaf node {i} has bag of size {len(bag)}")
        elif kind == INTRODUCE:
            if len(kids) != 1:
                out.append(f"introduce node {i} must have one child")
            elif not (td.bags[kids[0]] < bag and len(bag - td.bags[kids[0]]) == 1):
                out.append(f"introduce node {i} does not add exactly one vertex")
        elif kind == FORGET:
            if len(kids) != 1:
                out.append(f"forget node {i} must have one child")
            elif not (bag < td.bags[kids[0]] and len(td.bags[kids[0]] - bag) == 1):
                out.append(f"forget node {i} does not drop exactly one vertex")
        elif kind == JOIN:
            if len(kids) != 2:
                out.append(f"join node {i} must have two children")
            elif not (td.bags[kids[0]] == td.bags[kids[1]] == bag):
                out.append(f"join node {i} children bags differ from its own")
        else:
            out.append(f"node {i} has unknown kind '{kind}'")
    return out


# ---------------------------------------------------------------------------
# exact treewidth decision


def _degeneracy(adj: dict[int, set[int]]) -> int:
    adj = {v: set(ns) for v, ns in adj.items()}
    best = 0
    while adj:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        for w in adj[v]:
            adj[w].discard(v)
        del adj[v]
    return best


def _eliminate(adj: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    nbrs = adj[v]
    out = {u: set(ns) for u, ns in adj.items() if u != v}
    for u in nbrs:
        out[u].discard(v)
        out[u] |= nbrs - {u}
        out[u].discard(u)
    return out


def decide_tw_leq(g: Graph, t: int, vertex_cap: int = EXACT_TW_VERTEX_CAP):
    """Width-<=t decomposition of g, or None if tw(g) > t.

    Branch and bound over elimination orders, memoized on the eliminated set
    (the fill graph depends only on the set, not the order).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if g.n > vertex_cap:
        raise TooLargeForExactTreewidth(
            f"{g.n} vertices exceed the exact-treewidth cap of {vertex_cap}"
        )
    if g.n == 0:
        return TreeDecomposition(g, (None,), (frozenset(),))
    adj0 = {v: set(g.adj[v]) for v in range(g.n)}
    if _degeneracy(adj0) > t:
        return None

    failed: set[frozenset[int]] = set()

    def search(adj: dict[int, set[int]], order: list[int]) -> bool:
        if len(adj) <= t + 1:
            return True
        key = frozenset(adj)
        if key in failed:
            return False
        cands = [v for v in adj if len(adj[v]) <= t]
        # eliminating a simplicial vertex of degree <= t is always safe
        for v in cands:
            ns = adj[v]
            if all(w in adj[u] for u in ns for w in ns if u < w):
                order.append(v)
                if search(_eliminate(adj, v), order):
                    return True
                order.pop()
                failed.add(key)
                return False
        cands.sort(key=lambda v: (len(adj[v]), v))
        for v in cands:
            order.append(v)
            if search(_eliminate(adj, v), order):
                return True
            order.pop()
        failed.add(key)
        return False

    order: list[int] = []
    if not search(adj0, order):
        return None
    return _decomposition_from_order(g, order)


def _decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Bags from the elimination fill graph; the residual clique becomes the root."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    bags = []
    elim_bags: dict[int, int] = {}
    elim_index: dict[int, int] = {}
    for i, v in enumerate(order):
        bags.append(frozenset(adj[v] | {v}))
        elim_bags[v] = len(bags) - 1
        elim_index[v] = i
        adj = _eliminate(adj, v)
    root_bag = frozenset(adj)
    bags.append(root_bag)
    root = len(bags) - 1
    parent: list = [None] * len(bags)
    for v in order:
        node = elim_bags[v]
        later = [w for w in bags[node] if w != v and w in elim_index]
        if later:
            w = min(later, key=lambda u: elim_index[u])
            parent[node] = elim_bags[w]
        else:
            parent[node] = root
    parent[root] = None
    return TreeDecomposition(g, tuple(parent), tuple(bags))


# ---------------------------------------------------------------------------
# nice form


class _NiceBuilder:
    def __init__(self, graph: Graph):
        self.graph = graph
        self.bags: list[frozenset[int]] = []
        self.kinds: list[str] = []
        self.parent: list = []

    def add(self, bag: frozenset[int], kind: str, children: list[int]) -> int:
        node = len(self.bags)
        self.bags.append(bag)
        self.kinds.append(kind)
        self.parent.append(None)
        for c in children:
            self.parent[c] = node
        return node

    def leaf_chain(self, bag: frozenset[int]) -> int:
        """Leaf plus introduce chain building up to `bag`."""
        order = sorted(bag)
        if not order:
            return self.add(frozenset(), LEAF, [])
        node = self.add(frozenset(order[:1]), LEAF, [])
        for i in range(1, len(order)):
            node = self.add(frozenset(order[: i + 1]), INTRODUCE, [node])
        return node

    def transition(self, node: int, target: frozenset[int]) -> int:
        """Forget/introduce chain from the bag at `node` up to `target`."""
        cur = self.bags[node]
        for v in sorted(cur - target):
            cur = cur - {v}
            node = self.add(cur, FORGET, [node])
        for v in sorted(target - cur):
            cur = cur | {v}
            node = self.add(cur, INTRODUCE, [node])
        return node


def make_nice(td: TreeDecomposition, root: int | None = None) -> NiceTreeDecomposition:
    """Width-preserving nice form of td, re-rooted at `root`."""
    bad = validate(td)
    if bad:
        raise ValueError("invalid tree decomposition: " + "; ".join(bad))
    if root is None:
        root = td.root
    # re-orient parent links toward the chosen root
    ch: list[list[int]] = [[] for _ in td.bags]
    undirected: list[set[int]] = [set() for _ in td.bags]
    for i, p in enumerate(td.parent):
        if p is not None:
            undirected[i].add(p)
            undirected[p].add(i)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in undirected[u]:
            if w not in seen:
                seen.add(w)
                ch[u].append(w)
                stack.append(w)

    b = _NiceBuilder(td.graph)

    def build(node: int) -> int:
        kids = ch[node]
        bag = td.bags[node]
        if not kids:
            return b.leaf_chain(bag)
        tops = [b.transition(build(k), bag) for k in sorted(kids)]
        top = tops[0]
        for other in tops[1:]:
            top = b.add(bag, JOIN, [top, other])
        return top

    build(root)
    nice = NiceTreeDecomposition(
        td.graph, tuple(b.parent), tuple(b.bags), tuple(b.kinds)
    )
    return nice
