"""Six concrete problems: brute-force optima and finite boundary signatures."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .boundaried import BoundariedGraph
from .errors import OracleCapExceeded
from .graph import Graph, distances_from, induced_subgraph

MIN = "min"
MAX = "max"
INF = math.inf

ORACLE_VERTEX_CAP = 16
ORACLE_EDGE_CAP = 20

IN = "I"
DOM = "D"
FREE = "F"


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    direction: str
    solution_domain: str  # "vertex-set" | "edge-set"
    params: tuple[int, ...] = ()

    @property
    def r(self) -> int:
        return self.params[0]

    @property
    def s(self) -> int:
        return self.params[0]


def get_problem(pid: str, r: int | None = None, s: int | None = None) -> ProblemSpec:
    if pid == "vc":
        return ProblemSpec("vc", MIN, "vertex-set")
    if pid == "ds":
        return ProblemSpec("ds", MIN, "vertex-set", (r,) if r else ())
    if pid == "is":
        return ProblemSpec("is", MAX, "vertex-set")
    if pid == "scattered":
        if r is None or r < 1:
            raise ValueError("scattered needs --r >= 1")
        return ProblemSpec("scattered", MAX, "vertex-set", (r,))
    if pid == "cyclepacking":
        return ProblemSpec("cyclepacking", MAX, "edge-set")
    if pid == "sct":
        if s is None or s < 3:
            raise ValueError("sct needs --s >= 3")
        return ProblemSpec("sct", MIN, "edge-set", (s,))
    raise ValueError(f"unknown problem id '{pid}'")


@dataclass(frozen=True)
class ProblemInstance:
    graph: Graph
    k: int
    spec: ProblemSpec


@dataclass
class Signature:
    """Boundary-state table of a boundaried graph, normalized by its offset."""

    label_set: frozenset[int]
    offset: int | None
    table: dict
    ell: dict | None = None  # boundary distance matrix, scattered problems only

    def serialize(self) -> str:
        def val(v):
            if v == INF:
                return "inf"
            if v == -INF:
                return "-inf"
            return str(v)

        items = ";".join(f"{k}={val(v)}" for k, v in sorted(self.table.items()))
        out = f"labels={sorted(self.label_set)}|table={items}"
        if self.ell is not None:
            out += "|ell=" + ";".join(
                f"{k}:{val(v)}" for k, v in sorted(self.ell.items())
            )
        return out

    def same_class(self, other: "Signature") -> bool:
        """Equivalence for replacement purposes; offsets may differ."""
        return (
            self.label_set == other.label_set
            and self.table == other.table
            and self.ell == other.ell
        )


# ---------------------------------------------------------------------------
# brute-force optima


def _check_cap(spec: ProblemSpec, g: Graph) -> None:
    if spec.solution_domain == "edge-set":
        if g.m > ORACLE_EDGE_CAP:
            raise OracleCapExceeded(
                f"{g.m} edges exceed the oracle edge cap {ORACLE_EDGE_CAP}"
            )
        if g.n > 2 * ORACLE_EDGE_CAP + 2:
            raise OracleCapExceeded("too many vertices for the edge-problem oracle")
    elif g.n > ORACLE_VERTEX_CAP:
        raise OracleCapExceeded(
            f"{g.n} vertices exceed the oracle vertex cap {ORACLE_VERTEX_CAP}"
        )


def _max_independent(n: int, conflict: tuple[int, ...], allowed: int) -> int:
    """Largest subset of `allowed` inducing no conflict-mask adjacency."""
    memo: dict[int, int] = {}

    def go(mask: int) -> int:
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        best = go(mask & ~(1 << v))  # skip v
        best = max(best, 1 + go(mask & ~(1 << v) & ~conflict[v]))
        memo[mask] = best
        return best

    return go(allowed)


def _pairwise_distances(g: Graph) -> list[dict[int, float]]:
    return [distances_from(g, [v]) for v in range(g.n)]


def _scattered_conflicts(g: Graph, r: int) -> tuple[int, ...]:
    dist = _pairwise_distances(g)
    conflict = [0] * g.n
    for u in range(g.n):
        for v in range(g.n):
            if u != v and dist[u][v] <= r:
                conflict[u] |= 1 << v
    return tuple(conflict)


def _min_dominating(g: Graph, required: int, candidates: int, forced: int, r: int = 1):
    """Min |S|, forced ⊆ S ⊆ forced|candidates, with required ⊆ r-ball of S.

    Returns INF when even the largest admissible S fails.
    """
    if r == 1:
        balls = [g.adj_masks[v] | (1 << v) for v in range(g.n)]
    else:
        balls = []
        for v in range(g.n):
            d = distances_from(g, [v])
            balls.append(sum(1 << u for u in range(g.n) if d[u] <= r))
    base = 0
    for v in range(g.n):
        if forced >> v & 1:
            base |= balls[v]
    free = [v for v in range(g.n) if candidates >> v & 1]
    best = INF
    nforced = bin(forced).count("1")
    for size in range(0, len(free) + 1):
        if nforced + size >= best:
            break
        for pick in itertools.combinations(free, size):
            cov = base
            for v in pick:
                cov |= balls[v]
            if required & ~cov == 0:
                best = nforced + size
                break
        if best < INF:
            break
    return best


def _enumerate_cycles_through(g: Graph, v: int, avail: frozenset[int]):
    """Vertex sets of simple cycles through v inside avail (v = minimum id)."""
    out = []
    seen = set()

    def walk(u: int, path: list[int], onpath: set[int]):
        for w in g.adj[u]:
            if w == v and len(path) >= 3:
                key = frozenset(path)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
            elif w > v and w in avail and w not in onpath:
                onpath.add(w)
                path.append(w)
                walk(w, path, onpath)
                path.pop()
                onpath.remove(w)

    walk(v, [v], {v})
    return out


def _max_cycle_packing(g: Graph) -> int:
    memo: dict[frozenset[int], int] = {}

    def go(avail: frozenset[int]) -> int:
        if len(avail) < 3:
            return 0
        if avail in memo:
            return memo[avail]
        v = min(avail)
        best = go(avail - {v})
        for cyc in _enumerate_cycles_through(g, v, avail):
            best = max(best, 1 + go(avail - cyc))
        memo[avail] = best
        return best

    return go(frozenset(range(g.n)))


def _shortest_cycle_edges(g: Graph, s: int):
    """Edge list of some cycle of length <= s, or None."""
    if s == 3:
        for u, v in sorted(g.edges):
            common = g.adj[u] & g.adj[v]
            if common:
                w = min(common)
                return [
                    (u, v),
                    (min(u, w), max(u, w)),
                    (min(v, w), max(v, w)),
                ]
        return None
    best = None
    for u, v in sorted(g.edges):
        cut = Graph(g.n, g.edges - {(u, v)})
        # BFS with parents to recover the u..v path
        par = {u: None}
        frontier = [u]
        while frontier and v not in par:
            nxt = []
            for x in frontier:
                for w in cut.adj[x]:
                    if w not in par:
                        par[w] = x
                        nxt.append(w)
            frontier = nxt
        if v not in par:
            continue
        path = [v]
        while path[-1] != u:
            path.append(par[path[-1]])
        if len(path) > s:
            continue
        cyc = [(u, v)]
        for a, b in zip(path, path[1:]):
            cyc.append((a, b) if a < b else (b, a))
        if best is None or len(cyc) < len(best):
            best = cyc
    return best


def _min_short_cycle_transversal(g: Graph, s: int, ub: float = INF) -> float:
    cyc = _shortest_cycle_edges(g, s)
    if cyc is None:
        return 0
    if ub <= 0:
        return INF
    best = ub
    for e in cyc:
        sub = _min_short_cycle_transversal(Graph(g.n, g.edges - {e}), s, best - 1)
        best = min(best, 1 + sub)
    return best


def brute_opt(spec: ProblemSpec, g: Graph) -> int:
    """Exact optimum by exhaustive search; raises OracleCapExceeded above the caps."""
    _check_cap(spec, g)
    full = (1 << g.n) - 1
    if spec.id == "vc":
        conflict = g.adj_masks
        return g.n - _max_independent(g.n, conflict, full)
    if spec.id == "is":
        return _max_independent(g.n, g.adj_masks, full)
    if spec.id == "scattered":
        return _max_independent(g.n, _scattered_conflicts(g, spec.r), full)
    if spec.id == "ds":
        r = spec.params[0] if spec.params else 1
        return int(_min_dominating(g, full, full, 0, r))
    if spec.id == "cyclepacking":
        return _max_cycle_packing(g)
    if spec.id == "sct":
        return int(_min_short_cycle_transversal(g, spec.s))
    raise ValueError(f"unknown problem id '{spec.id}'")


def decide(inst: ProblemInstance) -> bool:
    """YES/NO as a bool; negative k is answered by the direction convention."""
    if inst.k < 0:
        return inst.spec.direction == MAX
    opt = brute_opt(inst.spec, inst.graph)
    if inst.spec.direction == MIN:
        return opt <= inst.k
    return opt >= inst.k


# ---------------------------------------------------------------------------
# signatures


def _boundary_in_label_order(b: BoundariedGraph) -> list[int]:
    return [v for _, v in sorted(zip(b.labels, b.boundary))]


def vc_signature(b: BoundariedGraph) -> Signature:
    """Table over boundary traces T: min vertex cover meeting the boundary in T."""
    g = b.graph
    _check_cap(get_problem("vc"), g)
    labels = sorted(b.labels)
    bverts = _boundary_in_label_order(b)
    interior = b.interior()
    table = {}
    raw = {}
    for picks in itertools.chain.from_iterable(
        itertools.combinations(range(len(labels)), sz)
        for sz in range(len(labels) + 1)
    ):
        T = frozenset(picks)
        in_cover = {bverts[i] for i in T}
        out = set(bverts) - in_cover
        if any(u in out and v in out for u, v in g.edges):
            raw[T] = INF
            continue
        best = INF
        for size in range(len(interior) + 1):
            if len(in_cover) + size >= best:
                break
            for pick in itertools.combinations(interior, size):
                S = in_cover | set(pick)
                if all(u in S or v in S for u, v in g.edges):
                    best = len(in_cover) + size
                    break
            if best < INF:
                break
        raw[T] = best
    finite = [v for v in raw.values() if v < INF]
    offset = min(finite) if finite else None
    cap = len(labels)
    for T, z in raw.items():
        key = tuple(sorted(labels[i] for i in T))
        if z == INF or z - offset > cap:
            table[key] = INF
        else:
            table[key] = int(z - offset)
    if offset is not None:
        assert offset == brute_opt(get_problem("vc"), g)
    return Signature(b.label_set, offset, table)


def ds_signature(b: BoundariedGraph) -> Signature:
    """Three states per boundary vertex: in the set, dominated, or unconstrained."""
    g = b.graph
    _check_cap(get_problem("ds"), g)
    labels = sorted(b.labels)
    bverts = _boundary_in_label_order(b)
    interior = b.interior()
    interior_mask = sum(1 << v for v in interior)
    raw = {}
    for states in itertools.product((IN, DOM, FREE), repeat=len(labels)):
        forced = 0
        required = interior_mask
        for st, v in zip(states, bverts):
            if st == IN:
                forced |= 1 << v
            elif st == DOM:
                required |= 1 << v
        raw[states] = _min_dominating(g, required, interior_mask, forced)
    finite = [v for v in raw.values() if v < INF]
    offset = min(finite) if finite else None
    cap = 2 * len(labels)
    table = {}
    for states, z in raw.items():
        if z == INF or z - offset > cap:
            table[states] = INF
        else:
            table[states] = int(z - offset)
    if offset is not None:
        relaxed = _min_dominating(g, interior_mask, (1 << g.n) - 1, 0)
        assert offset == relaxed
    return Signature(b.label_set, offset, table)


def _matchings(labels: list[int]):
    """All partial matchings on `labels` as frozensets of sorted label pairs."""
    out = []

    def go(rest: tuple[int, ...], acc: frozenset):
        if len(rest) < 2:
            out.append(acc)
            return
        x = rest[0]
        tail = rest[1:]
        go(tail, acc)  # x stays unmatched
        for i, y in enumerate(tail):
            go(tail[:i] + tail[i + 1 :], acc | {(x, y)})

    go(tuple(labels), frozenset())
    return out


def cycle_packing_signature(b: BoundariedGraph) -> Signature:
    """Table over (reserved labels, boundary matching) states: best cycle count
    of a max-degree-2 subgraph that avoids every reserved boundary vertex and
    links each matched pair by a path.

    The reserved set records boundary vertices claimed by cycles that live
    entirely on the other side of the boundary; without it, two graphs whose
    internal packings differ in whether they occupy a boundary vertex would be
    conflated (a triangle through the boundary vertex is not interchangeable
    with one avoiding it).
    """
    g = b.graph
    _check_cap(get_problem("cyclepacking"), g)
    labels = sorted(b.labels)
    vert = {l: b.vertex_of_label(l) for l in labels}
    edges = sorted(g.edges)
    states = []
    for bits in range(1 << len(labels)):
        reserved = frozenset(l for i, l in enumerate(labels) if bits >> i & 1)
        for R in _matchings([l for l in labels if l not in reserved]):
            states.append((reserved, R))
    best: dict[tuple, float] = {st: -INF for st in states}

    deg = [0] * g.n
    chosen: list[tuple[int, int]] = []

    def evaluate():
        # union-find over the chosen subgraph
        par = list(range(g.n))

        def find(x):
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        used = set()
        for u, v in chosen:
            used.add(u)
            used.add(v)
            par[find(u)] = find(v)
        comp_edges: dict[int, int] = {}
        comp_size: dict[int, int] = {}
        for u, v in chosen:
            comp_edges[find(u)] = comp_edges.get(find(u), 0) + 1
        for u in used:
            comp_size[find(u)] = comp_size.get(find(u), 0) + 1
        cycles = sum(
            1 for c, e in comp_edges.items() if e == comp_size.get(c, 0)
        )
        for st in states:
            reserved, R = st
            if any(vert[a] in used for a in reserved):
                continue
            # each matched pair must be the two endpoints of its own path
            # component; the closing edges live on the far side of the
            # boundary, so the terminals keep one free edge slot each
            ok = all(
                find(vert[x]) == find(vert[y])
                and deg[vert[x]] == 1
                and deg[vert[y]] == 1
                for x, y in R
            )
            if ok and cycles > best[st]:
                best[st] = cycles

    def branch(i: int):
        if i == len(edges):
            evaluate()
            return
        branch(i + 1)
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            branch(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1

    branch(0)
    offset = int(best[(frozenset(), frozenset())])
    cap = len(labels)
    table = {}
    for reserved, R in states:
        key = (tuple(sorted(reserved)), tuple(sorted(R)))
        z = best[(reserved, R)]
        if z == -INF or z - offset < -cap:
            table[key] = -INF
        else:
            table[key] = int(z - offset)
    assert offset == brute_opt(get_problem("cyclepacking"), g)
    return Signature(b.label_set, offset, table)


def scattered_signature(b: BoundariedGraph, r: int, t: int | None = None) -> Signature:
    """Table over per-label distance demands; carries the boundary distance matrix."""
    if r < 1:
        raise ValueError("r must be at least 1")
    g = b.graph
    _check_cap(get_problem("scattered", r=r), g)
    labels = sorted(b.labels)
    if t is None:
        t = len(labels)
    bverts = _boundary_in_label_order(b)
    dist = [distances_from(g, [v]) for v in bverts]
    ell = {}
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            d = dist[i][bverts[j]]
            ell[(labels[i], labels[j])] = int(min(d, r))
    conflict = _scattered_conflicts(g, r)
    raw = {}
    # demand r+1 stands for "strictly farther than r", the infinity state
    for sigma in itertools.product(range(r + 2), repeat=len(labels)):
        allowed = 0
        for v in range(g.n):
            if all(dist[i][v] >= sigma[i] for i in range(len(labels))):
                allowed |= 1 << v
        raw[sigma] = _max_independent(g.n, conflict, allowed)
    offset = raw[tuple([0] * len(labels))]
    table = {}
    for sigma, z in raw.items():
        if z - offset < -2 * t:
            table[sigma] = -INF
        else:
            table[sigma] = int(z - offset)
    assert offset == brute_opt(get_problem("scattered", r=r), g)
    return Signature(b.label_set, offset, table, ell=ell)


def _has_short_cycle(g: Graph, s: int) -> bool:
    return _shortest_cycle_edges(g, s) is not None


def sct_signature(b: BoundariedGraph, s: int, t: int | None = None) -> Signature:
    """Table over boundary-pair distance demands after deleting a short-cycle hitter."""
    if s < 3:
        raise ValueError("s must be at least 3")
    g = b.graph
    _check_cap(get_problem("sct", s=s), g)
    labels = sorted(b.labels)
    if t is None:
        t = len(labels)
    bverts = {l: b.vertex_of_label(l) for l in labels}
    pairs = [
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
    ]
    states = list(itertools.product(range(s + 1), repeat=len(pairs)))
    pending = set(states)
    raw: dict[tuple, float] = {}
    edges = sorted(g.edges)
    for size in range(len(edges) + 1):
        if not pending:
            break
        for cut in itertools.combinations(edges, size):
            rest = Graph(g.n, g.edges - set(cut))
            if _has_short_cycle(rest, s):
                continue
            dists = [
                distances_from(rest, [bverts[i]])[bverts[j]] for i, j in pairs
            ]
            done = []
            for f in pending:
                if all(d >= f[idx] + 1 for idx, d in enumerate(dists)):
                    raw[f] = size
                    done.append(f)
            pending.difference_update(done)
            if not pending:
                break
    for f in pending:
        raw[f] = INF
    offset = raw[tuple([0] * len(pairs))]
    if offset == INF:
        offset = None
    cap = 3 * (t * (t - 1) // 2)
    table = {}
    for f, z in raw.items():
        if offset is None or z == INF or z - offset > cap:
            table[f] = INF
        else:
            table[f] = int(z - offset)
    if offset is not None:
        assert offset == brute_opt(get_problem("sct", s=s), g)
    return Signature(b.label_set, offset, table)


def compute_signature(spec: ProblemSpec, b: BoundariedGraph, t: int | None = None) -> Signature:
    if spec.id == "vc":
        return vc_signature(b)
    if spec.id == "ds":
        return ds_signature(b)
    if spec.id == "is":
        return scattered_signature(b, 1, t)
    if spec.id == "scattered":
        return scattered_signature(b, spec.r, t)
    if spec.id == "cyclepacking":
        return cycle_packing_signature(b)
    if spec.id == "sct":
        return sct_signature(b, spec.s, t)
    raise ValueError(f"no signature for problem '{spec.id}'")


def has_signature(spec: ProblemSpec) -> bool:
    """Radius-r domination for r > 1 has a brute oracle but no replacement table."""
    return not (spec.id == "ds" and spec.params and spec.params[0] > 1)


# ---------------------------------------------------------------------------
# preprocessing for the short-cycle problem


def sct_preprocess(g: Graph, s: int) -> tuple[Graph, list[int]]:
    """Drop vertices on no cycle of length <= s, to a fixed point.

    Returns the surviving induced subgraph (densely relabeled) and the removed
    vertices in original ids.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    alive = list(range(g.n))
    cur = g
    removed: list[int] = []
    while True:
        drop = []
        for v in range(cur.n):
            on_short = False
            for u in cur.adj[v]:
                e = (v, u) if v < u else (u, v)
                cut = Graph(cur.n, cur.edges - {e})
                if distances_from(cut, [v])[u] + 1 <= s:
                    on_short = True
                    break
            if not on_short:
                drop.append(v)
        if not drop:
            return cur, sorted(removed)
        removed.extend(alive[v] for v in drop)
        keep = [v for v in range(cur.n) if v not in set(drop)]
        cur, _ = induced_subgraph(cur, keep)
        alive = [alive[v] for v in keep]
