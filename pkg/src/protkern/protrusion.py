"""Protrusion detection, the X_R region, and window splitting/partitioning."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TooLargeForExactTreewidth
from .graph import Graph, connected_components, induced_subgraph
from .treewidth import (
    EXACT_TW_VERTEX_CAP,
    FORGET,
    NiceTreeDecomposition,
    TreeDecomposition,
    decide_tw_leq,
    make_nice,
    width,
)
from .boundaried import boundary_of


@dataclass(frozen=True)
class Protrusion:
    """Vertex set X with small boundary and a small-width witness for G[X].

    The witness decomposition lives on the induced subgraph of X; vmap sends
    host vertex ids into witness ids.
    """

    X: frozenset[int]
    boundary: frozenset[int]
    t: int
    witness: TreeDecomposition
    vmap: dict[int, int] = field(compare=False, default_factory=dict)


def is_protrusion(g: Graph, X, t: int, vertex_cap: int = EXACT_TW_VERTEX_CAP):
    """Protrusion certificate if |bd(X)| <= t and tw(G[X]) <= t, else None."""
    X = frozenset(X)
    bd = boundary_of(g, X)
    if len(bd) > t:
        return None
    sub, vmap = induced_subgraph(g, X)
    td = decide_tw_leq(sub, t, vertex_cap=vertex_cap)
    if td is None:
        return None
    return Protrusion(X, bd, t, td, vmap)


@dataclass
class XRResult:
    X: frozenset[int]
    warnings: list[str]


def compute_xr(g: Graph, R, vertex_cap: int = EXACT_TW_VERTEX_CAP) -> XRResult:
    """R plus every component of G-R whose treewidth is at most |R|.

    Components too large for the exact treewidth check are excluded with a
    warning; the smaller region is still a valid protrusion candidate.
    """
    R = frozenset(R)
    for v in R:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    rest, _ = induced_subgraph(g, set(range(g.n)) - R)
    back = sorted(set(range(g.n)) - R)
    out = set(R)
    warnings = []
    for comp in connected_components(rest):
        host = frozenset(back[v] for v in comp)
        sub, _ = induced_subgraph(rest, comp)
        try:
            td = decide_tw_leq(sub, len(R), vertex_cap=vertex_cap)
        except TooLargeForExactTreewidth:
            warnings.append(
                f"component of size {len(comp)} skipped: too large for exact treewidth"
            )
            continue
        if td is not None:
            out |= host
    return XRResult(frozenset(out), warnings)


# ---------------------------------------------------------------------------
# splitting an oversized protrusion (small-window extraction)


def _nice_local(g: Graph, p: Protrusion) -> tuple[NiceTreeDecomposition, list[int]]:
    """Nice decomposition of G[X] in local ids, plus local->host translation."""
    nice = make_nice(p.witness)
    back = [0] * len(p.vmap)
    for host, local in p.vmap.items():
        back[local] = host
    return nice, back


def split_protrusion(g: Graph, p: Protrusion, c: int) -> Protrusion:
    """Extract a (2t+1)-protrusion Y with c < |Y| <= 2c from an oversized one.

    Walks a rooted nice decomposition of G[X] to the deepest node whose
    subtree (together with bd(X)) covers more than c vertices; ties break to
    the smallest node id.
    """
    if c <= 0:
        raise ValueError("split target c must be positive")
    if len(p.X) <= c:
        raise ValueError("protrusion is not larger than c")
    t_out = 2 * p.t + 1
    if len(p.X) <= 2 * c:
        return Protrusion(p.X, p.boundary, t_out, p.witness, dict(p.vmap))

    nice, back = _nice_local(g, p)
    bd_local = frozenset(p.vmap[v] for v in p.boundary)
    ch = nice.children()
    root = nice.root
    # post-order subtree vertex sets and depths
    depth = [0] * nice.num_nodes
    order = []
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for w in ch[u]:
            depth[w] = depth[u] + 1
            stack.append(w)
    cover: list[frozenset[int]] = [frozenset()] * nice.num_nodes
    for u in reversed(order):
        s = set(nice.bags[u]) | set(bd_local)
        for w in ch[u]:
            s |= cover[w]
        cover[u] = frozenset(s)
    candidates = [u for u in range(nice.num_nodes) if len(cover[u]) > c]
    b = max(candidates, key=lambda u: (depth[u], -u))
    if any(len(cover[w]) > c for w in ch[b]):
        raise AssertionError("chosen node is not deepest")
    y_local = cover[b]
    if not (c < len(y_local) <= 2 * c):
        # can only happen when a single bag plus the boundary overshoots 2c
        raise ValueError(
            f"cannot extract a window in ({c}, {2 * c}] from this protrusion"
        )
    # witness: subtree bags augmented with bd(X), restricted to Y's subgraph
    sub_nodes = []
    stack = [b]
    while stack:
        u = stack.pop()
        sub_nodes.append(u)
        stack.extend(ch[u])
    y_host = frozenset(back[v] for v in y_local)
    sub, vmap_y = induced_subgraph(g, y_host)
    node_pos = {u: i for i, u in enumerate(sub_nodes)}
    bags = []
    parent: list = []
    for u in sub_nodes:
        bag = frozenset(
            vmap_y[back[v]] for v in (set(nice.bags[u]) | set(bd_local))
        )
        bags.append(bag)
        parent.append(node_pos[nice.parent[u]] if u != b else None)
    witness = TreeDecomposition(sub, tuple(parent), tuple(bags))
    return Protrusion(y_host, boundary_of(g, y_host), t_out, witness, vmap_y)


# ---------------------------------------------------------------------------
# partitioning a protrusion around marked vertices


@dataclass
class PartitionResult:
    parts: list[Protrusion]
    warnings: list[str]


def _single_bag_protrusion(g: Graph, Q: frozenset[int], t_out: int) -> Protrusion:
    sub, vmap = induced_subgraph(g, Q)
    td = TreeDecomposition(sub, (None,), (frozenset(range(sub.n)),))
    return Protrusion(Q, boundary_of(g, Q), t_out, td, vmap)


def _restricted_protrusion(
    g: Graph,
    Q: frozenset[int],
    nice: NiceTreeDecomposition,
    back: list[int],
    extra: frozenset[int],
    t_out: int,
) -> Protrusion:
    """Protrusion with witness = the component decomposition restricted to Q."""
    sub, vmap = induced_subgraph(g, Q)
    bags = []
    for bag in nice.bags:
        host = {back[v] for v in bag} | {back_v for back_v in extra}
        bags.append(frozenset(vmap[v] for v in host if v in vmap))
    td = TreeDecomposition(sub, nice.parent, tuple(bags))
    return Protrusion(Q, boundary_of(g, Q), t_out, td, vmap)


def partition_protrusion(
    g: Graph, p: Protrusion, Z, vertex_cap: int = EXACT_TW_VERTEX_CAP
) -> PartitionResult:
    """Cover X by (4t+2)-protrusions that each meet Z only in their boundary.

    Per component of G[X]: nice decomposition with bd(X) added to every bag,
    marks on the topmost forget nodes of Z vertices (and the root), closed
    under lowest common ancestors; components of X minus the marked bags are
    grouped by the marked bags their neighborhoods touch.
    """
    Z = frozenset(Z)
    if not Z <= p.X:
        raise ValueError("Z must be a subset of the protrusion")
    t_out = 4 * p.t + 2
    warnings: list[str] = []
    if not Z:
        return PartitionResult(
            [Protrusion(p.X, p.boundary, t_out, p.witness, dict(p.vmap))], warnings
        )

    sub_x, vmap_x = induced_subgraph(g, p.X)
    back_x = sorted(p.X)
    parts: list[Protrusion] = []
    covered: set[int] = set()
    for comp_local in connected_components(sub_x):
        comp_host = frozenset(back_x[v] for v in comp_local)
        pc = is_protrusion(g, comp_host, p.t, vertex_cap=vertex_cap)
        if pc is None:
            raise AssertionError("component of a protrusion must itself qualify")
        if not Z & comp_host:
            parts.append(
                Protrusion(comp_host, pc.boundary, t_out, pc.witness, dict(pc.vmap))
            )
            covered |= comp_host
            continue
        nice = make_nice(pc.witness)
        back = [0] * len(pc.vmap)
        for host, local in pc.vmap.items():
            back[local] = host
        bd_host = frozenset(p.boundary)

        marked = _mark_nodes(nice, {pc.vmap[z] for z in Z & comp_host})
        marked_bag_hosts = set()
        for u in marked:
            marked_bag_hosts |= {back[v] for v in nice.bags[u]}
        marked_bag_hosts |= bd_host & comp_host

        # components of the unmarked remainder, grouped by touched marked bags
        remainder = comp_host - marked_bag_hosts
        groups: dict[frozenset[int], set[int]] = {}
        if remainder:
            rem_sub, rem_map = induced_subgraph(g, remainder)
            rem_back = sorted(remainder)
            for cc in connected_components(rem_sub):
                cc_host = frozenset(rem_back[v] for v in cc)
                nbrs = set()
                for v in cc_host:
                    nbrs |= g.adj[v]
                nbrs &= comp_host | bd_host
                nbrs -= cc_host
                anchors = frozenset(
                    u for u in marked if {back[v] for v in nice.bags[u]} & nbrs
                ) or frozenset({min(marked)})
                groups.setdefault(anchors, set()).update(cc_host)
        for anchors, U in sorted(groups.items(), key=lambda kv: sorted(kv[0])):
            nbrs = set()
            for v in U:
                nbrs |= g.adj[v]
            Q = frozenset(U | (nbrs - U))
            parts.extend(
                _emit_group(g, Q, Z, nice, back, bd_host, t_out, warnings)
            )
            covered |= Q
        leftovers = comp_host - covered
        for z in sorted(leftovers & Z):
            parts.append(_single_bag_protrusion(g, frozenset({z}), t_out))
            covered.add(z)
        rest = leftovers - Z
        for u in sorted(marked):
            chunk = frozenset({back[v] for v in nice.bags[u]} & rest)
            if chunk:
                parts.append(_single_bag_protrusion(g, chunk, t_out))
                rest -= chunk
                covered |= chunk
        if rest:
            parts.append(_single_bag_protrusion(g, frozenset(rest), t_out))
            covered |= rest
    if covered != p.X:
        raise AssertionError("partition does not cover the protrusion")
    bound = 4 * (len(Z) + 1)
    if len(parts) > bound:
        warnings.append(f"{len(parts)} parts exceed the soft bound {bound}")
    return PartitionResult(parts, warnings)


def _mark_nodes(nice: NiceTreeDecomposition, z_local: set[int]) -> set[int]:
    """Topmost forget nodes of Z vertices plus the root, closed under LCAs."""
    ch = nice.children()
    root = nice.root
    marked = {root}
    for u in range(nice.num_nodes):
        if nice.kinds[u] != FORGET:
            continue
        (kid,) = ch[u]
        dropped = nice.bags[kid] - nice.bags[u]
        if dropped & z_local:
            marked.add(kid)
    # ancestors for LCA computation
    parent = nice.parent

    def ancestors(u: int) -> list[int]:
        out = []
        while u is not None:
            out.append(u)
            u = parent[u]
        return out

    changed = True
    while changed:
        changed = False
        ms = sorted(marked)
        for i, a in enumerate(ms):
            anc_a = ancestors(a)
            pos = {x: k for k, x in enumerate(anc_a)}
            for b in ms[i + 1 :]:
                u = b
                while u not in pos:
                    u = parent[u]
                if u not in marked:
                    marked.add(u)
                    changed = True
    return marked


def _emit_group(g, Q, Z, nice, back, bd_host, t_out, warnings):
    """Emit Q (or z-repaired pieces of it) as protrusions."""
    out = []
    bad_z = sorted(z for z in Z & Q if g.adj[z] and g.adj[z] <= Q)
    if not bad_z:
        out.append(_restricted_protrusion(g, Q, nice, back, bd_host, t_out))
        return out
    # a Z vertex would be interior: split Q at that vertex so each piece
    # misses one of its neighbors
    z = bad_z[0]
    rest = Q - {z}
    sub, _ = induced_subgraph(g, rest)
    rest_back = sorted(rest)
    comps = [frozenset(rest_back[v] for v in cc) for cc in connected_components(sub)]
    if len(comps) >= 2:
        for cc in sorted(comps, key=min):
            out.extend(
                _emit_group(g, frozenset(cc | {z}), Z, nice, back, bd_host, t_out, warnings)
            )
        return out
    # z is not a cut vertex of G[Q]; fall back to a singleton for z
    out.append(_single_bag_protrusion(g, frozenset({z}), t_out))
    piece = _restricted_protrusion(g, frozenset(rest), nice, back, bd_host, t_out)
    if len(piece.boundary) > t_out:
        warnings.append(
            f"piece boundary {len(piece.boundary)} exceeds {t_out} after repair"
        )
    out.append(piece)
    return out
