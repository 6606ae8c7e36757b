"""The kernelization driver loop, verification harness, and family sweeps."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .boundaried import boundary_of, canonical_code, split
from .errors import CanonizationCapExceeded, OracleCapExceeded
from .graph import (
    Graph,
    articulation_points,
    connected_components,
    distances_from,
    generate,
    induced_subgraph,
    parse_family,
)
from .problems import (
    MAX,
    MIN,
    ORACLE_VERTEX_CAP,
    ProblemInstance,
    ProblemSpec,
    brute_opt,
    decide,
    has_signature,
    sct_preprocess,
)
from .protrusion import Protrusion, compute_xr, split_protrusion
from .replace import BUDGET, FOUND, FOUND_CACHE, RepCache, apply_replacement, find_replacement
from .treewidth import TreeDecomposition, decide_tw_leq

EXHAUSTIVE_SCAN_LIMIT = 64  # above this, candidate cut sets are heuristic
DEFAULT_ENUM_BUDGET = 20000


@dataclass
class EngineConfig:
    t: int
    r_search: int | None = None  # defaults to 2t
    split_c: int = 5
    size_threshold: int | None = None  # defaults to 4*split_c + 2*(2t+1)
    enum_budget: int = DEFAULT_ENUM_BUDGET
    cache_path: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.r_search is None:
            self.r_search = 2 * self.t
        if self.size_threshold is None:
            self.size_threshold = 4 * self.split_c + 2 * (2 * self.t + 1)
        if self.size_threshold <= 2 * self.split_c:
            raise ValueError("size_threshold must exceed twice the split target")

    def threshold(self, boundary_size: int) -> int:
        return self.size_threshold


@dataclass
class ReductionLog:
    steps: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# trivial instances, validated once against the oracle


def trivial_instance(spec: ProblemSpec) -> ProblemInstance:
    """Canonical fixed-answer instance: NO for minimization, YES for maximization."""
    if spec.direction == MAX:
        inst = ProblemInstance(Graph.from_edges(1, []), 0, spec)
        assert decide(inst) is True
        return inst
    if spec.id == "sct":
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    else:
        g = Graph.from_edges(2, [(0, 1)])
    inst = ProblemInstance(g, 0, spec)
    assert decide(inst) is False
    return inst


# ---------------------------------------------------------------------------
# candidate cut sets


def _candidate_sets(g: Graph, r_search: int, split_c: int):
    if g.n <= EXHAUSTIVE_SCAN_LIMIT:
        for size in range(1, r_search + 1):
            yield from itertools.combinations(range(g.n), size)
        return
    # large graphs: articulation points and nearby pairs of them only
    arts = articulation_points(g)
    for v in arts:
        yield (v,)
    if r_search >= 2:
        limit = 2 * split_c
        for i, a in enumerate(arts):
            dist = distances_from(g, [a])
            for b in arts[i + 1 :]:
                if dist[b] <= limit:
                    yield (a, b)


def _protrusion_from_xr(g: Graph, R: frozenset[int], X: frozenset[int]) -> Protrusion | None:
    """Witness of width <= 2|R| for X: component decompositions with R in every bag."""
    sub, vmap = induced_subgraph(g, X)
    back = sorted(X)
    r_local = {vmap[v] for v in R}
    rest = set(range(sub.n)) - r_local
    bags: list[frozenset[int]] = [frozenset(r_local)]
    parent: list = [None]
    if rest:
        rest_sub, rest_map = induced_subgraph(sub, rest)
        rest_back = sorted(rest)
        for comp in connected_components(rest_sub):
            comp_local = frozenset(rest_back[v] for v in comp)
            csub, cmap = induced_subgraph(sub, comp_local)
            td = decide_tw_leq(csub, len(R))
            if td is None:
                return None
            cback = sorted(comp_local)
            offset = len(bags)
            for i, bag in enumerate(td.bags):
                bags.append(frozenset(cback[v] for v in bag) | frozenset(r_local))
                p = td.parent[i]
                parent.append(offset + p if p is not None else 0)
    witness = TreeDecomposition(sub, tuple(parent), tuple(bags))
    return Protrusion(X, boundary_of(g, X), 2 * len(R), witness, vmap)


# ---------------------------------------------------------------------------
# the driver loop


def meta_kernelize(inst: ProblemInstance, cfg: EngineConfig):
    log = ReductionLog()
    spec = inst.spec
    if spec.id == "sct":
        g2, removed = sct_preprocess(inst.graph, spec.s)
        if removed:
            log.warnings.append(
                f"preprocessing removed {len(removed)} vertices on no short cycle"
            )
            inst = ProblemInstance(g2, inst.k, spec)
    if inst.k >= 0 and inst.graph.n <= inst.k:
        return inst, log
    if not has_signature(spec):
        log.warnings.append(f"problem '{spec.id}' has no replacement table; no-op")
        if inst.k < 0:
            return trivial_instance(spec), log
        return inst, log

    cache = RepCache(cfg.cache_path)
    stuck: set[bytes] = set()
    warned_components = set()

    while True:
        if inst.k < 0:
            return trivial_instance(spec), log
        if inst.graph.n <= max(inst.k, 0):
            return inst, log
        fired = False
        for R in _candidate_sets(inst.graph, cfg.r_search, cfg.split_c):
            Rset = frozenset(R)
            xr = compute_xr(inst.graph, Rset)
            for w in xr.warnings:
                if w not in warned_components:
                    warned_components.add(w)
                    log.warnings.append(w)
            if len(xr.X) < cfg.threshold(2 * len(Rset)):
                continue
            p = _protrusion_from_xr(inst.graph, Rset, xr.X)
            if p is None:
                continue
            if len(p.X) > 2 * cfg.split_c:
                try:
                    y = split_protrusion(inst.graph, p, cfg.split_c)
                except ValueError:
                    continue
            else:
                y = p
            b = split(inst.graph, y.X).g_x
            if b.graph.n > ORACLE_VERTEX_CAP:
                continue
            try:
                code = canonical_code(b)
            except CanonizationCapExceeded:
                continue
            if code in stuck:
                continue
            try:
                res = find_replacement(
                    spec, b, cache=cache, budget=cfg.enum_budget, t=cfg.t
                )
            except OracleCapExceeded:
                stuck.add(code)
                continue
            if res.status in (FOUND, FOUND_CACHE):
                before = inst
                ap = apply_replacement(inst, y.X, res.j, res.c)
                inst = ap.instance
                log.steps.append(
                    {
                        "R": sorted(Rset),
                        "xr_size": len(xr.X),
                        "Y": sorted(y.X),
                        "replacement": {"n": res.j.graph.n, "m": res.j.graph.m},
                        "c": res.c,
                        "n_before": before.graph.n,
                        "n_after": inst.graph.n,
                        "k_before": before.k,
                        "k_after": inst.k,
                    }
                )
                fired = True
                break
            stuck.add(code)
            if res.status == BUDGET:
                log.warnings.append(
                    f"replacement search for a {b.graph.n}-vertex window hit the budget"
                )
        if not fired:
            return inst, log


# ---------------------------------------------------------------------------
# verification and sweeps


def verify_kernel(original: ProblemInstance, kernel: ProblemInstance) -> dict:
    """Oracle decisions on both instances plus an agreement flag."""
    report = {"original": None, "kernel": None, "agreement": None, "note": ""}
    try:
        a = decide(original)
        b = decide(kernel)
    except OracleCapExceeded:
        report["note"] = "unverifiable at this size"
        return report
    report["original"] = "YES" if a else "NO"
    report["kernel"] = "YES" if b else "NO"
    report["agreement"] = a == b
    return report


def sweep(spec: ProblemSpec, family_template: str, k_values, cfg: EngineConfig):
    """One kernelization per k; the family template may mention {k}."""
    rows = []
    for k in k_values:
        fam = parse_family(family_template.format(k=k), seed=cfg.seed)
        g = generate(fam)
        inst = ProblemInstance(g, k, spec)
        start = time.monotonic()
        out, log = meta_kernelize(inst, cfg)
        wall_ms = int((time.monotonic() - start) * 1000)
        rows.append(
            {
                "k": k,
                "n_original": g.n,
                "n_kernel": out.graph.n,
                "steps": len(log.steps),
                "wall_ms": wall_ms,
            }
        )
    return rows
