"""Decision procedures on graphs (1-complexes).

Graphs are plain :class:`networkx.Graph` objects with non-negative integer
nodes.  Planarity is delegated to networkx; subdivision (topological minor)
and minor containment for the fixed patterns in :mod:`triplelink.patterns`
are exact branch-and-bound searches written here.  Every search runs under a
wall-clock budget and reports ``found=None`` when the budget runs out, so a
caller can never mistake "gave up" for "absent".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple

import networkx as nx

from .complex import ComplexError, SimplicialComplex, skeleton
from .patterns import PETERSEN_FAMILY_NAMES, pattern_graph

DEFAULT_BUDGET = 10.0
# Reduced hosts larger than this are reported inconclusive without searching.
MAX_SEARCH_VERTICES = 64

# Edge bounds m <= c*n.  Mader: no K5 subdivision => m <= 3n (used as the
# base of the top-simplex recursion), no K6 subdivision => m <= 4n.
MADER_K5_CONSTANT = 3
MADER_K6_CONSTANT = 4
# An apex over a triangulation has 4n - 10 edges; closer than this to 4n is
# flagged as near the Mader bound.
MADER_NEAR_SLACK = 10


class BudgetExceeded(Exception):
    pass


class WitnessError(ValueError):
    pass


# --- conversions --------------------------------------------------------------

def graph_from_complex(K: SimplicialComplex, strict: bool = False) -> nx.Graph:
    """The 1-skeleton of ``K`` as a graph (isolated vertices kept)."""
    if strict and K.dimension > 1:
        raise ComplexError(f"expected a 1-dimensional complex, got dimension {K.dimension}")
    G = nx.Graph()
    G.add_nodes_from(sorted(K.vertices))
    if K.dimension >= 1:
        G.add_edges_from(skeleton(K, 1).faces(1))
    return G


def complex_from_graph(G: nx.Graph) -> SimplicialComplex:
    facets = [tuple(e) for e in G.edges()]
    facets += [(v,) for v in G if G.degree(v) == 0]
    return SimplicialComplex.from_facets(facets)


# --- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class MinorWitness:
    """Certificate that ``pattern`` sits inside a host graph.

    ``branch_sets`` maps each pattern vertex to a connected set of host
    vertices.  A subdivision witness has singleton branch sets and, in
    ``paths``, one host path per pattern edge ``(a, b)`` with ``a < b``.
    """

    pattern: str
    branch_sets: Mapping[int, frozenset[int]]
    paths: Mapping[tuple[int, int], tuple[int, ...]] | None = None

    @property
    def kind(self) -> str:
        return "minor" if self.paths is None else "subdivision"

    def relabel(self, mapping: Mapping[int, int]) -> MinorWitness:
        paths = None
        if self.paths is not None:
            paths = {e: tuple(mapping[v] for v in p) for e, p in self.paths.items()}
        return MinorWitness(
            self.pattern,
            {h: frozenset(mapping[v] for v in B) for h, B in self.branch_sets.items()},
            paths,
        )

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "pattern": self.pattern,
            "branch_sets": [[h, sorted(B)] for h, B in sorted(self.branch_sets.items())],
        }
        if self.paths is not None:
            out["paths"] = [[a, b, list(p)] for (a, b), p in sorted(self.paths.items())]
        return out


def validate_witness(G: nx.Graph, w: MinorWitness) -> None:
    """Raise :class:`WitnessError` unless ``w`` certifies its pattern in ``G``."""
    H = pattern_graph(w.pattern)
    if set(w.branch_sets) != set(H):
        raise WitnessError("branch sets do not cover the pattern vertices")
    seen: set[int] = set()
    for h, B in w.branch_sets.items():
        if not B:
            raise WitnessError(f"empty branch set for {h}")
        if not B <= set(G):
            raise WitnessError(f"branch set of {h} uses vertices outside the host")
        if seen & B:
            raise WitnessError("branch sets overlap")
        seen |= B
        if not nx.is_connected(G.subgraph(B)):
            raise WitnessError(f"branch set of {h} is not connected")
    if w.paths is None:
        for a, b in H.edges():
            if not any(G.has_edge(x, y) for x in w.branch_sets[a] for y in w.branch_sets[b]):
                raise WitnessError(f"pattern edge {a}-{b} not realised")
        return
    if any(len(B) != 1 for B in w.branch_sets.values()):
        raise WitnessError("subdivision witness needs singleton branch sets")
    image = {h: next(iter(B)) for h, B in w.branch_sets.items()}
    if {tuple(sorted(e)) for e in H.edges()} != set(w.paths):
        raise WitnessError("paths do not match the pattern edges")
    branch_vertices = set(image.values())
    interior: set[int] = set()
    for (a, b), p in w.paths.items():
        if len(p) < 2 or p[0] != image[a] or p[-1] != image[b]:
            raise WitnessError(f"path for {a}-{b} has wrong endpoints")
        if len(set(p)) != len(p):
            raise WitnessError(f"path for {a}-{b} is not simple")
        if not all(G.has_edge(x, y) for x, y in zip(p, p[1:])):
            raise WitnessError(f"path for {a}-{b} leaves the host")
        inner = set(p[1:-1])
        if inner & branch_vertices or inner & interior:
            raise WitnessError(f"path for {a}-{b} is not internally disjoint")
        interior |= inner


def is_valid_witness(G: nx.Graph, w: MinorWitness) -> bool:
    try:
        validate_witness(G, w)
    except WitnessError:
        return False
    return True


class SearchResult(NamedTuple):
    found: bool | None
    witness: MinorWitness | None = None

    @property
    def inconclusive(self) -> bool:
        return self.found is None


class PlanarityResult(NamedTuple):
    planar: bool
    witness: MinorWitness | None = None


# --- planarity ------------------------------------------------------------------

def _kuratowski_witness(sub: nx.Graph) -> MinorWitness:
    branch = sorted(v for v in sub if sub.degree(v) >= 3)
    bset = set(branch)
    routes: dict[tuple[int, int], tuple[int, ...]] = {}
    for b in branch:
        for nb in sub[b]:
            path = [b, nb]
            while path[-1] not in bset:
                prev, cur = path[-2], path[-1]
                path.append(next(x for x in sub[cur] if x != prev))
            if b < path[-1]:
                routes[(b, path[-1])] = tuple(path)
    if len(branch) == 5:
        name = "K5"
        label = {v: i for i, v in enumerate(branch)}
    else:
        name = "K33"
        skeleton_graph = nx.Graph(list(routes))
        left, right = nx.bipartite.sets(skeleton_graph)
        if min(right) < min(left):
            left, right = right, left
        label = {v: i for i, v in enumerate(sorted(left))}
        label.update({v: 3 + i for i, v in enumerate(sorted(right))})
    paths = {}
    for (x, y), p in routes.items():
        a, b = label[x], label[y]
        paths[(min(a, b), max(a, b))] = p if a < b else p[::-1]
    return MinorWitness(name, {label[v]: frozenset({v}) for v in branch}, paths)


def is_planar(G: nx.Graph) -> PlanarityResult:
    """Planarity test; a non-planar answer carries a K5 or K33 subdivision."""
    planar, certificate = nx.check_planarity(G, counterexample=True)
    if planar:
        return PlanarityResult(True)
    return PlanarityResult(False, _kuratowski_witness(certificate))


def _planar(adj: Mapping[int, set[int]]) -> bool:
    G = nx.Graph()
    G.add_nodes_from(adj)
    G.add_edges_from((u, v) for u in adj for v in adj[u] if u < v)
    return nx.check_planarity(G)[0]


def is_apex(G: nx.Graph) -> bool:
    """True if removing at most one vertex leaves a planar graph."""
    if nx.check_planarity(G)[0]:
        return True
    for v in sorted(G, key=lambda x: (-G.degree(x), x)):
        H = G.copy()
        H.remove_node(v)
        if nx.check_planarity(H)[0]:
            return True
    return False


# --- search helpers -------------------------------------------------------------

class _Clock:
    def __init__(self, budget: float | None):
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 128 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded


def _resolve(H: str | nx.Graph) -> tuple[str, nx.Graph]:
    if isinstance(H, str):
        return H, pattern_graph(H)
    raise TypeError("pattern must be given by name, e.g. 'K5' or 'Petersen'")


def _degree_profile_ok(G: nx.Graph, H: nx.Graph) -> bool:
    gd = sorted((d for _, d in G.degree()), reverse=True)
    hd = sorted((d for _, d in H.degree()), reverse=True)
    return len(gd) >= len(hd) and all(g >= h for g, h in zip(gd, hd))


def _core(G: nx.Graph, min_degree: int) -> dict[int, set[int]]:
    adj = {v: set(G[v]) for v in G}
    todo = [v for v in adj if len(adj[v]) < min_degree]
    while todo:
        v = todo.pop()
        if v not in adj:
            continue
        for u in adj.pop(v):
            adj[u].discard(v)
            if len(adj[u]) < min_degree:
                todo.append(u)
    return adj


# --- subdivisions ---------------------------------------------------------------

def _twins(H: nx.Graph, a: int, b: int) -> bool:
    return set(H[a]) - {b} == set(H[b]) - {a}


def _search_order(H: nx.Graph) -> list[int]:
    deg = dict(H.degree())
    order = [max(H, key=lambda h: (deg[h], -h))]
    while len(order) < len(H):
        placed = set(order)
        order.append(max((h for h in H if h not in placed),
                         key=lambda h: (len(placed & set(H[h])), deg[h], -h)))
    return order


def _find_subdivision(adj: dict[int, set[int]], H: nx.Graph, clock: _Clock):
    order = _search_order(H)
    hdeg = dict(H.degree())
    earlier_twins = {h: [g for g in order[:i] if _twins(H, g, h)] for i, h in enumerate(order)}
    candidates = {h: sorted(v for v in adj if len(adj[v]) >= hdeg[h]) for h in H}

    phi: dict[int, int] = {}
    owner: dict[int, int] = {}  # host branch vertex -> pattern vertex
    occupied: set[int] = set()
    routed: dict[tuple[int, int], tuple[int, ...]] = {}

    def unrouted(h: int) -> list[int]:
        return [g for g in H[h] if (min(g, h), max(g, h)) not in routed]

    def degrees_ok() -> bool:
        for h, v in phi.items():
            need = unrouted(h)
            if not need:
                continue
            targets = {phi[g] for g in need if g in phi}
            usable = sum(1 for w in adj[v] if w not in occupied or w in targets)
            if usable < len(need):
                return False
        return True

    def induced_paths(s: int, t: int) -> Iterator[tuple[int, ...]]:
        if t in adj[s]:
            yield (s, t)
            return
        path = [s]
        on_path = {s}

        def extend():
            clock.tick()
            x = path[-1]
            for w in sorted(adj[x]):
                if w in on_path:
                    continue
                if any(w in adj[p] for p in path[:-1]):
                    continue
                if w == t:
                    yield tuple(path) + (t,)
                    continue
                if w in occupied:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend()
                path.pop()
                on_path.discard(w)

        yield from extend()

    def place(i: int):
        if i == len(order):
            return dict(phi), dict(routed)
        h = order[i]
        floor = max((phi[g] for g in earlier_twins[h]), default=-1)
        for v in candidates[h]:
            clock.tick()
            if v in occupied or v <= floor:
                continue
            phi[h] = v
            owner[v] = h
            occupied.add(v)
            if degrees_ok():
                todo = [g for g in H[h] if g in phi and g != h]
                found = route(i, h, todo, 0)
                if found:
                    return found
            occupied.discard(v)
            del owner[v]
            del phi[h]
        return None

    def route(i: int, h: int, todo: list[int], j: int):
        if j == len(todo):
            return place(i + 1)
        g = todo[j]
        key = (min(g, h), max(g, h))
        s, t = (phi[key[0]], phi[key[1]])
        for p in induced_paths(s, t):
            inner = p[1:-1]
            occupied.update(inner)
            routed[key] = p
            if degrees_ok():
                found = route(i, h, todo, j + 1)
                if found:
                    return found
            del routed[key]
            occupied.difference_update(inner)
        return None

    return place(0)


def has_subdivision(G: nx.Graph, H: str, budget: float | None = DEFAULT_BUDGET) -> SearchResult:
    """Does ``G`` contain a subdivision of the named pattern as a subgraph?"""
    name, P = _resolve(H)
    if G.number_of_edges() < P.number_of_edges() or not _degree_profile_ok(G, P):
        return SearchResult(False)
    adj = _core(G, 2)
    if len(adj) > MAX_SEARCH_VERTICES:
        return SearchResult(None)
    clock = _Clock(budget)
    try:
        found = _find_subdivision(adj, P, clock)
    except BudgetExceeded:
        return SearchResult(None)
    if found is None:
        return SearchResult(False)
    phi, routed = found
    w = MinorWitness(name, {h: frozenset({v}) for h, v in phi.items()}, routed)
    return SearchResult(True, w)


# --- minors -----------------------------------------------------------------------

def _reduce(adj, prov, min_degree: int):
    """Drop vertices too weak to matter for a pattern of the given minimum degree.

    Vertices of degree <= 1 are deleted; when the pattern has minimum degree
    at least 3, a degree-2 vertex is contracted into a neighbour.  Both steps
    preserve whether the pattern is a minor.
    """
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            d = len(adj[v])
            if d <= 1 and min_degree >= 2:
                for u in adj.pop(v):
                    adj[u].discard(v)
                del prov[v]
                changed = True
            elif d == 2 and min_degree >= 3:
                a, b = sorted(adj[v])
                adj[a].discard(v)
                adj[b].discard(v)
                del adj[v]
                adj[a].add(b)
                adj[b].add(a)
                prov[a] = prov[a] | prov.pop(v)
                changed = True
    return adj, prov


def _contract(adj, prov, u: int, v: int):
    new = {x: set(s) for x, s in adj.items() if x != v}
    for w in adj[v]:
        if w == u:
            new[u].discard(v)
            continue
        new[w].discard(v)
        new[w].add(u)
        new[u].add(w)
    p = dict(prov)
    p[u] = p[u] | p.pop(v)
    return new, p


def _spanning_embedding(adj: Mapping[int, set[int]], H: nx.Graph, order: list[int],
                        clock: _Clock) -> dict[int, int] | None:
    """Injective map of H into a host with the same vertex count, edges to edges."""
    hosts = sorted(adj)
    index = {q: i for i, q in enumerate(hosts)}
    nbr = [sum(1 << index[w] for w in adj[q]) for q in hosts]
    deg = [len(adj[q]) for q in hosts]
    hdeg = dict(H.degree())
    earlier = {h: [g for g in H[h] if g in order[:i]] for i, h in enumerate(order)}
    phi: dict[int, int] = {}

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        h = order[i]
        cand = ((1 << len(hosts)) - 1) & ~used
        for g in earlier[h]:
            cand &= nbr[phi[g]]
        while cand:
            low = cand & -cand
            cand ^= low
            j = low.bit_length() - 1
            if deg[j] < hdeg[h]:
                continue
            clock.tick()
            phi[h] = j
            if rec(i + 1, used | low):
                return True
            del phi[h]
        return False

    if not rec(0, 0):
        return None
    return {h: hosts[j] for h, j in phi.items()}


def _find_minor(adj, prov, H: nx.Graph, clock: _Clock, class_bounds: bool):
    k = len(H)
    mh = H.number_of_edges()
    min_degree = min(d for _, d in H.degree())
    H_planar = nx.check_planarity(H)[0]
    H_apex = is_apex(H)
    seen: set[frozenset] = set()
    order = _search_order(H)

    def dfs(adj, prov):
        clock.tick()
        adj, prov = _reduce(adj, prov, min_degree)
        n = len(adj)
        m = sum(len(s) for s in adj.values()) // 2
        # each further contraction loses at least one edge
        if n < k or m - (n - k) < mh:
            return None
        key = frozenset((u, v) for u in adj for v in adj[u] if u < v)
        if key in seen:
            return None
        seen.add(key)
        if n == k:
            phi = _spanning_embedding(adj, H, order, clock)
            return None if phi is None else {h: prov[q] for h, q in phi.items()}
        if class_bounds and not H_planar and _planar(adj):
            return None
        if class_bounds and not H_apex:
            Q = nx.Graph(key)
            if is_apex(Q):
                return None
        edges = sorted(key, key=lambda e: (len(adj[e[0]] & adj[e[1]]), e))
        for u, v in edges:
            found = dfs(*_contract(adj, prov, u, v))
            if found:
                return found
        return None

    return dfs(adj, prov)


def has_minor(G: nx.Graph, H: str, budget: float | None = DEFAULT_BUDGET,
              class_bounds: bool = True) -> SearchResult:
    """Is the named pattern a minor of ``G``?

    The search contracts edges of each connected component down to the
    pattern's vertex count and then looks for the pattern as a spanning
    subgraph.  Branches are cut by edge counting and, with ``class_bounds``,
    whenever the current graph is planar (resp. apex) while the pattern is
    not: both classes are closed under taking minors.
    """
    name, P = _resolve(H)
    if len(G) < len(P) or G.number_of_edges() < P.number_of_edges():
        return SearchResult(False)
    clock = _Clock(budget)
    for comp in sorted(nx.connected_components(G), key=min):
        if len(comp) < len(P):
            continue
        if len(comp) > MAX_SEARCH_VERTICES:
            return SearchResult(None)
        adj = {v: set(G[v]) for v in comp}
        prov = {v: frozenset({v}) for v in comp}
        try:
            found = _find_minor(adj, prov, P, clock, class_bounds)
        except BudgetExceeded:
            return SearchResult(None)
        if found:
            return SearchResult(True, MinorWitness(name, found))
    return SearchResult(False)


class LinklessResult(NamedTuple):
    passed: bool | None
    pattern: str | None = None
    witness: MinorWitness | None = None


def linkless_necessary(G: nx.Graph, budget: float | None = DEFAULT_BUDGET) -> LinklessResult:
    """Check that no Petersen-family graph is a minor of ``G``.

    Failing proves ``G`` is not linklessly embeddable; passing is only the
    necessary condition.  ``passed`` is None if some search ran out of budget
    and no minor was found.
    """
    unsure = False
    for name in PETERSEN_FAMILY_NAMES:
        res = has_minor(G, name, budget)
        if res.found:
            return LinklessResult(False, name, res.witness)
        unsure |= res.inconclusive
    return LinklessResult(None if unsure else True)


class EdgeBound(NamedTuple):
    edges: int
    bound: int
    within: bool
    near_boundary: bool = False


def edge_bound_check(G: nx.Graph, regime: str) -> EdgeBound:
    """Compare the edge count with the extremal bound of ``regime``.

    Regimes: ``planar`` (3n - 6), ``no-K5-subdiv`` (3n) and
    ``no-K6-subdiv`` (4n).
    """
    n, m = G.number_of_nodes(), G.number_of_edges()
    if regime == "planar":
        if n < 3:
            raise ValueError("planar edge bound needs at least 3 vertices")
        bound = 3 * n - 6
    elif regime == "no-K5-subdiv":
        bound = MADER_K5_CONSTANT * n
    elif regime == "no-K6-subdiv":
        bound = MADER_K6_CONSTANT * n
    else:
        raise ValueError(f"unknown regime {regime!r}")
    near = regime == "no-K6-subdiv" and bound - MADER_NEAR_SLACK <= m
    return EdgeBound(m, bound, m <= bound, near)


__all__ = [
    "BudgetExceeded", "DEFAULT_BUDGET", "EdgeBound", "LinklessResult", "MinorWitness",
    "PlanarityResult", "SearchResult", "WitnessError", "complex_from_graph", "edge_bound_check",
    "graph_from_complex", "has_minor", "has_subdivision", "is_apex", "is_planar",
    "is_valid_witness", "linkless_necessary", "validate_witness",
]
