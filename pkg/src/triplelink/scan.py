"""Obstruction scans over triple intersections of vertex links.

If a d-complex embeds in R^{2d}, the common link of any three vertices is
constrained one dimension down; iterating reaches graphs, where a concrete
forbidden pattern is searched for.  A hit at the bottom means the complex
contains a homeomorph of ``F * [3] * ... * [3]`` for the pattern ``F`` found,
which is a Grünbaum-type non-embeddable complex.  The scan therefore proves
non-embeddability when it reports an obstruction and proves nothing when it
passes.

Mode summary:

``embed-2d``
    Graphs at the bottom must be planar.  A K5 or K33 subdivision ``F``
    yields ``F * [3]^(d-1)``, non-embeddable in R^{2d} either way.
``linkless-2d+1``
    Graphs at the bottom must avoid K33 subdivisions.  For an input graph
    (d = 1) the Petersen family minor test is used instead.
``embed-3``
    2-complexes only: every single vertex link must be planar.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import networkx as nx

from .complex import ComplexError, SimplicialComplex, compact_relabel, intersection, link
from .graphs import (
    DEFAULT_BUDGET,
    MADER_K6_CONSTANT,
    MinorWitness,
    SearchResult,
    WitnessError,
    graph_from_complex,
    has_subdivision,
    is_planar,
    linkless_necessary,
    validate_witness,
)

PASS_TEXT = "no obstruction found (necessary conditions hold)"


class ScanMode(str, Enum):
    EMBED_2D = "embed-2d"
    LINKLESS = "linkless-2d+1"
    EMBED_3 = "embed-3"


class Verdict(str, Enum):
    PASS = "pass"
    OBSTRUCTION = "obstruction"
    INCONCLUSIVE = "inconclusive"


class ScanError(ComplexError):
    pass


def triple_link_intersection(K: SimplicialComplex, u: int, v: int, w: int) -> SimplicialComplex:
    if len({u, v, w}) != 3:
        raise ScanError(f"vertices must be distinct, got {u}, {v}, {w}")
    return intersection(link(K, u), link(K, v), link(K, w))


@dataclass
class ObstructionReport:
    mode: ScanMode
    verdict: Verdict
    # triples (or the single vertex in embed-3 mode), each in the labels of its level
    witness_chain: list[tuple[int, ...]] = field(default_factory=list)
    # per level: map from the previous level's labels to compact labels 0..n-1
    relabelings: list[dict[int, int]] = field(default_factory=list)
    terminal_pattern: str | None = None
    terminal_witness: MinorWitness | None = None
    statistics: dict = field(default_factory=dict)

    @property
    def verdict_text(self) -> str:
        if self.verdict is Verdict.PASS:
            return PASS_TEXT
        if self.verdict is Verdict.OBSTRUCTION:
            return f"obstruction: {self.terminal_pattern} at depth {len(self.witness_chain)}"
        return "inconclusive: a graph-level search ran out of budget"

    def _back_maps(self) -> list[dict[int, int]]:
        # entry i maps labels of level i+1 back to the input labels
        out: list[dict[int, int]] = []
        for m in self.relabelings:
            prev = out[-1] if out else None
            out.append({new: (prev[old] if prev else old) for old, new in m.items()})
        return out

    def original_chain(self) -> list[tuple[int, ...]]:
        """Witness chain rewritten in the vertex labels of the input complex."""
        backs = self._back_maps()
        return [tuple(backs[i - 1][x] for x in step) if i else tuple(step)
                for i, step in enumerate(self.witness_chain)]

    def to_json_dict(self) -> dict:
        out = {
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "witness_chain": [list(t) for t in self.witness_chain],
            "terminal_pattern": self.terminal_pattern,
            "statistics": dict(self.statistics),
            "verdict_text": self.verdict_text,
            "witness_chain_original": [list(t) for t in self.original_chain()],
            "relabelings": [[[old, new] for old, new in sorted(m.items())] for m in self.relabelings],
            "terminal_witness": None,
            "terminal_witness_original": None,
        }
        if self.terminal_witness is not None:
            out["terminal_witness"] = self.terminal_witness.to_json()
            backs = self._back_maps()
            w = self.terminal_witness.relabel(backs[-1]) if backs else self.terminal_witness
            out["terminal_witness_original"] = w.to_json()
        return out


class _Stats:
    def __init__(self):
        self.triples_scanned = 0
        self.max_depth = 0
        self.largest_intersection = 0
        self.mader_screen_hits = 0
        self.inconclusive = 0

    def as_dict(self, elapsed_ms: int) -> dict:
        return {
            "triples_scanned": self.triples_scanned,
            "max_depth": self.max_depth,
            "elapsed_ms": elapsed_ms,
            "largest_intersection": self.largest_intersection,
            "mader_screen_hits": self.mader_screen_hits,
            "inconclusive_searches": self.inconclusive,
        }


def _graph_test(G: nx.Graph, mode: ScanMode, depth: int, budget: float | None,
                stats: _Stats | None = None) -> SearchResult:
    """found=True means the graph is forbidden at this point of the descent."""
    if mode is not ScanMode.LINKLESS:
        res = is_planar(G)
        return SearchResult(not res.planar, res.witness)
    if depth == 0:
        res = linkless_necessary(G, budget)
        if res.passed is None:
            return SearchResult(None)
        return SearchResult(not res.passed, res.witness)
    planar = is_planar(G)
    if planar.planar:
        return SearchResult(False)
    if planar.witness.pattern == "K33":
        return SearchResult(True, planar.witness)
    # more than 4n edges forces a K6 subdivision, hence a K33 one
    if stats is not None and G.number_of_edges() > MADER_K6_CONSTANT * G.number_of_nodes():
        stats.mader_screen_hits += 1
    return has_subdivision(G, "K33", budget)


class _Hit(NamedTuple):
    chain: list[tuple[int, ...]]
    maps: list[dict[int, int]]
    witness: MinorWitness


def _descend(K: SimplicialComplex, k: int, depth: int, mode: ScanMode,
             budget: float | None, stats: _Stats) -> _Hit | None:
    """Search ``K`` (compactly labelled, treated as a k-complex) for a forbidden chain."""
    stats.max_depth = max(stats.max_depth, depth)
    if k == 1:
        res = _graph_test(graph_from_complex(K), mode, depth, budget, stats)
        if res.found:
            return _Hit([], [], res.witness)
        if res.inconclusive:
            stats.inconclusive += 1
        return None
    links = {v: link(K, v) for v in sorted(K.vertices)}
    verts = [v for v, L in links.items() if L.dimension >= k - 1]
    for i, u in enumerate(verts):
        for j in range(i + 1, len(verts)):
            v = verts[j]
            Luv = intersection(links[u], links[v])
            if Luv.dimension < k - 1:
                continue
            for w in verts[j + 1:]:
                T = intersection(Luv, links[w])
                stats.triples_scanned += 1
                stats.largest_intersection = max(stats.largest_intersection, len(T.vertices))
                if T.dimension < k - 1:
                    continue
                Tc, m = compact_relabel(T)
                hit = _descend(Tc, k - 1, depth + 1, mode, budget, stats)
                if hit:
                    return _Hit([(u, v, w)] + hit.chain, [m] + hit.maps, hit.witness)
    return None


def scan(K: SimplicialComplex, mode: ScanMode | str, budget: float | None = DEFAULT_BUDGET) -> ObstructionReport:
    """Run the link-recursive necessary condition for ``mode`` on ``K``.

    Triples are visited in lexicographic order at every level and the first
    hit is returned, so the witness chain is the lexicographically smallest
    one.  ``budget`` bounds each graph-level search in seconds.
    """
    mode = ScanMode(mode)
    d = K.dimension
    if mode is ScanMode.EMBED_3 and d != 2:
        raise ScanError(f"embed-3 mode needs a 2-complex, got dimension {d}")
    if d < 1:
        raise ScanError(f"{mode.value} mode needs dimension at least 1, got {d}")
    started = time.perf_counter()
    stats = _Stats()
    report = ObstructionReport(mode, Verdict.PASS)

    if mode is ScanMode.EMBED_3:
        stats.max_depth = 1
        for v in sorted(K.vertices):
            Lc, m = compact_relabel(link(K, v))
            res = _graph_test(graph_from_complex(Lc), mode, 1, budget)
            if res.found:
                report.verdict = Verdict.OBSTRUCTION
                report.witness_chain = [(v,)]
                report.relabelings = [m]
                report.terminal_pattern = res.witness.pattern
                report.terminal_witness = res.witness
                break
    else:
        hit = _descend(K, d, 0, mode, budget, stats)
        if hit:
            report.verdict = Verdict.OBSTRUCTION
            report.witness_chain = hit.chain
            report.relabelings = hit.maps
            report.terminal_pattern = hit.witness.pattern
            report.terminal_witness = hit.witness
        elif stats.inconclusive:
            report.verdict = Verdict.INCONCLUSIVE
    report.statistics = stats.as_dict(round((time.perf_counter() - started) * 1000))
    return report


def terminal_graph(K: SimplicialComplex, report: ObstructionReport) -> nx.Graph:
    """Rebuild the bottom graph of a report by walking its witness chain."""
    cur = K
    for i, step in enumerate(report.witness_chain):
        if report.mode is ScanMode.EMBED_3:
            (v,) = step
            T = link(cur, v)
        else:
            T = triple_link_intersection(cur, *step)
        cur, m = compact_relabel(T)
        if m != report.relabelings[i]:
            raise ScanError(f"relabelling at level {i} does not match the report")
    return graph_from_complex(cur)


def replay(K: SimplicialComplex, report: ObstructionReport, budget: float | None = DEFAULT_BUDGET) -> bool:
    """Check an obstruction report against ``K`` from scratch.

    The witness chain is walked level by level, the recorded terminal witness
    is validated on the resulting graph, and the graph test is re-run.
    """
    if report.verdict is not Verdict.OBSTRUCTION or report.terminal_witness is None:
        return False
    try:
        G = terminal_graph(K, report)
        validate_witness(G, report.terminal_witness)
    except (ComplexError, WitnessError):
        return False
    depth = 1 if report.mode is ScanMode.EMBED_3 else len(report.witness_chain)
    return bool(_graph_test(G, report.mode, depth, budget).found)


class TriangleBound(NamedTuple):
    f2: int
    bound: int
    within: bool


def max_triangles_bound_check(K: SimplicialComplex) -> TriangleBound:
    """Compare the triangle count of a 2-complex with n^2 - 3n."""
    if K.dimension != 2:
        raise ScanError(f"triangle bound needs a 2-complex, got dimension {K.dimension}")
    n = len(K.vertices)
    f2 = len(K.faces(2))
    bound = n * n - 3 * n
    return TriangleBound(f2, bound, f2 <= bound)
