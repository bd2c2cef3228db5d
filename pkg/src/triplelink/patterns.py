"""Fixed forbidden patterns: K5, K_{3,3} and the seven Petersen-family graphs.

The family is stored as literal edge lists.  :func:`delta_wye_closure`
regenerates it from K6 so the literal data can be checked against the
definition (closure of K6 under triangle-to-star and star-to-triangle moves).
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

_K6 = list(combinations(range(6), 2))

# Edge lists; every family member has 15 edges.
PETERSEN_FAMILY_EDGES: dict[str, list[tuple[int, int]]] = {
    "K6": _K6,
    # K6 with one triangle replaced by a star
    "G7": [(0, 3), (0, 4), (0, 5), (0, 6), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3),
           (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (4, 5)],
    "K331": [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 4),
             (2, 6), (3, 4), (3, 6), (4, 5), (4, 6), (5, 6)],
    "G8": [(0, 5), (0, 6), (0, 7), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4),
           (2, 5), (2, 6), (3, 5), (3, 7), (4, 5), (4, 7)],
    # K_{4,4} with a single edge removed
    "K44-e": [(0, 3), (0, 4), (0, 5), (0, 6), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3),
              (2, 4), (2, 5), (2, 6), (3, 7), (4, 7), (5, 7)],
    "G9": [(0, 5), (0, 6), (0, 7), (1, 4), (1, 6), (1, 8), (2, 3), (2, 4), (2, 5),
           (2, 6), (3, 7), (3, 8), (4, 5), (4, 7), (5, 8)],
    "Petersen": [(0, 5), (0, 6), (0, 7), (1, 4), (1, 6), (1, 8), (2, 3), (2, 6), (2, 9),
                 (3, 7), (3, 8), (4, 7), (4, 9), (5, 8), (5, 9)],
}

PETERSEN_FAMILY_NAMES: tuple[str, ...] = tuple(PETERSEN_FAMILY_EDGES)

PATTERN_NAMES: tuple[str, ...] = ("K5", "K33") + PETERSEN_FAMILY_NAMES


def pattern_graph(name: str) -> nx.Graph:
    """A fresh copy of the named pattern on vertices 0..k-1."""
    if name == "K5":
        return nx.complete_graph(5)
    if name == "K33":
        return nx.Graph((a, b) for a in range(3) for b in range(3, 6))
    try:
        edges = PETERSEN_FAMILY_EDGES[name]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; choose from {', '.join(PATTERN_NAMES)}") from None
    return nx.Graph(edges)


def petersen_family() -> list[nx.Graph]:
    return [pattern_graph(name) for name in PETERSEN_FAMILY_NAMES]


def _delta_wye_moves(G: nx.Graph) -> list[nx.Graph]:
    out = []
    for tri in (c for c in nx.enumerate_all_cliques(G) if len(c) == 3):
        H = G.copy()
        H.remove_edges_from(combinations(tri, 2))
        centre = max(H) + 1
        H.add_edges_from((centre, t) for t in tri)
        out.append(H)
    for v in G:
        nbrs = list(G[v])
        if len(nbrs) == 3 and not any(G.has_edge(a, b) for a, b in combinations(nbrs, 2)):
            H = G.copy()
            H.remove_node(v)
            H.add_edges_from(combinations(nbrs, 2))
            out.append(H)
    return [nx.convert_node_labels_to_integers(H) for H in out]


def delta_wye_closure(start: nx.Graph | None = None) -> list[nx.Graph]:
    """All graphs reachable from ``start`` (default K6) by ΔY and YΔ moves, up to isomorphism."""
    start = nx.complete_graph(6) if start is None else start
    found = [start]
    todo = [start]
    while todo:
        for H in _delta_wye_moves(todo.pop()):
            if not any(nx.is_isomorphic(H, F) for F in found):
                found.append(H)
                todo.append(H)
    return found


def check_petersen_family() -> None:
    """Raise if the literal family data disagrees with the ΔY closure of K6."""
    closure = delta_wye_closure()
    family = petersen_family()
    if len(closure) != 7:
        raise AssertionError(f"ΔY closure of K6 has {len(closure)} members, expected 7")
    for name, G in zip(PETERSEN_FAMILY_NAMES, family):
        if not any(nx.is_isomorphic(G, F) for F in closure):
            raise AssertionError(f"{name} is not obtained from K6 by ΔY/YΔ moves")
    for F in closure:
        if not any(nx.is_isomorphic(G, F) for G in family):
            raise AssertionError("a ΔY descendant of K6 is missing from the stored family")
