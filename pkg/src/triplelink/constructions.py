"""Generators for the named complexes and graphs.

All generators are deterministic; the random ones take an explicit seed.
"""

from __future__ import annotations

import random
from itertools import combinations

import networkx as nx

from .complex import ComplexError, SimplicialComplex, join
from .graphs import is_planar
from .patterns import petersen_family as _family


def complete_complex(d: int, m: int) -> SimplicialComplex:
    """Every (d+1)-subset of ``range(m)``: the complete d-complex on m vertices."""
    if d < 0 or m < d + 1:
        raise ComplexError(f"complete d-complex needs m >= d+1 (got d={d}, m={m})")
    return SimplicialComplex(frozenset(combinations(range(m), d + 1)))


def grunbaum_join(dims: list[int] | tuple[int, ...]) -> SimplicialComplex:
    """Join of complete complexes K^{d_i} on 2 d_i + 3 vertices, in the given order.

    Factor i occupies the next block of consecutive labels, so ``(1, 0)``
    gives K5 on 0..4 joined with [3] on 5, 6, 7.
    """
    if not dims:
        raise ComplexError("need at least one factor")
    if any(d < 0 for d in dims):
        raise ComplexError("factor dimensions must be non-negative")
    K = complete_complex(dims[0], 2 * dims[0] + 3)
    for d in dims[1:]:
        K, _ = join(K, complete_complex(d, 2 * d + 3))
    return K


def _gale_even(facet: tuple[int, ...], n: int) -> bool:
    inside = set(facet)
    for i in range(n):
        for j in range(i + 1, n):
            if i in inside or j in inside:
                continue
            between = sum(1 for x in facet if i < x < j)
            if between % 2:
                return False
    return True


def cyclic_polytope_boundary(n: int, drop_facet: tuple[int, ...] | None = None) -> SimplicialComplex:
    """Boundary of the cyclic 4-polytope on vertices 0..n-1 (Gale's evenness rule).

    ``drop_facet`` removes one tetrahedron; the remaining faces are kept.
    """
    if n < 6:
        raise ComplexError(f"cyclic 4-polytope boundary needs n >= 6, got {n}")
    facets = {f for f in combinations(range(n), 4) if _gale_even(f, n)}
    if drop_facet is None:
        return SimplicialComplex(frozenset(facets))
    drop = tuple(sorted(drop_facet))
    if drop not in facets:
        raise ComplexError(f"{drop} is not a facet")
    facets.discard(drop)
    # the triangles of the dropped facet stay, as faces of its neighbours
    return SimplicialComplex(frozenset(facets))


def double_cone(G: nx.Graph) -> SimplicialComplex:
    """Triangles ``{p,u,v}`` and ``{q,u,v}`` for every edge; apexes are max+1 and max+2."""
    if G.number_of_edges() == 0:
        raise ComplexError("double cone needs at least one edge")
    if nx.number_of_selfloops(G):
        raise ComplexError("graph must be simple")
    p = max(G) + 1
    q = p + 1
    tris = [tuple(sorted((u, v))) + (a,) for u, v in G.edges() for a in (p, q)]
    isolated = [(v, a) for v in G if G.degree(v) == 0 for a in (p, q)]
    return SimplicialComplex.from_facets(tris + isolated)


def staircase_complex(a: int, b: int) -> SimplicialComplex:
    """Join of a path on ``a`` vertices with a path on ``b`` vertices.

    This is the triangulation spanned by points on two skew lines: the
    tetrahedra are ``{u_i, u_{i+1}, w_j, w_{j+1}}``, (a-1)(b-1) of them.
    Labels: u_i = i, w_j = a + j.
    """
    if a < 2 or b < 2:
        raise ComplexError("staircase needs a, b >= 2")
    return SimplicialComplex(frozenset(
        (i, i + 1, a + j, a + j + 1) for i in range(a - 1) for j in range(b - 1)
    ))


def apex_graph(G: nx.Graph) -> nx.Graph:
    """Add a vertex ``max+1`` adjacent to everything; ``G`` must be planar."""
    if not is_planar(G).planar:
        raise ValueError("apex_graph needs a planar input")
    H = G.copy()
    apex = max(G, default=-1) + 1
    H.add_edges_from((apex, v) for v in G)
    if len(G) == 0:
        H.add_node(apex)
    return H


def maximal_planar_graph(n: int, seed: int = 0) -> nx.Graph:
    """Random stacked triangulation: start from a triangle, insert into random faces."""
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(seed)
    G = nx.Graph([(0, 1), (1, 2), (0, 2)])
    faces = [(0, 1, 2), (0, 1, 2)]  # inner and outer face
    for v in range(3, n):
        x, y, z = faces.pop(rng.randrange(len(faces)))
        G.add_edges_from([(v, x), (v, y), (v, z)])
        faces += [(x, y, v), (y, z, v), (x, z, v)]
    return G


def grid_graph(rows: int, cols: int) -> nx.Graph:
    return nx.convert_node_labels_to_integers(nx.grid_2d_graph(rows, cols), ordering="sorted")


def petersen_family() -> list[nx.Graph]:
    return _family()
