"""Abstract simplicial complexes stored by their facets.

A simplex is a strictly increasing tuple of non-negative integer vertex
labels.  A :class:`SimplicialComplex` keeps only its inclusion-maximal faces;
the full face set is produced on demand by :meth:`SimplicialComplex.faces`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


class ScxParseError(ComplexError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical form of a vertex set: sorted, duplicate-free, non-empty."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise ComplexError("a simplex needs at least one vertex")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ComplexError(f"repeated vertex {a} in simplex")
    for v in vs:
        if not isinstance(v, int) or v < 0:
            raise ComplexError(f"vertex labels must be non-negative integers, got {v!r}")
    return vs


def _maximal(sets: Iterable[Simplex]) -> frozenset[Simplex]:
    kept: list[Simplex] = []
    by_vertex: dict[int, list[frozenset[int]]] = {}
    for s in sorted(set(sets), key=lambda t: (-len(t), t)):
        ss = frozenset(s)
        if any(ss <= other for other in by_vertex.get(s[0], ())):
            continue
        kept.append(s)
        for v in s:
            by_vertex.setdefault(v, []).append(ss)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of simplices, represented by its facets.

    The empty complex (no facets) is legal; it is what the link of an
    isolated vertex is.
    """

    facets: frozenset[Simplex] = field(default_factory=frozenset)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
        return cls(_maximal(simplex(f) for f in facets))

    @cached_property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.facets for v in f)

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @cached_property
    def _faces_by_dim(self) -> tuple[frozenset[Simplex], ...]:
        layers: list[set[Simplex]] = [set() for _ in range(self.dimension + 1)]
        for f in self.facets:
            for k in range(1, len(f) + 1):
                layers[k - 1].update(combinations(f, k))
        return tuple(frozenset(layer) for layer in layers)

    def faces(self, k: int | None = None) -> frozenset[Simplex]:
        """All faces, or only the k-dimensional ones."""
        if k is None:
            return frozenset().union(*self._faces_by_dim)
        if k < 0 or k > self.dimension:
            return frozenset()
        return self._faces_by_dim[k]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._faces_by_dim)

    def __contains__(self, sigma: object) -> bool:
        if not isinstance(sigma, tuple) or not sigma:
            return False
        s = set(sigma)
        return any(s <= set(f) for f in self.facets)

    def __le__(self, other: SimplicialComplex) -> bool:
        return all(f in other for f in self.facets)

    def relabel(self, mapping: Mapping[int, int]) -> SimplicialComplex:
        return SimplicialComplex.from_facets(
            [mapping[v] for v in f] for f in self.facets
        )

    def sorted_facets(self) -> list[Simplex]:
        return sorted(self.facets, key=lambda f: (len(f), f))

    def __repr__(self) -> str:
        shown = " ".join("".join(map(str, f)) if max(f) < 10 else "-".join(map(str, f))
                         for f in self.sorted_facets()[:12])
        more = "" if len(self.facets) <= 12 else f" ...(+{len(self.facets) - 12})"
        return f"SimplicialComplex(dim={self.dimension}, facets=[{shown}{more}])"


EMPTY = SimplicialComplex()


def closure(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """The complex generated by ``facets``; non-maximal inputs are absorbed."""
    facets = list(facets)
    if not facets:
        raise ComplexError("empty complex")
    return SimplicialComplex.from_facets(facets)


def _require_vertex(K: SimplicialComplex, v: int) -> None:
    if v not in K.vertices:
        raise ComplexError(f"unknown vertex {v}")


def star(K: SimplicialComplex, v: int) -> frozenset[Simplex]:
    """Open star: every face of ``K`` containing ``v``."""
    _require_vertex(K, v)
    out: set[Simplex] = set()
    for f in K.facets:
        if v in f:
            rest = [u for u in f if u != v]
            for k in range(len(rest) + 1):
                for tau in combinations(rest, k):
                    out.add(tuple(sorted(tau + (v,))))
    return frozenset(out)


def link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    _require_vertex(K, v)
    return SimplicialComplex(_maximal(
        tuple(u for u in f if u != v) for f in K.facets if v in f and len(f) > 1
    ))


def cone(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Join of ``K`` with the single vertex ``apex`` (which must be new)."""
    if apex in K.vertices:
        raise ComplexError(f"apex {apex} already a vertex of the complex")
    if K.is_empty:
        return SimplicialComplex(frozenset({(apex,)}))
    return SimplicialComplex(frozenset(tuple(sorted(f + (apex,))) for f in K.facets))


def join(K: SimplicialComplex, L: SimplicialComplex) -> tuple[SimplicialComplex, dict[int, int]]:
    """Join ``K * L``.

    ``L`` is relabelled so its smallest vertex sits just past the largest
    vertex of ``K``; the relabelling of ``L`` is returned with the result.
    """
    if K.is_empty or L.is_empty:
        shift = {v: v for v in L.vertices}
        return (L if K.is_empty else K), shift
    offset = max(K.vertices) + 1 - min(L.vertices)
    shift = {v: v + offset for v in sorted(L.vertices)}
    facets = frozenset(
        f + tuple(shift[v] for v in g) for f in K.facets for g in L.facets
    )
    return SimplicialComplex(facets), shift


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.f_vector()


def degree(K: SimplicialComplex, sigma: Iterable[int]) -> int:
    """Number of (k+1)-faces of ``K`` containing the k-face ``sigma``."""
    s = simplex(sigma)
    if s not in K:
        raise ComplexError(f"{s} is not a face of the complex")
    ss = set(s)
    extra: set[int] = set()
    for f in K.facets:
        if ss <= set(f):
            extra.update(u for u in f if u not in ss)
    return len(extra)


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0 or k > K.dimension:
        raise ComplexError(f"skeleton dimension {k} outside 0..{K.dimension}")
    out: set[Simplex] = set()
    for f in K.facets:
        if len(f) <= k + 1:
            out.add(f)
        else:
            out.update(combinations(f, k + 1))
    return SimplicialComplex(_maximal(out))


def intersection(*complexes: SimplicialComplex) -> SimplicialComplex:
    """Common subcomplex: the faces present in every argument."""
    if not complexes:
        raise ComplexError("intersection of no complexes")
    facets = complexes[0].facets
    for other in complexes[1:]:
        meets = set()
        other_sets = [(g, frozenset(g)) for g in other.facets]
        for f in facets:
            fs = frozenset(f)
            for _, gs in other_sets:
                common = fs & gs
                if common:
                    meets.add(tuple(sorted(common)))
        facets = _maximal(meets)
        if not facets:
            break
    return SimplicialComplex(frozenset(facets))


def compact_relabel(K: SimplicialComplex) -> tuple[SimplicialComplex, dict[int, int]]:
    """Relabel vertices to 0..n-1 preserving order."""
    mapping = {v: i for i, v in enumerate(sorted(K.vertices))}
    return K.relabel(mapping), mapping


class LinkCountIdentity(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def verify_link_count_identity(K: SimplicialComplex, k: int) -> LinkCountIdentity:
    """Compare (k+1) f_k with the total number of (k-1)-faces over all vertex links."""
    if k < 1 or k > K.dimension:
        raise ComplexError(f"k={k} outside 1..{K.dimension}")
    lhs = (k + 1) * len(K.faces(k))
    rhs = sum(len(link(K, v).faces(k - 1)) for v in K.vertices)
    return LinkCountIdentity(lhs, rhs, lhs == rhs)


def degree_histogram(K: SimplicialComplex) -> dict[int, int]:
    """How many vertices have each edge-degree."""
    counts = Counter(degree(K, (v,)) for v in K.vertices)
    return dict(sorted(counts.items()))


# --- ".scx" text format -----------------------------------------------------

def parse_scx(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vs = [int(tok) for tok in line.split()]
        except ValueError:
            raise ScxParseError(lineno, f"non-integer vertex in {line!r}") from None
        if any(v < 0 for v in vs):
            raise ScxParseError(lineno, "negative vertex id")
        if len(set(vs)) != len(vs):
            raise ScxParseError(lineno, f"duplicate vertex in {line!r}")
        facets.append(vs)
    if not facets:
        raise ComplexError("empty complex")
    return closure(facets)


def read_scx(path: str | Path) -> SimplicialComplex:
    return parse_scx(Path(path).read_text(encoding="utf-8"))


def format_scx(K: SimplicialComplex, comment: str | None = None) -> str:
    lines = [f"# {line}" for line in (comment or "").splitlines()]
    lines += [" ".join(map(str, f)) for f in K.sorted_facets()]
    return "\n".join(lines) + "\n"


def write_scx(K: SimplicialComplex, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_scx(K, comment), encoding="utf-8")
