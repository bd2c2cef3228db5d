"""Integer chains of oriented simplices.

A chain maps canonical (sorted) vertex tuples to non-zero integers.  An
ordered vertex sequence is turned into a canonical key plus the sign of the
sorting permutation, so a chain never stores orientation separately.
Vertices can be anything totally ordered and hashable; the geometric code
uses tuples of rationals.

Sign convention: the boundary of ``[v0, ..., vk]`` is
``sum_i (-1)^i [v0, ..., vi^, ..., vk]``.  The face opposite the first vertex
therefore enters with ``+``, and coning a chain by putting the apex first
gives ``boundary(cone(v, c)) == c - cone(v, boundary(c))``.
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence


class ChainError(ValueError):
    pass


class OrientedSimplex(NamedTuple):
    base: tuple
    sign: int


def orient(vertices: Sequence[Hashable]) -> OrientedSimplex:
    """Canonical key and permutation parity of an ordered vertex sequence."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise ChainError(f"repeated vertex in {vs}")
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(vs)):
        j = i
        while j > 0 and vs[j - 1] > vs[j]:
            vs[j - 1], vs[j] = vs[j], vs[j - 1]
            sign = -sign
            j -= 1
    return OrientedSimplex(tuple(vs), sign)


class Chain:
    """Finite formal sum of oriented simplices of one dimension."""

    __slots__ = ("_terms", "degree")

    def __init__(self, terms: Mapping[tuple, int] | None = None, degree: int | None = None):
        clean = {}
        dims = set()
        for key, coef in (terms or {}).items():
            if coef:
                canon = orient(key)
                clean[canon.base] = clean.get(canon.base, 0) + canon.sign * coef
                dims.add(len(key) - 1)
        clean = {k: c for k, c in clean.items() if c}
        if len(dims) > 1:
            raise ChainError(f"mixed dimensions {sorted(dims)} in one chain")
        if dims:
            (d,) = dims
            if degree is not None and degree != d:
                raise ChainError(f"declared degree {degree} but simplices have dimension {d}")
            degree = d
        if degree is None:
            raise ChainError("the zero chain needs an explicit degree")
        self._terms = clean
        self.degree = degree

    @classmethod
    def of(cls, *oriented: Sequence[Hashable], coefficient: int = 1) -> Chain:
        """Sum of the given ordered simplices, each with the same coefficient."""
        if not oriented:
            raise ChainError("Chain.of needs at least one simplex")
        terms: dict[tuple, int] = {}
        for vs in oriented:
            o = orient(vs)
            terms[o.base] = terms.get(o.base, 0) + o.sign * coefficient
        return cls(terms, degree=len(oriented[0]) - 1)

    @classmethod
    def zero(cls, degree: int) -> Chain:
        return cls({}, degree)

    @classmethod
    def cycle(cls, path: Sequence[Hashable]) -> Chain:
        """1-chain ``[p0,p1] + [p1,p2] + ... + [pn,p0]`` around a closed polygon."""
        n = len(path)
        return cls.of(*[(path[i], path[(i + 1) % n]) for i in range(n)])

    def items(self) -> Iterator[tuple[tuple, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, vertices: Sequence[Hashable]) -> int:
        o = orient(vertices)
        return o.sign * self._terms.get(o.base, 0)

    def support(self) -> frozenset[tuple]:
        return frozenset(self._terms)

    def vertices(self) -> frozenset:
        return frozenset(v for key in self._terms for v in key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def _check(self, other: Chain) -> None:
        if self.degree != other.degree:
            raise ChainError(f"cannot add chains of degree {self.degree} and {other.degree}")

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Chain(out, self.degree)

    def __neg__(self) -> Chain:
        return Chain({k: -c for k, c in self._terms.items()}, self.degree)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __mul__(self, scalar: int) -> Chain:
        return Chain({k: scalar * c for k, c in self._terms.items()}, self.degree)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return f"Chain(0, degree={self.degree})"
        parts = []
        for k, c in self.items():
            name = "".join(map(str, k)) if all(isinstance(v, int) and v < 10 for v in k) else str(k)
            parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}[{name}]")
        return "Chain(" + " ".join(parts).lstrip("+") + ")"


def boundary(c: Chain) -> Chain:
    """Alternating-sign boundary; a 0-chain maps to the empty chain of degree -1."""
    if c.degree <= 0:
        return Chain.zero(c.degree - 1)
    out: dict[tuple, int] = {}
    for key, coef in c.items():
        for i in range(len(key)):
            face = key[:i] + key[i + 1:]
            out[face] = out.get(face, 0) + (-1) ** i * coef
    return Chain(out, c.degree - 1)


def is_cycle(c: Chain) -> bool:
    return not boundary(c)


def cone_chain(apex: Hashable, c: Chain) -> Chain:
    """Cone over ``c`` with ``apex`` placed first in every simplex."""
    if apex in c.vertices():
        raise ChainError(f"apex {apex!r} is a vertex of the chain")
    return Chain({(apex,) + key: coef for key, coef in c.items()}, c.degree + 1)


def chain_from_simplices(simplices: Iterable[Sequence[Hashable]], degree: int) -> Chain:
    terms: dict[tuple, int] = {}
    for vs in simplices:
        o = orient(vs)
        terms[o.base] = terms.get(o.base, 0) + o.sign
    return Chain(terms, degree)
