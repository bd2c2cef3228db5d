"""Set systems, the triple-intersection counting bound, and exponent recursions.

For sets ``S_1..S_m`` over ``n`` elements with element degrees ``kappa_l``,

    sum_l C(kappa_l, 3) = sum_{i<j<k} |S_i & S_j & S_k|,

and if every triple intersection has at most ``f`` elements this forces
``t(S) = sum |S_i|`` to satisfy ``t^3 <= n^2 (6 C(m,3) f + 3 sum kappa^2)``.
Everything here is checked in exact integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import NamedTuple, Sequence

from .complex import SimplicialComplex
from .graphs import MADER_K5_CONSTANT


class SetSystemError(ValueError):
    pass


class TripleBoundViolation(SetSystemError):
    def __init__(self, triple: tuple[int, int, int], size: int, f: int):
        super().__init__(f"sets {triple} share {size} elements, more than f = {f}")
        self.triple = triple
        self.size = size


@dataclass(frozen=True)
class SetSystem:
    """Subsets of ``{0..ground_size-1}``; repeated sets are allowed."""

    ground_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.ground_size < 0:
            raise SetSystemError("ground size must be non-negative")
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for i, s in enumerate(self.sets):
            bad = [x for x in s if not (isinstance(x, int) and 0 <= x < self.ground_size)]
            if bad:
                raise SetSystemError(f"set {i} has elements outside the ground set: {sorted(bad)}")

    @property
    def m(self) -> int:
        return len(self.sets)

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Sorted multiset of sorted tuples, for comparing systems up to set order."""
        return tuple(sorted(tuple(sorted(s)) for s in self.sets))


def t_of(S: SetSystem) -> int:
    return sum(len(s) for s in S.sets)


class DegreeProfile(NamedTuple):
    kappa: tuple[int, ...]
    total: int
    mean: Fraction


def degree_profile(S: SetSystem) -> DegreeProfile:
    kappa = [0] * S.ground_size
    for s in S.sets:
        for x in s:
            kappa[x] += 1
    total = sum(kappa)
    mean = Fraction(total, S.ground_size) if S.ground_size else Fraction(0)
    return DegreeProfile(tuple(kappa), total, mean)


def triple_sum(S: SetSystem) -> int:
    """Brute force: sum over i<j<k of |S_i & S_j & S_k|."""
    return sum(len(a & b & c) for a, b, c in combinations(S.sets, 3))


class TripleIdentity(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def verify_triple_identity(S: SetSystem) -> TripleIdentity:
    lhs = sum(comb(k, 3) for k in degree_profile(S).kappa)
    rhs = triple_sum(S)
    return TripleIdentity(lhs, rhs, lhs == rhs)


def max_triple_intersection(S: SetSystem) -> tuple[int, tuple[int, int, int] | None]:
    best, where = 0, None
    for (i, a), (j, b), (k, c) in combinations(enumerate(S.sets), 3):
        size = len(a & b & c)
        if size > best:
            best, where = size, (i, j, k)
    return best, where


class Step(NamedTuple):
    name: str
    lhs: int
    relation: str
    rhs: int
    holds: bool


def _step(name: str, lhs: int, relation: str, rhs: int) -> Step:
    ok = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs}[relation]
    return Step(name, lhs, relation, rhs, ok)


@dataclass(frozen=True)
class LemmaChainReport:
    n: int
    m: int
    f: int
    t: int
    sum_kappa2: int
    sum_kappa3: int
    sum_binom3: int
    triple_sum: int
    binom_m3: int
    steps: tuple[Step, ...]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps)

    @property
    def t_cubed_bound(self) -> int:
        """The exact right-hand side of t^3 <= n^2 (6 C(m,3) f + 3 sum kappa^2)."""
        return self.n ** 2 * (6 * self.binom_m3 * self.f + 3 * self.sum_kappa2)

    def to_json_dict(self) -> dict:
        return {
            "holds": self.holds,
            "n": self.n,
            "m": self.m,
            "f": self.f,
            "t": self.t,
            "sum_kappa2": self.sum_kappa2,
            "sum_kappa3": self.sum_kappa3,
            "sum_binom3": self.sum_binom3,
            "triple_sum": self.triple_sum,
            "binom_m3": self.binom_m3,
            "t_cubed": self.t ** 3,
            "t_cubed_bound": self.t_cubed_bound,
            "steps": [
                {"name": s.name, "lhs": s.lhs, "relation": s.relation, "rhs": s.rhs, "holds": s.holds}
                for s in self.steps
            ],
        }


def verify_lemma_chain(S: SetSystem, f: int) -> LemmaChainReport:
    """Check each step of the counting argument exactly.

    Raises :class:`TripleBoundViolation` if three distinct sets share more
    than ``f`` elements.  The mean-degree steps are multiplied through by
    ``n^2`` so every comparison is between integers.
    """
    if f < 0:
        raise SetSystemError("f must be non-negative")
    worst, where = max_triple_intersection(S)
    if worst > f:
        raise TripleBoundViolation(where, worst, f)
    n, m = S.ground_size, S.m
    kappa = degree_profile(S).kappa
    t = sum(kappa)
    s2 = sum(k * k for k in kappa)
    s3 = sum(k ** 3 for k in kappa)
    sb = sum(comb(k, 3) for k in kappa)
    ts = triple_sum(S)
    cm3 = comb(m, 3)
    n2 = n * n
    steps = (
        _step("triple identity: sum C(kappa,3) = triple sum", sb, "==", ts),
        _step("(a) triple sum <= C(m,3) f", ts, "<=", cm3 * f),
        _step("(b) n kappa_mean^3 <= sum kappa^3, times n^2", t ** 3, "<=", n2 * s3),
        _step("expansion: 6 sum C(kappa,3) = sum k^3 - 3 sum k^2 + 2 sum k", 6 * sb, "==", s3 - 3 * s2 + 2 * t),
        _step("(c) 6 sum C(kappa,3) >= n kappa_mean^3 - 3 sum kappa^2, times n^2",
              6 * n2 * sb, ">=", t ** 3 - 3 * n2 * s2),
        _step("conclusion: t^3 <= n^2 (6 C(m,3) f + 3 sum kappa^2)",
              t ** 3, "<=", n2 * (6 * cm3 * f + 3 * s2)),
    )
    return LemmaChainReport(n, m, f, t, s2, s3, sb, ts, cm3, steps)


# --- exponents ----------------------------------------------------------------------

def exponent(d: int) -> Fraction:
    """e(d) = d + 1 - 3^-(d-1)."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    return Fraction(d + 1) - Fraction(1, 3 ** (d - 1))


def recursion_exponent(d: int) -> Fraction:
    """Exponent produced by iterating phi_d <= c n^(1+2d/3) phi_{d-1}^(1/3) from phi_1 = O(n)."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    e = Fraction(1)
    for k in range(2, d + 1):
        e = 1 + Fraction(2 * k, 3) + e / 3
    return e


def _ceil_root(N: int, q: int) -> int:
    """Smallest x >= 0 with x^q >= N."""
    lo, hi = 0, 1
    while hi ** q < N:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** q >= N:
            hi = mid
        else:
            lo = mid + 1
    return lo


class BoundFd(NamedTuple):
    exponent: Fraction
    ceiling: int | None


def bound_fd(n: int | None, d: int) -> BoundFd:
    """Exact exponent and, for given ``n``, the integer ceiling of n^e(d)."""
    e = exponent(d)
    if n is None:
        return BoundFd(e, None)
    if n < 1:
        raise ValueError("n must be at least 1")
    return BoundFd(e, _ceil_root(n ** e.numerator, e.denominator))


class RecursionTerm(NamedTuple):
    """phi_d(n) <= c^c_exp * base^base_exp * n^n_exp."""

    c_exp: Fraction
    base_exp: Fraction
    n_exp: Fraction

    def evaluate(self, n: float, c: float = 1.0, base: float = MADER_K5_CONSTANT) -> float:
        return c ** float(self.c_exp) * base ** float(self.base_exp) * n ** float(self.n_exp)


def recursion_term(d: int) -> RecursionTerm:
    """Closed form of the recursion with the constant ``c`` kept symbolic.

    Starts from phi_1(n) <= base * n, base being the edge constant for
    graphs without a K5 subdivision.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    c_exp, base_exp, n_exp = Fraction(0), Fraction(1), Fraction(1)
    for k in range(2, d + 1):
        c_exp = 1 + c_exp / 3
        base_exp = base_exp / 3
        n_exp = 1 + Fraction(2 * k, 3) + n_exp / 3
    return RecursionTerm(c_exp, base_exp, n_exp)


def evaluate_recursion(n: float, d: int, c: float = 1.0, base: float = MADER_K5_CONSTANT) -> float:
    return recursion_term(d).evaluate(n, c, base)


# --- generators ---------------------------------------------------------------------

def fano_plane() -> SetSystem:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return SetSystem(7, tuple(frozenset(l) for l in lines))


def dual(S: SetSystem) -> SetSystem:
    """T_l = indices of the sets containing element l; ground set {0..m-1}."""
    T: list[set[int]] = [set() for _ in range(S.ground_size)]
    for i, s in enumerate(S.sets):
        for x in s:
            T[x].add(i)
    return SetSystem(S.m, tuple(frozenset(t) for t in T))


def generate_system(kind: str, **params) -> SetSystem:
    """``random-uniform`` (n, m, p, seed), ``block-repeated`` (base, r) or ``dual`` (system)."""
    if kind == "random-uniform":
        n, m, p = params["n"], params["m"], params["p"]
        if n < 0 or m < 0 or not 0 <= p <= 1:
            raise SetSystemError("need n, m >= 0 and 0 <= p <= 1")
        rng = random.Random(params.get("seed", 0))
        return SetSystem(n, tuple(frozenset(x for x in range(n) if rng.random() < p) for _ in range(m)))
    if kind == "block-repeated":
        base, r = params["base"], params["r"]
        if r < 1:
            raise SetSystemError("r must be at least 1")
        return SetSystem(base.ground_size, base.sets * r)
    if kind == "dual":
        return dual(params["system"])
    raise SetSystemError(f"unknown kind {kind!r}")


# --- tightness complex ----------------------------------------------------------------

class TightnessComplex(NamedTuple):
    complex: SimplicialComplex
    edges: tuple[tuple[int, int], ...]  # element l of the ground set is edges[l]
    apexes: tuple[int, ...]  # apex of set i


def default_edge_identification(n: int) -> tuple[tuple[int, int], ...]:
    """The first ``n`` edges, lexicographically, of the smallest complete graph with n edges."""
    V = 2
    while comb(V, 2) < n:
        V += 1
    return tuple(combinations(range(V), 2))[:n]


def build_tightness_complex(S: SetSystem, edges: Sequence[tuple[int, int]] | None = None) -> TightnessComplex:
    """Identify elements with edges of a base graph and cone each set from its own apex.

    The result has the identified edges plus triangles ``{apex_i, u, v}`` for
    every edge ``uv`` in ``S_i``; the link of ``apex_i`` is exactly ``S_i``.
    """
    if edges is None:
        edges = default_edge_identification(S.ground_size)
    edges = tuple(tuple(sorted(e)) for e in edges)
    if len(edges) != S.ground_size:
        raise SetSystemError(f"need {S.ground_size} edges, got {len(edges)}")
    if len(set(edges)) != len(edges):
        raise SetSystemError("edge identification is not injective")
    if any(u == v or u < 0 for u, v in edges):
        raise SetSystemError("edges must join two distinct non-negative vertices")
    V = max((v for e in edges for v in e), default=-1) + 1
    apexes = tuple(V + i for i in range(S.m))
    facets: list[tuple[int, ...]] = list(edges)
    for a, s in zip(apexes, S.sets):
        facets += [edges[x] + (a,) for x in s] or [(a,)]
    if not facets:
        raise SetSystemError("empty set system gives an empty complex")
    return TightnessComplex(SimplicialComplex.from_facets(facets), edges, apexes)


# --- text format -------------------------------------------------------------------------

def parse_setsystem(text: str) -> SetSystem:
    lines = text.splitlines()
    body = [(i + 1, l.split("#", 1)[0].strip()) for i, l in enumerate(lines)]
    idx = 0
    while idx < len(body) and not body[idx][1]:
        idx += 1
    if idx == len(body):
        raise SetSystemError("empty set-system file")
    lineno, header = body[idx]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise SetSystemError(f"line {lineno}: header must be 'n m'") from None
    rows = body[idx + 1: idx + 1 + m]
    if len(rows) < m:
        raise SetSystemError(f"expected {m} set lines, found {len(rows)}")
    if any(t for _, t in body[idx + 1 + m:]):
        raise SetSystemError("extra lines after the declared sets")
    sets = []
    for lineno, t in rows:
        try:
            elems = [int(x) for x in t.split()]
        except ValueError:
            raise SetSystemError(f"line {lineno}: non-integer element") from None
        if any(not 0 <= x < n for x in elems):
            raise SetSystemError(f"line {lineno}: element outside 0..{n - 1}")
        sets.append(frozenset(elems))
    return SetSystem(n, tuple(sets))


def read_setsystem(path: str | Path) -> SetSystem:
    return parse_setsystem(Path(path).read_text(encoding="utf-8"))


def format_setsystem(S: SetSystem) -> str:
    lines = [f"{S.ground_size} {S.m}"] + [" ".join(map(str, sorted(s))) for s in S.sets]
    return "\n".join(lines) + "\n"
