"""Exact intersection and linking numbers of PL chains in R^3.

Coordinates are :class:`fractions.Fraction` triples and every predicate is
an exact 3x3 determinant.  There is no tolerance anywhere: a zero
determinant met during a computation means the input is not in general
position, and :class:`DegenerateConfigurationError` is raised naming the
predicate.

Sign conventions (fixed once, used everywhere):

=====================  ==========================================================
ambient orientation    ``orient3d(a, b, c, d) = det[b-a, c-a, d-a]``, right-handed
triangle normal        ``n = (b - a) x (c - a)`` for the ordered triangle ``[a, b, c]``
segment direction      ``[p, q]`` runs from ``p`` to ``q``
segment x triangle     ``sign((q - p) . n)`` at a transverse crossing
point x tetrahedron    ``sign(orient3d(a, b, c, d))`` if the point is inside ``[a, b, c, d]``
linking number         ``lk(z1, z2) = I(z2, cone(apex, z1))``, apex placed first
=====================  ==========================================================

With these choices ``I(c1, boundary(c3)) == -I(boundary(c1), c3)`` for a
1-chain ``c1`` and a 3-chain ``c3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .chains import Chain, ChainError, boundary, cone_chain, is_cycle
from .complex import ComplexError, SimplicialComplex

Point3 = tuple[Fraction, Fraction, Fraction]


class DegenerateConfigurationError(ValueError):
    def __init__(self, predicate: str, detail: str = ""):
        msg = f"general position violated: {predicate}"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.predicate = predicate


class GeomParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def point(x, y, z) -> Point3:
    """Build an exact point; strings such as ``"3/7"`` are accepted."""
    return (Fraction(x), Fraction(y), Fraction(z))


def _sub(a: Point3, b: Point3) -> Point3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(u: Point3, v: Point3) -> Point3:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u: Point3, v: Point3) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    """Sign of det[b-a, c-a, d-a]."""
    det = _dot(_cross(_sub(b, a), _sub(c, a)), _sub(d, a))
    return (det > 0) - (det < 0)


@dataclass
class GeneralPositionCertificate:
    """Every orientation predicate evaluated during one computation, with its sign."""

    checks: list[tuple[str, int]] = field(default_factory=list)

    def record(self, name: str, sign: int) -> int:
        if sign == 0:
            raise DegenerateConfigurationError(name)
        self.checks.append((name, sign))
        return sign

    @property
    def all_nonzero(self) -> bool:
        return all(s != 0 for _, s in self.checks)


def _boxes_apart(P: Sequence[Point3], Q: Sequence[Point3]) -> bool:
    for k in range(3):
        if max(p[k] for p in P) < min(q[k] for q in Q) or max(q[k] for q in Q) < min(p[k] for p in P):
            return True
    return False


class Crossing(NamedTuple):
    sign: int
    transverse: bool


def segment_triangle_intersection(seg: Sequence[Point3], tri: Sequence[Point3],
                                  cert: GeneralPositionCertificate | None = None,
                                  tag: str = "") -> Crossing:
    """Signed crossing of the segment ``p -> q`` with the oriented triangle ``[a, b, c]``.

    Returns sign 0 when they are disjoint.  Any zero predicate, including an
    endpoint on the triangle's plane or the segment grazing a triangle edge,
    raises :class:`DegenerateConfigurationError`.
    """
    p, q = seg
    a, b, c = tri
    if _boxes_apart((p, q), (a, b, c)):
        return Crossing(0, True)
    cert = cert if cert is not None else GeneralPositionCertificate()
    tag = tag or "seg/tri"
    s1 = cert.record(f"{tag}:plane-vs-start", orient3d(a, b, c, p))
    s2 = cert.record(f"{tag}:plane-vs-end", orient3d(a, b, c, q))
    if s1 == s2:
        return Crossing(0, True)
    t1 = cert.record(f"{tag}:edge-ab", orient3d(p, q, a, b))
    t2 = cert.record(f"{tag}:edge-bc", orient3d(p, q, b, c))
    t3 = cert.record(f"{tag}:edge-ca", orient3d(p, q, c, a))
    if t1 == t2 == t3:
        return Crossing(s2, True)
    return Crossing(0, True)


def point_in_tetrahedron(e: Point3, tet: Sequence[Point3],
                         cert: GeneralPositionCertificate | None = None, tag: str = "") -> int:
    """Orientation sign of ``[a, b, c, d]`` if ``e`` lies inside it, else 0."""
    a, b, c, d = tet
    if _boxes_apart((e,), tet):
        return 0
    cert = cert if cert is not None else GeneralPositionCertificate()
    tag = tag or "pt/tet"
    o = cert.record(f"{tag}:volume", orient3d(a, b, c, d))
    signs = [
        cert.record(f"{tag}:face-bcd", orient3d(e, b, c, d)),
        cert.record(f"{tag}:face-acd", orient3d(a, e, c, d)),
        cert.record(f"{tag}:face-abd", orient3d(a, b, e, d)),
        cert.record(f"{tag}:face-abc", orient3d(a, b, c, e)),
    ]
    return o if all(s == o for s in signs) else 0


class CrossingRecord(NamedTuple):
    first: tuple
    second: tuple
    sign: int
    weight: int  # coefficient product times sign


class IntersectionResult(NamedTuple):
    value: int
    crossings: list[CrossingRecord]
    certificate: GeneralPositionCertificate


def intersection_number(c1: Chain, c2: Chain) -> IntersectionResult:
    """I(c1, c2) for a 1-chain against a 2-chain, or a 0-chain against a 3-chain."""
    cert = GeneralPositionCertificate()
    crossings = []
    total = 0
    if (c1.degree, c2.degree) == (1, 2):
        test = segment_triangle_intersection
    elif (c1.degree, c2.degree) == (0, 3):
        def test(pt, tet, cert, tag):
            return Crossing(point_in_tetrahedron(pt[0], tet, cert, tag), True)
    else:
        raise ChainError(f"unsupported degrees ({c1.degree}, {c2.degree}); need (1, 2) or (0, 3)")
    terms2 = list(c2.items())
    for i, (s, a) in enumerate(c1.items()):
        for j, (t, b) in enumerate(terms2):
            if set(s) & set(t):
                raise DegenerateConfigurationError(f"#{i}/#{j}:shared-vertex")
            sign = test(s, t, cert, f"#{i}/#{j}").sign
            if sign:
                crossings.append(CrossingRecord(s, t, sign, a * b * sign))
                total += a * b * sign
    return IntersectionResult(total, crossings, cert)


class LinkingResult(NamedTuple):
    value: int
    apex: Point3
    crossings: list[CrossingRecord]
    certificate: GeneralPositionCertificate
    attempts: int = 1


def linking_number(z1: Chain, z2: Chain, apex: Point3) -> LinkingResult:
    """Linking number of two disjoint 1-cycles via the cone over ``z1`` from ``apex``."""
    for name, z in (("z1", z1), ("z2", z2)):
        if z.degree != 1:
            raise ChainError(f"{name} must be a 1-chain")
        if not is_cycle(z):
            raise ChainError(f"{name} is not a cycle")
    if z1.vertices() & z2.vertices():
        raise ChainError("cycles share a vertex")
    apex = point(*apex)
    try:
        res = intersection_number(z2, cone_chain(apex, z1))
    except DegenerateConfigurationError as exc:
        raise DegenerateConfigurationError(
            exc.predicate, "try another apex or use linking_number_auto") from None
    return LinkingResult(res.value, apex, res.crossings, res.certificate)


def apex_sequence(k: int) -> Point3:
    """The k-th retry apex: (3 + k/2, 1 + k^2/3, 7 - 2k/7).  Never collinear in threes."""
    return (Fraction(3) + Fraction(k, 2), Fraction(1) + Fraction(k * k, 3), Fraction(7) - Fraction(2 * k, 7))


def linking_number_auto(z1: Chain, z2: Chain, tries: int = 64, start: int = 0) -> LinkingResult:
    """Try apexes ``apex_sequence(start), apex_sequence(start+1), ...`` until one is generic."""
    last: DegenerateConfigurationError | None = None
    for k in range(start, start + tries):
        apex = apex_sequence(k)
        if apex in z1.vertices():
            continue
        try:
            res = linking_number(z1, z2, apex)
        except DegenerateConfigurationError as exc:
            last = exc
            continue
        return res._replace(attempts=k - start + 1)
    raise DegenerateConfigurationError(last.predicate if last else "apex-sequence",
                                       f"no generic apex among {tries} tries")


class BoundaryIdentity(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def verify_boundary_identity(c1: Chain, c3: Chain) -> BoundaryIdentity:
    """Both sides of I(c1, bd c3) = (-1)^1 I(bd c1, c3) for a 1-chain and a 3-chain."""
    if c1.degree != 1 or c3.degree != 3:
        raise ChainError("need a 1-chain and a 3-chain")
    lhs = intersection_number(c1, boundary(c3)).value
    bd1 = boundary(c1)
    rhs = -intersection_number(bd1, c3).value if bd1 else 0
    return BoundaryIdentity(lhs, rhs, lhs == rhs)


# --- embedded curves -------------------------------------------------------------

def _orient2d(a, b, c) -> int:
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def _on_segment_2d(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _segments_meet_2d(a, b, c, d) -> bool:
    o1, o2 = _orient2d(a, b, c), _orient2d(a, b, d)
    o3, o4 = _orient2d(c, d, a), _orient2d(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and _on_segment_2d(a, b, c)) or (o2 == 0 and _on_segment_2d(a, b, d))
            or (o3 == 0 and _on_segment_2d(c, d, a)) or (o4 == 0 and _on_segment_2d(c, d, b)))


def segments_intersect(a: Point3, b: Point3, c: Point3, d: Point3) -> bool:
    """Exact test whether closed segments ``ab`` and ``cd`` share a point."""
    if _boxes_apart((a, b), (c, d)):
        return False
    if orient3d(a, b, c, d) != 0:
        return False
    n = _cross(_sub(b, a), _sub(c, a))
    if n == (0, 0, 0):
        n = _cross(_sub(b, a), _sub(d, a))
    if n == (0, 0, 0):
        n = _cross(_sub(d, c), _sub(a, c))
    if n == (0, 0, 0):
        # all four points collinear: compare along a coordinate that varies
        u = _sub(b, a) if a != b else _sub(d, c)
        k = max(range(3), key=lambda i: abs(u[i]))
        return max(a[k], b[k]) >= min(c[k], d[k]) and max(c[k], d[k]) >= min(a[k], b[k])
    drop = max(range(3), key=lambda i: abs(n[i]))
    keep = [i for i in range(3) if i != drop]

    def proj(p):
        return (p[keep[0]], p[keep[1]])

    return _segments_meet_2d(proj(a), proj(b), proj(c), proj(d))


@dataclass(frozen=True)
class EmbeddedCurves:
    """A 1-complex with exact coordinates whose straight-line drawing is an embedding."""

    complex: SimplicialComplex
    coords: Mapping[int, Point3]

    def __post_init__(self):
        K = self.complex
        if K.dimension > 1:
            raise ComplexError("embedded curves need a complex of dimension at most 1")
        missing = K.vertices - set(self.coords)
        if missing:
            raise ComplexError(f"no coordinates for vertices {sorted(missing)}")
        seen: dict[Point3, int] = {}
        for v in sorted(K.vertices):
            p = self.coords[v]
            if p in seen:
                raise ComplexError(f"vertices {seen[p]} and {v} share a position")
            seen[p] = v
        edges = sorted(K.faces(1))
        X = self.coords
        for e, f in combinations(edges, 2):
            common = set(e) & set(f)
            if not common:
                if segments_intersect(X[e[0]], X[e[1]], X[f[0]], X[f[1]]):
                    raise ComplexError(f"edges {e} and {f} intersect")
                continue
            (s,) = common
            u = next(x for x in e if x != s)
            w = next(x for x in f if x != s)
            du, dw = _sub(X[u], X[s]), _sub(X[w], X[s])
            if _cross(du, dw) == (0, 0, 0) and _dot(du, dw) > 0:
                raise ComplexError(f"edges {e} and {f} overlap")
        for v in sorted(K.vertices):
            for e in edges:
                if v in e:
                    continue
                p = X[v]
                if segments_intersect(X[e[0]], X[e[1]], p, p):
                    raise ComplexError(f"vertex {v} lies on edge {e}")

    def edge_chain(self, terms: Iterable[tuple[int, int, int]]) -> Chain:
        """Geometric 1-chain from ``(u, v, coefficient)`` triples over edges of the complex."""
        out: dict[tuple, int] = {}
        for u, v, coef in terms:
            if (min(u, v), max(u, v)) not in self.complex.faces(1):
                raise ComplexError(f"{u}-{v} is not an edge")
            c = Chain.of((self.coords[u], self.coords[v]), coefficient=coef)
            for key, val in c.items():
                out[key] = out.get(key, 0) + val
        return Chain(out, 1)


def parse_cycle_spec(text: str) -> list[tuple[int, int, int]]:
    """``"0:1,1:2,-2:0"`` -> ``[(0, 1, 1), (1, 2, 1), (2, 0, -1)]``."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        coef = 1
        if tok[0] in "+-":
            coef = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        try:
            u, v = (int(x) for x in tok.split(":"))
        except ValueError:
            raise ValueError(f"bad edge token {tok!r}; expected u:v") from None
        out.append((u, v, coef))
    if not out:
        raise ValueError("empty cycle")
    return out


def parse_geom(text: str) -> EmbeddedCurves:
    coords: dict[int, Point3] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 5:
                vid = int(parts[1])
                if vid < 0 or vid in coords:
                    raise GeomParseError(lineno, f"bad or repeated vertex id {vid}")
                coords[vid] = point(*parts[2:])
            elif parts[0] == "e" and len(parts) == 3:
                a, b = int(parts[1]), int(parts[2])
                if a == b:
                    raise GeomParseError(lineno, "loop edge")
                edges.append((a, b))
            else:
                raise GeomParseError(lineno, f"cannot parse {line!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, GeomParseError):
                raise
            raise GeomParseError(lineno, f"bad number in {line!r}") from None
    for a, b in edges:
        if a not in coords or b not in coords:
            raise GeomParseError(0, f"edge {a}-{b} uses an undeclared vertex")
    if not coords:
        raise GeomParseError(0, "no vertices")
    facets = [list(e) for e in edges] + [[v] for v in coords]
    return EmbeddedCurves(SimplicialComplex.from_facets(facets), coords)


def read_geom(path: str | Path) -> EmbeddedCurves:
    return parse_geom(Path(path).read_text(encoding="utf-8"))


def format_geom(curves: EmbeddedCurves) -> str:
    lines = [f"v {v} " + " ".join(str(x) for x in curves.coords[v]) for v in sorted(curves.coords)]
    lines += [f"e {a} {b}" for a, b in sorted(curves.complex.faces(1))]
    return "\n".join(lines) + "\n"


# --- reference configurations ----------------------------------------------------------

def _polygon(points: list[Point3], offset: int) -> tuple[dict[int, Point3], list[tuple[int, int]]]:
    coords = {offset + i: p for i, p in enumerate(points)}
    n = len(points)
    return coords, [(offset + i, offset + (i + 1) % n) for i in range(n)]


def _square_a() -> list[Point3]:
    return [point(-2, -2, 0), point(2, -2, 0), point(2, 2, 0), point(-2, 2, 0)]


def _threading(turns: int, shift: int = 0) -> list[Point3]:
    pts = []
    y = Fraction(-1)
    step = Fraction(1, 5)
    for _ in range(turns):
        pts += [point(1 + shift, y, 1), point(1 + shift, y + step, -1),
                point(3 + shift, y + 2 * step, -1), point(3 + shift, y + 3 * step, 1)]
        y += 4 * step
    last = pts[-1]
    pts += [point(last[0], last[1], 3), point(1 + shift, -1, 3)]
    return pts


def reference_configuration(name: str) -> EmbeddedCurves:
    """Two closed polygons: vertices 0..3 form A, B starts at 10.

    ``hopf`` threads B once through A, ``doubled`` twice in the same
    direction, ``split`` keeps B far away.
    """
    if name == "hopf":
        b = [point(1, 0, 1), point(1, 0, -1), point(3, 0, -1), point(3, 0, 1)]
    elif name == "doubled":
        b = _threading(2)
    elif name == "split":
        b = _threading(1, shift=20)
    else:
        raise ValueError(f"unknown configuration {name!r}; choose hopf, doubled or split")
    ca, ea = _polygon(_square_a(), 0)
    cb, eb = _polygon(b, 10)
    K = SimplicialComplex.from_facets([list(e) for e in ea + eb])
    return EmbeddedCurves(K, {**ca, **cb})


def polygon_cycles(curves: EmbeddedCurves) -> tuple[Chain, Chain]:
    """The two polygon cycles of a reference configuration, oriented by vertex order."""
    groups = ([v for v in sorted(curves.complex.vertices) if v < 10],
              [v for v in sorted(curves.complex.vertices) if v >= 10])
    out = []
    for g in groups:
        out.append(curves.edge_chain((g[i], g[(i + 1) % len(g)], 1) for i in range(len(g))))
    return out[0], out[1]
