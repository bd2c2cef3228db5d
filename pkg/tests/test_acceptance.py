"""The eleven acceptance criteria, one marked group each.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from oracles import random_complex, triple_sum_by_elements
from triplelink.chains import Chain
from triplelink.complex import f_vector, link, skeleton, verify_link_count_identity
from triplelink.constructions import (
    apex_graph,
    cyclic_polytope_boundary,
    double_cone,
    grunbaum_join,
    maximal_planar_graph,
    staircase_complex,
)
from triplelink.graphs import is_planar, linkless_necessary, validate_witness
from triplelink.linking import (
    DegenerateConfigurationError,
    apex_sequence,
    linking_number,
    point,
    polygon_cycles,
    reference_configuration,
    verify_boundary_identity,
)
from triplelink.patterns import PETERSEN_FAMILY_NAMES, pattern_graph
from triplelink.scan import Verdict, max_triangles_bound_check, replay, scan
from triplelink.setsystems import (
    SetSystem,
    build_tightness_complex,
    dual,
    exponent,
    fano_plane,
    generate_system,
    max_triple_intersection,
    t_of,
    verify_lemma_chain,
    verify_triple_identity,
)

criterion = pytest.mark.criterion


def random_system(rng, max_n=40, max_m=12):
    n, m = rng.randint(1, max_n), rng.randint(0, max_m)
    return generate_system("random-uniform", n=n, m=m, p=rng.random(), seed=rng.randrange(10 ** 9))


@criterion(1, "link counting identity on 100 random complexes")
def test_c1_link_count_identity():
    rng = random.Random(1)
    start = time.perf_counter()
    checked = 0
    for _ in range(100):
        K = random_complex(rng, max_vertices=12, max_dim=3)
        for k in range(1, K.dimension + 1):
            r = verify_link_count_identity(K, k)
            assert r.lhs == r.rhs and r.equal
            checked += 1
    assert checked > 100
    assert time.perf_counter() - start < 5


@criterion(2, "triple-count identity on 50 random set systems")
def test_c2_triple_count_identity():
    rng = random.Random(2)
    start = time.perf_counter()
    for _ in range(50):
        S = random_system(rng)
        r = verify_triple_identity(S)
        assert r.lhs == r.rhs == triple_sum_by_elements(S.ground_size, S.sets)
    # the fixed example: three identical 4-sets
    four = frozenset(range(4))
    assert tuple(verify_triple_identity(SetSystem(4, (four,) * 3))) == (4, 4, True)
    assert time.perf_counter() - start < 10


@criterion(3, "every step of the counting chain holds")
def test_c3_lemma_chain():
    rng = random.Random(3)
    systems = [fano_plane(), generate_system("block-repeated", base=fano_plane(), r=3)]
    for _ in range(40):
        systems.append(random_system(rng, max_n=30, max_m=10))
    systems += [dual(S) for S in systems[2:22]]
    for S in systems:
        f0 = max_triple_intersection(S)[0]
        for f in (f0, f0 + 2):
            report = verify_lemma_chain(S, f)
            bad = [s for s in report.steps if not s.holds]
            assert not bad, (S, f, bad)


class TestC4:
    @criterion(4, "scanner positive controls")
    @pytest.mark.parametrize("dims,mode", [((1, 0), "embed-2d"), ((0, 0, 0), "embed-2d"),
                                           ((0, 0, 0), "linkless-2d+1")])
    def test_c4_positive(self, dims, mode):
        start = time.perf_counter()
        K = grunbaum_join(dims)
        r = scan(K, mode)
        assert r.verdict is Verdict.OBSTRUCTION
        assert replay(K, r)
        assert time.perf_counter() - start < 5


class TestC5:
    @criterion(5, "scanner negative controls")
    @pytest.mark.parametrize("name", ["K5", "K33"])
    def test_c5_double_cones(self, name):
        assert scan(double_cone(pattern_graph(name)), "embed-2d").verdict is Verdict.PASS

    @criterion(5, "scanner negative controls")
    def test_c5_staircase(self):
        K = skeleton(staircase_complex(8, 8), 2)
        assert scan(K, "embed-3").verdict is Verdict.PASS


@criterion(6, "cyclic polytope counts meet n^2 - 3n")
@pytest.mark.parametrize("n", range(6, 13))
def test_c6_cyclic(n):
    K = cyclic_polytope_boundary(n)
    fv = f_vector(K)
    assert fv[3] == n * (n - 3) // 2
    assert fv[2] == n * (n - 3)
    check = max_triangles_bound_check(skeleton(K, 2))
    assert check.f2 == check.bound == n * n - 3 * n


@criterion(7, "planar edge bound and Kuratowski witnesses")
def test_c7_planar():
    for n in range(5, 51):
        G = maximal_planar_graph(n, seed=n)
        assert G.number_of_edges() == 3 * n - 6
        assert is_planar(G).planar
    for name in ("K5", "K33"):
        G = pattern_graph(name)
        res = is_planar(G)
        assert not res.planar
        validate_witness(G, res.witness)


@criterion(8, "linkless necessary test on the family and apex graphs")
def test_c8_linkless():
    start = time.perf_counter()
    for name in PETERSEN_FAMILY_NAMES:
        G = pattern_graph(name)
        res = linkless_necessary(G, budget=None)
        assert res.passed is False
        validate_witness(G, res.witness)
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(4, 12)
        P = maximal_planar_graph(n, seed=rng.randrange(10 ** 6))
        drop = rng.sample(sorted(P.edges()), rng.randint(0, n // 2))
        P.remove_edges_from(drop)
        assert linkless_necessary(apex_graph(P), budget=None).passed is True
    assert time.perf_counter() - start < 30


class TestC9:
    @criterion(9, "exact linking numbers and the boundary identity")
    @pytest.mark.parametrize("name,expected", [("hopf", 1), ("split", 0), ("doubled", 2)])
    def test_c9_reference(self, name, expected):
        z1, z2 = polygon_cycles(reference_configuration(name))
        values = []
        k = 0
        while len(values) < 10:
            try:
                values.append(linking_number(z1, z2, apex_sequence(k)).value)
            except DegenerateConfigurationError:
                pass
            k += 1
            assert k < 100
        assert len(set(values)) == 1 and abs(values[0]) == expected

    @criterion(9, "exact linking numbers and the boundary identity")
    def test_c9_boundary_identity(self):
        rng = random.Random(9)

        def rp(scale):
            return point(*(Fraction(rng.randint(-scale * 101, scale * 101), 101) for _ in range(3)))

        done = 0
        while done < 25:
            tets = [tuple(rp(2) for _ in range(4)) for _ in range(rng.randint(1, 2))]
            c3 = Chain({t: rng.choice([-1, 1, 2]) for t in tets}, 3)
            c1 = Chain({}, 1)
            for _ in range(rng.randint(1, 3)):
                t = rng.choice(tets)
                w = [rng.randint(1, 9) for _ in range(4)]
                inside = tuple(Fraction(sum(w[i] * t[i][c] for i in range(4)), sum(w)) for c in range(3))
                c1 = c1 + rng.choice([-1, 1, 2]) * Chain.of((rp(4), inside))
            try:
                res = verify_boundary_identity(c1, c3)
            except DegenerateConfigurationError:
                continue  # not transverse; draw again
            assert res.lhs == res.rhs
            done += 1


@criterion(10, "exponent values and duality")
def test_c10_bounds_and_duality():
    assert exponent(1) == 1 and exponent(2) == Fraction(8, 3) and exponent(3) == Fraction(35, 9)
    assert all(isinstance(exponent(d), Fraction) for d in (1, 2, 3))
    rng = random.Random(10)
    for _ in range(50):
        S = random_system(rng)
        assert t_of(dual(S)) == t_of(S)


@criterion(11, "tightness complex links and triangle count")
def test_c11_tightness():
    rng = random.Random(11)
    for _ in range(20):
        S = random_system(rng, max_n=30, max_m=8)
        tc = build_tightness_complex(S)
        K = tc.complex
        base = {e for e in tc.edges}
        for a, s in zip(tc.apexes, S.sets):
            L = link(K, a)
            assert {e for e in L.faces(1)} & base == {tc.edges[x] for x in s}
        f2 = len(K.faces(2)) if K.dimension >= 2 else 0
        assert f2 == t_of(S)
