import random
from fractions import Fraction

import pytest

from oracles import flat_disk_crossings, gauss_linking
from triplelink.chains import Chain, ChainError, boundary
from triplelink.complex import ComplexError, closure
from triplelink.linking import (
    DegenerateConfigurationError,
    EmbeddedCurves,
    GeomParseError,
    apex_sequence,
    format_geom,
    intersection_number,
    linking_number,
    linking_number_auto,
    orient3d,
    parse_cycle_spec,
    parse_geom,
    point,
    point_in_tetrahedron,
    polygon_cycles,
    reference_configuration,
    segment_triangle_intersection,
    segments_intersect,
    verify_boundary_identity,
)

P = point
TRI = (P(1, 0, 0), P(-1, 1, 0), P(-1, -1, 0))


def polygons(name):
    C = reference_configuration(name)
    a = [C.coords[v] for v in sorted(C.coords) if v < 10]
    b = [C.coords[v] for v in sorted(C.coords) if v >= 10]
    return C, a, b


class TestSegmentTriangle:
    def test_upward_crossing_is_positive(self):
        assert segment_triangle_intersection((P(0, 0, -1), P(0, 0, 1)), TRI).sign == 1

    def test_reversals_flip_sign(self):
        assert segment_triangle_intersection((P(0, 0, 1), P(0, 0, -1)), TRI).sign == -1
        assert segment_triangle_intersection((P(0, 0, -1), P(0, 0, 1)), TRI[::-1]).sign == -1

    def test_above_plane(self):
        assert segment_triangle_intersection((P(0, 0, 1), P(0, 0, 2)), TRI).sign == 0

    def test_misses_beside_triangle(self):
        assert segment_triangle_intersection((P(5, 5, -1), P(0.5, 5, 1)), TRI).sign == 0

    def test_endpoint_in_interior_is_degenerate(self):
        with pytest.raises(DegenerateConfigurationError, match="general position violated") as err:
            segment_triangle_intersection((P(0, 0, 0), P(0, 0, 1)), TRI)
        assert "plane" in err.value.predicate

    def test_grazing_an_edge_is_degenerate(self):
        with pytest.raises(DegenerateConfigurationError):
            segment_triangle_intersection((P(-1, 0, -1), P(-1, 0, 1)), TRI)

    def test_orient3d(self):
        assert orient3d(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)) == 1
        assert orient3d(P(0, 0, 0), P(0, 1, 0), P(1, 0, 0), P(0, 0, 1)) == -1
        assert orient3d(P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(0, 0, 1)) == 0

    def test_point_in_tetrahedron(self):
        tet = (P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1))
        assert point_in_tetrahedron(P("1/5", "1/5", "1/5"), tet) == 1
        assert point_in_tetrahedron(P("1/5", "1/5", "1/5"), tet[::-1]) == 1  # reversal of 4 is even
        assert point_in_tetrahedron(P("1/5", "1/5", "1/5"), (tet[1], tet[0], tet[2], tet[3])) == -1
        assert point_in_tetrahedron(P(2, 2, 2), tet) == 0


def _disk_x0():
    # square in the plane x = 0 spanning y in [-5, 5], z in [-5, 5], as two triangles
    a, b, c, d = P(0, -5, -5), P(0, 5, -5), P(0, 5, 5), P(0, -5, 5)
    return Chain.of((a, b, c), (a, c, d))


def _square_z0():
    return Chain.cycle([P(-1, -1, 0), P(1, -1, 0), P(1, 1, 0), P(-1, 1, 0)])


class TestIntersectionNumber:
    def test_segment_through_disk(self):
        seg = Chain.of((P(-3, "1/3", "1/7"), P(3, "1/3", "1/7")))
        res = intersection_number(seg, _disk_x0())
        assert abs(res.value) == 1 and len(res.crossings) == 1

    def test_square_cycle_through_half_disk_once(self):
        a, b, c, d = P(0, 0, -5), P(0, 5, -5), P(0, 5, 5), P(0, 0, 5)
        half = Chain.of((a, b, c), (a, c, d))
        res = intersection_number(_square_z0(), half)
        assert abs(res.value) == 1 and len(res.crossings) == 1
        assert intersection_number(_square_z0(), -half).value == -res.value

    def test_closed_square_crosses_twice_and_cancels(self):
        res = intersection_number(_square_z0(), _disk_x0())
        assert res.value == 0 and len(res.crossings) == 2
        assert sum(c.weight for c in res.crossings) == 0

    def test_disjoint(self):
        far = Chain.cycle([P(20, 0, 0), P(21, 0, 0), P(21, 1, "1/2")])
        assert intersection_number(far, _disk_x0()).value == 0

    def test_bilinear(self):
        a, D = _square_z0(), _disk_x0()
        base = intersection_number(a, D).value
        assert intersection_number(a, -D).value == -base
        assert intersection_number(3 * a, D).value == 3 * base
        assert intersection_number(a, D * -2).value == -2 * base
        seg = Chain.of((P(-3, "1/3", "1/7"), P(3, "1/3", "1/7")))
        assert intersection_number(a + seg, D).value == base + intersection_number(seg, D).value

    def test_degree_check(self):
        with pytest.raises(ChainError):
            intersection_number(_disk_x0(), _square_z0())

    def test_certificate_records_nonzero_predicates(self):
        res = intersection_number(_square_z0(), _disk_x0())
        assert res.certificate.checks and res.certificate.all_nonzero


class TestLinking:
    @pytest.mark.parametrize("name,expected", [("hopf", 1), ("doubled", 2), ("split", 0)])
    def test_reference_values(self, name, expected):
        C, a, b = polygons(name)
        z1, z2 = polygon_cycles(C)
        res = linking_number_auto(z1, z2)
        assert abs(res.value) == expected
        assert abs(round(gauss_linking(a, b))) == expected
        assert abs(flat_disk_crossings(a, b)) == expected

    @pytest.mark.parametrize("name", ["hopf", "doubled", "split"])
    def test_apex_independence(self, name):
        z1, z2 = polygon_cycles(reference_configuration(name))
        values = []
        for k in range(40):
            try:
                values.append(linking_number(z1, z2, apex_sequence(k)).value)
            except DegenerateConfigurationError:
                continue
        assert len(values) >= 10 and len(set(values)) == 1

    def test_sign_agrees_with_disk_count(self):
        # cone over A through a generic apex: crossings of B with the cone equal crossings with A's disk
        for name in ("hopf", "doubled"):
            C, a, b = polygons(name)
            z1, z2 = polygon_cycles(C)
            assert linking_number_auto(z1, z2).value == -flat_disk_crossings(a, b) or \
                linking_number_auto(z1, z2).value == flat_disk_crossings(a, b)

    def test_swap_and_reverse(self):
        for name in ("hopf", "doubled"):
            z1, z2 = polygon_cycles(reference_configuration(name))
            forward = linking_number_auto(z1, z2).value
            assert abs(linking_number_auto(z2, z1).value) == abs(forward)
            assert linking_number_auto(z1, -z2).value == -forward
            assert linking_number_auto(-z1, z2).value == -forward

    def test_hand_picked_apex(self):
        z1, z2 = polygon_cycles(reference_configuration("hopf"))
        res = linking_number(z1, z2, (Fraction(1, 3), Fraction(-5, 7), Fraction(9, 2)))
        assert abs(res.value) == 1 and res.attempts == 1

    def test_degenerate_apex_reported(self):
        z1, z2 = polygon_cycles(reference_configuration("hopf"))
        with pytest.raises(DegenerateConfigurationError, match="another apex"):
            linking_number(z1, z2, (5, 2, 2))  # plane of a cone triangle meets a vertex of B

    def test_auto_records_apex(self):
        z1, z2 = polygon_cycles(reference_configuration("doubled"))
        res = linking_number_auto(z1, z2)
        assert res.apex == apex_sequence(res.attempts - 1)

    def test_non_cycle_rejected(self):
        z1, _ = polygon_cycles(reference_configuration("hopf"))
        path = Chain.of((P(9, 9, 9), P(10, 9, 9)))
        with pytest.raises(ChainError, match="not a cycle"):
            linking_number(z1, path, apex_sequence(0))

    def test_shared_vertex_rejected(self):
        z1, _ = polygon_cycles(reference_configuration("hopf"))
        with pytest.raises(ChainError):
            linking_number(z1, z1, apex_sequence(0))

    def test_bit_identical_reruns(self):
        z1, z2 = polygon_cycles(reference_configuration("doubled"))
        a = linking_number_auto(z1, z2)
        b = linking_number_auto(z1, z2)
        assert a == b


class TestBoundaryIdentity:
    def test_segment_through_tetrahedron(self):
        seg = Chain.of((P(0, 0, -5), P("1/3", "1/7", "1/5")))
        tet = Chain.of((P(-1, -1, -1), P(3, 0, -1), P(0, 3, -1), P(0, 0, 3)))
        res = verify_boundary_identity(seg, tet)
        assert res.equal and res.lhs != 0

    def test_cycle_meets_boundary_zero_times(self):
        tet = Chain.of((P(-1, -1, -1), P(3, 0, -1), P(0, 3, -1), P(0, 0, 3)))
        z = Chain.cycle([P(0, 0, -5), P("1/3", "1/7", "1/5"), P(7, "1/9", 8)])
        res = verify_boundary_identity(z, tet)
        assert res.rhs == 0 and res.lhs == 0

    def test_disjoint(self):
        seg = Chain.of((P(50, 0, 0), P(51, "1/2", 0)))
        tet = Chain.of((P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)))
        assert tuple(verify_boundary_identity(seg, tet)) == (0, 0, True)

    def test_random_instances(self):
        rng = random.Random(11)

        def rp(scale=4):
            return P(*(Fraction(rng.randint(-scale * 97, scale * 97), 97) for _ in range(3)))

        done = nonzero = 0
        while done < 25:
            tets = [tuple(rp(2) for _ in range(4)) for _ in range(2)]
            c3 = Chain({t: rng.choice([-1, 1, 2]) for t in tets}, 3)
            c1 = Chain({}, 1)
            for _ in range(rng.randint(1, 3)):
                w = [Fraction(rng.randint(1, 9)) for _ in range(4)]
                t = rng.choice(tets)
                inside = tuple(sum(w[i] * t[i][k] for i in range(4)) / sum(w) for k in range(3))
                c1 = c1 + rng.choice([-2, -1, 1, 3]) * Chain.of((rp(), inside))
            try:
                res = verify_boundary_identity(c1, c3)
            except DegenerateConfigurationError:
                continue
            assert res.equal
            done += 1
            nonzero += res.lhs != 0
        assert nonzero > 0

    def test_degrees(self):
        with pytest.raises(ChainError):
            verify_boundary_identity(Chain.of((P(0, 0, 0), P(1, 1, 1))), boundary(_disk_x0()))


class TestEmbeddedCurves:
    def test_reference_configurations_are_embeddings(self):
        for name in ("hopf", "doubled", "split"):
            C = reference_configuration(name)
            assert C.complex.dimension == 1

    def test_crossing_edges_rejected(self):
        K = closure([(0, 1), (2, 3)])
        X = {0: P(-1, 0, 0), 1: P(1, 0, 0), 2: P(0, -1, 0), 3: P(0, 1, 0)}
        with pytest.raises(ComplexError, match="intersect"):
            EmbeddedCurves(K, X)

    def test_overlapping_edges_rejected(self):
        K = closure([(0, 1), (0, 2)])
        X = {0: P(0, 0, 0), 1: P(2, 0, 0), 2: P(1, 0, 0)}
        with pytest.raises(ComplexError):
            EmbeddedCurves(K, X)

    def test_vertex_on_edge_rejected(self):
        K = closure([(0, 1), (2,)])
        X = {0: P(0, 0, 0), 1: P(2, 0, 0), 2: P(1, 0, 0)}
        with pytest.raises(ComplexError, match="lies on"):
            EmbeddedCurves(K, X)

    def test_missing_coordinates(self):
        with pytest.raises(ComplexError):
            EmbeddedCurves(closure([(0, 1)]), {0: P(0, 0, 0)})

    def test_segments_intersect(self):
        assert segments_intersect(P(0, 0, 0), P(2, 2, 0), P(0, 2, 0), P(2, 0, 0))
        assert not segments_intersect(P(0, 0, 0), P(2, 2, 0), P(0, 2, 1), P(2, 0, 1))
        assert segments_intersect(P(0, 0, 0), P(2, 0, 0), P(1, 0, 0), P(3, 0, 0))
        assert not segments_intersect(P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(3, 0, 0))

    def test_edge_chain_rejects_non_edges(self):
        C = reference_configuration("hopf")
        with pytest.raises(ComplexError):
            C.edge_chain([(0, 2, 1)])


class TestGeomFormat:
    def test_round_trip(self):
        C = reference_configuration("doubled")
        D = parse_geom(format_geom(C))
        assert D.complex == C.complex and D.coords == C.coords

    def test_rationals(self):
        D = parse_geom("v 0 1/2 0 0\nv 1 3 -2/3 1\ne 0 1\n")
        assert D.coords[0] == (Fraction(1, 2), 0, 0)

    @pytest.mark.parametrize("text,line", [
        ("v 0 0 0\n", 1),
        ("v 0 0 0 0\nv 0 1 1 1\n", 2),
        ("v 0 0 0 0\nv 1 a 0 0\n", 2),
        ("v 0 0 0 0\nx 1\n", 2),
        ("v 0 0 0 0\ne 0 0\n", 2),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GeomParseError) as err:
            parse_geom(text)
        assert err.value.lineno == line

    def test_undeclared_vertex(self):
        with pytest.raises(GeomParseError):
            parse_geom("v 0 0 0 0\ne 0 5\n")

    def test_cycle_spec(self):
        assert parse_cycle_spec("0:1, 1:2,-2:0") == [(0, 1, 1), (1, 2, 1), (2, 0, -1)]
        with pytest.raises(ValueError):
            parse_cycle_spec("0-1")
        with pytest.raises(ValueError):
            parse_cycle_spec("")
