from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import oracle_graph

from zonograph import (
    ExpansionDirection,
    InfeasibleDirectionError,
    build_zonotope,
    cube_base,
    embedding_isomorphism,
    expand_zone,
    extract_faces,
    find_direction,
    graph_of,
    realize,
    realize_detailed,
    recognize,
    reduce_to_cube,
    verify_zonohedron,
)
from zonograph.polyhedron import dot

# unit cube ids are x + 2y + 4z; this cycle avoids (0,0,0) and (1,1,1)
HEX_CYCLE = (1, 3, 2, 6, 4, 5)


def faces_where(p, axis, value):
    return {fid for fid, f in enumerate(p.faces) if all(p.vertices[i][axis] == value for i in f)}


def upper_faces(p):
    return faces_where(p, 0, 1) | faces_where(p, 1, 1) | faces_where(p, 2, 1)


class TestCubeBase:
    def test_unit(self):
        p = cube_base()
        assert p.vertex_count == 8
        assert set(p.vertices) == {(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)}
        assert p.vertices[5] == (1, 0, 1)

    def test_scale_two(self):
        p = cube_base(2)
        assert sorted(tuple(p.vertices[b]) for b in (1, 2, 4)) == [(0, 0, 2), (0, 2, 0), (2, 0, 0)]
        assert all(sum(abs(a - b) for a, b in zip(p.vertices[u], p.vertices[v])) == 2 for u, v in p.edges())

    def test_verifies(self):
        assert verify_zonohedron(cube_base()).ok
        assert verify_zonohedron(cube_base(Fraction(3, 7))).ok

    def test_from_graph(self, cube):
        p = cube_base(1, cube)
        assert verify_zonohedron(p).ok
        assert embedding_isomorphism(graph_of(p), cube) is not None

    def test_bad_scale(self):
        with pytest.raises(ValueError):
            cube_base(0)


class TestFindDirection:
    def test_upper_side(self):
        p = cube_base()
        d = find_direction(p, HEX_CYCLE, upper_faces(p))
        assert d.d == (1, 1, 1)

    def test_lower_side(self):
        p = cube_base()
        lower = set(range(6)) - upper_faces(p)
        assert find_direction(p, HEX_CYCLE, lower).d == (-1, -1, -1)

    def test_hint_used(self):
        p = cube_base()
        d = find_direction(p, HEX_CYCLE, upper_faces(p), hint=(2, 3, 5))
        assert d.d == (2, 3, 5) and d.method == "planned"

    def test_parallel_hint_is_nudged(self):
        # (1, 1, 0) lies in the plane of the top face, which must be seen
        p = cube_base()
        side = upper_faces(p)
        d = find_direction(p, HEX_CYCLE, side, hint=(1, 1, 0))
        assert d.perturbed and d.method == "planned"
        for f in range(6):
            s = dot(p.face_normal(f), d.d)
            assert s != 0 and (s > 0) == (f in side)

    def test_bad_hint_falls_back(self):
        p = cube_base()
        d = find_direction(p, HEX_CYCLE, upper_faces(p), hint=(1, 1, -1))
        assert d.method != "planned"
        signs = [dot(p.face_normal(f), d.d) > 0 for f in range(6)]
        assert {f for f in range(6) if signs[f]} == upper_faces(p)

    def test_infeasible(self):
        p = cube_base()
        # opposite faces x = 1 and x = 0 cannot both face d
        side = faces_where(p, 0, 1) | faces_where(p, 0, 0)
        with pytest.raises(InfeasibleDirectionError):
            find_direction(p, HEX_CYCLE, side)

    @pytest.mark.parametrize("seed", range(4))
    def test_m4_cycle_of_length_eight(self, seed):
        # deleting a length-8 zone from an m = 5 graph leaves an m = 4 graph
        # with an 8-cycle; realize that graph and look for the lifting direction
        trace = reduce_to_cube(oracle_graph(5, seed))
        step = trace.steps[0]
        assert len(step.zone_cycle) == 8
        p = realize(step.result)
        src_faces = extract_faces(step.source).faces
        by_vertices = {frozenset(f): fid for fid, f in enumerate(p.faces)}
        side = {by_vertices[frozenset(step.vertex_map[x] for x in src_faces[f])]
                for f in step.far_faces}
        d = find_direction(p, step.zone_cycle, side)
        for f in range(p.face_count):
            s = dot(p.face_normal(f), d.d)
            assert s != 0 and (s > 0) == (f in side)


class TestExpandZone:
    def test_cube_to_rhombic_dodecahedron(self):
        p = cube_base()
        q = expand_zone(p, HEX_CYCLE, ExpansionDirection((1, 1, 1), frozenset(upper_faces(p))))
        assert (q.vertex_count, q.face_count, q.edge_count) == (14, 12, 24)
        assert q.face_count - p.face_count == len(HEX_CYCLE)
        oracle = build_zonotope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        assert set(q.vertices) == set(oracle.vertices)
        assert verify_zonohedron(q).ok

    def test_zones_grow_by_two(self):
        p = cube_base()
        q = expand_zone(p, HEX_CYCLE, ExpansionDirection((1, 1, 1), frozenset(upper_faces(p))))
        assert sorted(recognize(graph_of(q)).zone_lengths) == [6, 6, 6, 6]

    def test_scale(self):
        p = cube_base()
        q = expand_zone(p, HEX_CYCLE, ExpansionDirection((1, 1, 1), frozenset(upper_faces(p))), 3)
        oracle = build_zonotope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (3, 3, 3)])
        assert set(q.vertices) == set(oracle.vertices)
        assert verify_zonohedron(q).ok


class TestRealize:
    def test_cube(self, cube):
        p = realize(cube)
        assert sorted(p.vertices) == sorted(cube_base().vertices)

    def test_m4(self):
        g = oracle_graph(4, 0)
        p = realize(g)
        assert p.vertex_count == 14
        assert verify_zonohedron(p).ok
        assert embedding_isomorphism(graph_of(p), g) is not None

    def test_m6(self):
        g = oracle_graph(6, 0)
        p = realize(g)
        assert p.vertex_count == 32 and verify_zonohedron(p).ok
        assert recognize(graph_of(p)).zone_lengths == [10] * 6

    def test_vertex_ids_preserved(self):
        g = oracle_graph(5, 1)
        h = graph_of(realize(g))
        assert set(h.edges()) == set(g.edges())

    @pytest.mark.parametrize("m,seed", [(5, 0), (6, 3), (7, 1)])
    def test_greedy_without_plan(self, m, seed):
        g = oracle_graph(m, seed)
        p = realize(g, plan=False)
        assert verify_zonohedron(p).ok

    def test_zone_scales(self):
        g = oracle_graph(5, 2)
        r = realize_detailed(g, zone_scales=[Fraction(1, 2), 3])
        assert verify_zonohedron(r.polyhedron).ok
        assert r.offsets[0] == tuple(c / 2 for c in r.directions[0].d)
        assert r.offsets[1] == tuple(3 * c for c in r.directions[1].d)
        with pytest.raises(ValueError):
            realize_detailed(g, zone_scales=[1])

    def test_detailed_record(self):
        g = oracle_graph(7, 4)
        r = realize_detailed(g)
        assert r.added_zone_lengths == (6, 8, 10, 12)
        assert all(d.method == "planned" for d in r.directions)

    def test_uses_given_trace(self):
        g = oracle_graph(5, 6)
        cert = recognize(g)
        trace = reduce_to_cube(g, cert)
        assert verify_zonohedron(realize(g, cert, trace)).ok

    def test_rejected(self, pseudo_double_wheel):
        with pytest.raises(ValueError, match="zone_self_intersection"):
            realize(pseudo_double_wheel)
