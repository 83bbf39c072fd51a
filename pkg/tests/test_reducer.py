from __future__ import annotations

import json

import pytest
from conftest import oracle_graph

from zonograph import (
    RotationGraph,
    delete_zone,
    embedding_isomorphism,
    extract_faces,
    is_cube,
    recognize,
    reduce_to_cube,
)


def zone_by_length(g, length):
    cert = recognize(g)
    return cert, next(z for z in cert.decomposition.zones if len(z) == length)


class TestDeleteZone:
    def test_cube_zone_leaves_four_cycle(self, cube):
        cert = recognize(cube)
        z = cert.decomposition.zones[0]
        g2, step = delete_zone(cube, z, cert.faces)
        assert g2.vertex_count == 4 and g2.edge_count == 4
        assert all(len(r) == 2 for r in g2.rotations)
        assert len(step.zone_cycle) == 4 and step.degenerate
        assert len(set(step.vertex_map)) == 8 - len(z)

    def test_m4_zone_gives_cube(self):
        g = oracle_graph(4, 0)
        for z in recognize(g).decomposition.zones:
            g2, step = delete_zone(g, z)
            assert is_cube(g2)
            assert len(step.zone_cycle) == 6
            assert not step.degenerate

    def test_cycle_is_a_cycle_of_the_result(self):
        g = oracle_graph(6, 5)
        cert, z = zone_by_length(g, 10)
        g2, step = delete_zone(g, z, cert.faces)
        for u, v in step.cycle_edges:
            assert g2.has_edge(u, v)
        assert len(set(step.zone_cycle)) == len(z)

    def test_rails_and_sides(self):
        g = oracle_graph(5, 2)
        cert, z = zone_by_length(g, 8)
        _, step = delete_zone(g, z, cert.faces)
        for (a, b), e in zip(step.rails, z.zone_edges):
            assert tuple(sorted((a, b))) == e
            assert b in step.far_side and a not in step.far_side
            assert step.vertex_map[a] == step.vertex_map[b]
        fs = extract_faces(g)
        zone_faces = set(z.face_cycle)
        for f in step.far_faces:
            assert f not in zone_faces
            assert set(fs.faces[f]) <= step.far_side

    def test_counts(self):
        g = oracle_graph(7, 1)
        cert = recognize(g)
        for z in cert.decomposition.zones:
            g2, _ = delete_zone(g, z, cert.faces)
            assert g2.vertex_count == g.vertex_count - len(z)
            assert g2.edge_count == g.edge_count - 2 * len(z)
            assert extract_faces(g2).face_count == cert.faces.face_count - len(z)


class TestIsCube:
    def test_cube(self, cube):
        assert is_cube(cube)

    def test_m4(self):
        assert not is_cube(oracle_graph(4, 0))

    def test_four_cycle(self):
        assert not is_cube(RotationGraph(4, ((1, 3), (2, 0), (3, 1), (0, 2))))


class TestReduceToCube:
    def test_cube_empty(self, cube):
        trace = reduce_to_cube(cube)
        assert len(trace) == 0 and trace.base == cube

    def test_m4_one_step(self):
        trace = reduce_to_cube(oracle_graph(4, 0))
        assert [len(s.deleted_zone) for s in trace.steps] == [6]

    def test_m5_two_steps(self):
        trace = reduce_to_cube(oracle_graph(5, 0))
        assert [len(s.deleted_zone) for s in trace.steps] == [8, 6]

    @pytest.mark.parametrize("m", [6, 8, 10])
    def test_lengths_drop_by_two(self, m):
        trace = reduce_to_cube(oracle_graph(m, 3))
        assert [len(s.deleted_zone) for s in trace.steps] == list(range(2 * (m - 1), 4, -2))
        assert is_cube(trace.base)

    def test_steps_chain(self):
        trace = reduce_to_cube(oracle_graph(6, 0))
        assert trace.steps[0].source == trace.source
        for a, b in zip(trace.steps, trace.steps[1:]):
            assert a.result == b.source
        assert embedding_isomorphism(trace.steps[-1].result, trace.base, False) is not None

    def test_rejected_input(self, k4):
        with pytest.raises(ValueError, match="non_quad_face"):
            reduce_to_cube(k4)

    def test_json(self):
        doc = reduce_to_cube(oracle_graph(4, 0)).to_json()
        text = json.dumps(doc)
        assert json.loads(text)["base"]["n"] == 8
        assert len(doc["steps"][0]["zone_cycle"]) == 6
