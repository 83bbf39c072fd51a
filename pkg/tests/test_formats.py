from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from conftest import FIXTURES, oracle_graph
from hypothesis import given
from hypothesis import strategies as st

from zonograph import (
    InputError,
    Polyhedron,
    build_zonotope,
    cube_base,
    dump_graph,
    emit_off,
    generic_zone_count,
    parse_graph,
    parse_off,
    random_generators,
    realize,
    stats,
)
from zonograph.formats import format_decimal, precision_from_env


class TestParseGraph:
    def test_cube_fixture(self):
        g = parse_graph((FIXTURES / "cube.json").read_text())
        assert g.vertex_count == 8 and all(len(r) == 3 for r in g.rotations)

    def test_duplicate(self):
        with pytest.raises(InputError, match=r"adj\[1\]\[1\]: duplicate neighbour 0"):
            parse_graph('{"n":2,"adj":[[1],[0,0]]}')

    def test_asymmetric(self):
        with pytest.raises(InputError, match=r"adj\[2\] lists 0 but adj\[0\] does not list 2"):
            parse_graph('{"n":3,"adj":[[1],[0],[0]]}')

    def test_bad_json_position(self):
        with pytest.raises(InputError, match="line 2, column"):
            parse_graph('{"n": 2,\n "adj": [[1], [0],]}')

    @pytest.mark.parametrize(
        "text,needle",
        [
            ('{"adj": []}', "missing field 'n'"),
            ('{"n": 1}', "missing field 'adj'"),
            ('{"n": -1, "adj": []}', "nonnegative"),
            ('{"n": 2, "adj": [[1]]}', "list of 2"),
            ('{"n": 2, "adj": [[5], [0]]}', "out of range"),
            ('{"n": 2, "adj": [[0], []]}', "self-loop"),
            ('{"n": 2, "adj": [["1"], [0]]}', "integer"),
            ("[1, 2]", "top level"),
        ],
    )
    def test_field_errors(self, text, needle):
        with pytest.raises(InputError, match=needle):
            parse_graph(text)

    @pytest.mark.parametrize("m", [3, 5, 8])
    def test_round_trip(self, m):
        g = oracle_graph(m, 0)
        assert parse_graph(dump_graph(g)) == g


class TestDecimal:
    @pytest.mark.parametrize(
        "x,p,want",
        [
            (Fraction(1), 12, "1"),
            (Fraction(0), 3, "0"),
            (Fraction(-3), 0, "-3"),
            (Fraction(1, 3), 4, "0.3333"),
            (Fraction(2, 3), 4, "0.6667"),
            (Fraction(-1, 8), 2, "-0.13"),
            (Fraction(1, 2), 0, "1"),
            (Fraction(-1, 2), 0, "-1"),
            (Fraction(-1, 1000), 2, "0"),
            (Fraction(5, 2), 3, "2.5"),
        ],
    )
    def test_examples(self, x, p, want):
        assert format_decimal(x, p) == want

    @given(st.fractions(max_denominator=10**6), st.integers(0, 15))
    def test_within_half_ulp(self, x, p):
        text = format_decimal(x, p)
        assert abs(Fraction(text) - x) <= Fraction(1, 2 * 10**p)

    def test_env(self, monkeypatch):
        monkeypatch.setenv("ZG_PRECISION", "3")
        assert precision_from_env() == 3
        monkeypatch.setenv("ZG_PRECISION", "x")
        with pytest.raises(InputError):
            precision_from_env()
        monkeypatch.delenv("ZG_PRECISION")
        assert precision_from_env() == 12


class TestOff:
    def test_unit_cube(self):
        text = emit_off(cube_base(), precision=6)
        lines = text.splitlines()
        assert lines[0] == "OFF" and lines[1] == "8 6 12"
        assert lines[2:10] == [
            "0 0 0", "1 0 0", "0 1 0", "1 1 0", "0 0 1", "1 0 1", "0 1 1", "1 1 1",
        ]
        assert all(line.startswith("4 ") for line in lines[10:])

    def test_precision_zero(self):
        text = emit_off(cube_base(3), precision=0)
        assert "." not in text

    def test_env_precision(self, monkeypatch):
        p = Polyhedron(cube_base().vertices, cube_base().faces)
        p = Polyhedron(tuple(tuple(c / 3 for c in v) for v in p.vertices), p.faces)
        monkeypatch.setenv("ZG_PRECISION", "2")
        assert "0.33" in emit_off(p)

    def test_m4_realization(self):
        text = emit_off(realize(oracle_graph(4, 0)))
        assert text.splitlines()[1] == "14 12 24"

    @pytest.mark.parametrize("m", [4, 6])
    def test_round_trip_exact_for_integers(self, m):
        p = build_zonotope(random_generators(m, 1))
        assert parse_off(emit_off(p)) == p

    def test_parse_decimals_exactly(self):
        p = parse_off("OFF\n# comment\n3 1 3\n0.1 0 0\n0 0.25 0\n0 0 1e-3\n3 0 1 2\n")
        assert p.vertices[0][0] == Fraction(1, 10)
        assert p.vertices[2][2] == Fraction(1, 1000)

    @pytest.mark.parametrize(
        "text,needle",
        [
            ("", "header"),
            ("PLY\n", "header"),
            ("OFF\n1 0 0\n0 0 x\n", "line 3"),
            ("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", "out of range"),
            ("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2\n", "announces 4"),
            ("OFF\n3 1 0\n0 0 0\n", "expected 3 vertex"),
        ],
    )
    def test_errors(self, text, needle):
        with pytest.raises(InputError, match=needle):
            parse_off(text)


class TestStats:
    def test_cube(self, cube):
        rep = stats(cube)
        assert (rep.n, rep.e, rep.f, rep.m) == (8, 12, 6, 3)
        assert rep.zone_length_histogram == {4: 3}
        assert rep.generic_m == 3 and rep.within_bound

    @pytest.mark.parametrize("m", range(3, 11))
    def test_generic_formula(self, m):
        rep = stats(oracle_graph(m, 7))
        assert rep.generic_m == m == rep.m
        assert rep.max_zone_length == 2 * (m - 1)
        assert math.isclose(rep.ratio, m / math.sqrt(m * (m - 1) + 2))

    def test_json(self, cube):
        doc = stats(cube).to_json()
        json.dumps(doc)
        assert doc["zone_length_histogram"] == {"4": 3}
        assert doc["m_le_1_plus_sqrt_n"] is True

    def test_rejected(self, k4):
        with pytest.raises(ValueError):
            stats(k4)

    @given(st.integers(2, 10**6))
    def test_generic_zone_count(self, n):
        m = generic_zone_count(n)
        if m is None:
            r = (1 + math.sqrt(4 * n - 7)) / 2
            assert abs(r - round(r)) > 1e-9 or round(r) * (round(r) - 1) + 2 != n
        else:
            assert m * (m - 1) + 2 == n
