"""File formats: graph JSON, OFF meshes, and zone statistics."""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .plane_graph import RotationGraph
from .polyhedron import Polyhedron
from .recognizer import Rejection, ZoneCertificate, recognize

DEFAULT_PRECISION = 12


class InputError(ValueError):
    """Malformed input file; the message names the offending field or line."""


def parse_graph(text: str) -> RotationGraph:
    """Read ``{"n": n, "adj": [[...], ...]}`` with counterclockwise rotations.

    Raises:
        InputError: On bad JSON (with line and column) or on any structural
            problem, naming the ``adj`` entry at fault.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError("top level must be an object with fields 'n' and 'adj'")
    for key in ("n", "adj"):
        if key not in data:
            raise InputError(f"missing field '{key}'")
    n, adj = data["n"], data["adj"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InputError(f"'n' must be a nonnegative integer, got {n!r}")
    if not isinstance(adj, list) or len(adj) != n:
        got = len(adj) if isinstance(adj, list) else type(adj).__name__
        raise InputError(f"'adj' must be a list of {n} neighbour lists, got {got}")
    sets = []
    for v, rot in enumerate(adj):
        if not isinstance(rot, list):
            raise InputError(f"adj[{v}] must be a list")
        seen = set()
        for pos, w in enumerate(rot):
            where = f"adj[{v}][{pos}]"
            if isinstance(w, bool) or not isinstance(w, int):
                raise InputError(f"{where}: neighbour must be an integer, got {w!r}")
            if not 0 <= w < n:
                raise InputError(f"{where}: neighbour {w} out of range 0..{n - 1}")
            if w == v:
                raise InputError(f"{where}: self-loop at vertex {v}")
            if w in seen:
                raise InputError(f"{where}: duplicate neighbour {w} of vertex {v}")
            seen.add(w)
        sets.append(seen)
    for v, rot in enumerate(adj):
        for w in rot:
            if v not in sets[w]:
                raise InputError(
                    f"asymmetric adjacency: adj[{v}] lists {w} but adj[{w}] does not list {v}"
                )
    return RotationGraph(n, tuple(tuple(r) for r in adj))


def dump_graph(g: RotationGraph) -> str:
    return json.dumps({"n": g.vertex_count, "adj": g.to_adjacency()})


def precision_from_env() -> int:
    raw = os.environ.get("ZG_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        p = int(raw)
    except ValueError:
        raise InputError(f"ZG_PRECISION must be an integer, got {raw!r}") from None
    if p < 0:
        raise InputError("ZG_PRECISION must be nonnegative")
    return p


def format_decimal(x: Fraction, precision: int) -> str:
    """Round half away from zero to ``precision`` digits; trailing zeros
    are dropped, so integers print without a decimal point."""
    x = Fraction(x)
    scaled = abs(x) * 10**precision
    q = math.floor(scaled + Fraction(1, 2))
    sign = "-" if x < 0 and q else ""
    digits = str(q).rjust(precision + 1, "0")
    whole, frac = digits[: len(digits) - precision], digits[len(digits) - precision:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def emit_off(p: Polyhedron, precision: int | None = None) -> str:
    """Standard OFF text: header, ``V F E``, coordinates, then faces."""
    if precision is None:
        precision = precision_from_env()
    lines = ["OFF", f"{p.vertex_count} {p.face_count} {p.edge_count}"]
    for v in p.vertices:
        lines.append(" ".join(format_decimal(c, precision) for c in v))
    for f in p.faces:
        lines.append(" ".join(str(x) for x in (len(f), *f)))
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> Polyhedron:
    """Read an OFF mesh; decimal coordinates are taken exactly as written."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or rows[0][1][0] != "OFF":
        raise InputError("line 1: expected header 'OFF'")
    head = rows[0][1][1:]
    rows = rows[1:]
    if not head:
        if not rows:
            raise InputError("missing 'V F E' counts line")
        lineno, head = rows.pop(0)
    else:
        lineno = rows[0][0] if rows else 1
    try:
        nv, nf = int(head[0]), int(head[1])
    except (ValueError, IndexError):
        raise InputError(f"line {lineno}: expected 'V F E' counts") from None
    if len(rows) < nv + nf:
        raise InputError(f"expected {nv} vertex and {nf} face lines, found {len(rows)} lines")
    verts = []
    for lineno, tok in rows[:nv]:
        try:
            verts.append(tuple(Fraction(t) for t in tok[:3]))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"line {lineno}: bad coordinate in {' '.join(tok)!r}") from None
        if len(tok) < 3:
            raise InputError(f"line {lineno}: vertex needs three coordinates")
    faces = []
    for lineno, tok in rows[nv:nv + nf]:
        try:
            k = int(tok[0])
            ids = tuple(int(t) for t in tok[1:1 + k])
        except ValueError:
            raise InputError(f"line {lineno}: bad face line {' '.join(tok)!r}") from None
        if len(ids) != k:
            raise InputError(f"line {lineno}: face announces {k} vertices, lists {len(ids)}")
        bad = [i for i in ids if not 0 <= i < nv]
        if bad:
            raise InputError(f"line {lineno}: vertex ids {bad} out of range")
        faces.append(ids)
    return Polyhedron(tuple(verts), tuple(faces))


def generic_zone_count(n: int) -> int | None:
    """Zone count ``m`` with ``m(m-1) + 2 = n``, i.e. ``(1 + sqrt(4n-7)) / 2``,
    if that is an integer; generic zonohedra hit it exactly."""
    if n < 2:
        return None
    r = math.isqrt(4 * n - 7)
    if r * r != 4 * n - 7 or (1 + r) % 2:
        return None
    return (1 + r) // 2


@dataclass(frozen=True)
class StatsReport:
    n: int
    e: int
    f: int
    m: int
    zone_length_histogram: dict[int, int]
    max_zone_length: int

    @property
    def ratio(self) -> float:
        """``m / sqrt(n)``; bounded because ``m <= 1 + sqrt(n)``."""
        return self.m / math.sqrt(self.n)

    @property
    def within_bound(self) -> bool:
        # (m-1)^2 <= n, i.e. m <= 1 + sqrt(n), in integers
        return (self.m - 1) ** 2 <= self.n

    @property
    def generic_m(self) -> int | None:
        return generic_zone_count(self.n)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "e": self.e,
            "f": self.f,
            "m": self.m,
            "zone_length_histogram": {str(k): v for k, v in sorted(self.zone_length_histogram.items())},
            "m_over_sqrt_n": self.ratio,
            "max_zone_length": self.max_zone_length,
            "m_le_1_plus_sqrt_n": self.within_bound,
            "generic_m": self.generic_m,
        }


def stats(source: RotationGraph | ZoneCertificate) -> StatsReport:
    """Counts and zone statistics of an accepted graph.

    Raises:
        ValueError: If the graph is rejected.
    """
    cert = source if isinstance(source, ZoneCertificate) else recognize(source)
    if isinstance(cert, Rejection):
        raise ValueError(f"graph is not zonohedral: {cert.reason}")
    g = cert.graph
    lengths = cert.zone_lengths
    rep = StatsReport(
        n=g.vertex_count,
        e=g.edge_count,
        f=cert.faces.face_count,
        m=cert.zone_count,
        zone_length_histogram=dict(Counter(lengths)),
        max_zone_length=max(lengths),
    )
    assert rep.n - rep.e + rep.f == 2 and sum(lengths) == 2 * rep.f
    return rep
