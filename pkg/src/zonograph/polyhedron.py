"""Exact polyhedra: rational vertices plus outward-oriented face cycles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .plane_graph import FaceStructure, edge_key
from .zones import ZoneDefect, trace_zones

Vec = tuple[Fraction, Fraction, Fraction]


def vec(x: Iterable) -> Vec:
    a, b, c = (t if type(t) is Fraction else Fraction(t) for t in x)
    return (a, b, c)


def add(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def scale(s, p):
    return (s * p[0], s * p[1], s * p[2])


def dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def cross(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def is_zero(p) -> bool:
    return p[0] == 0 and p[1] == 0 and p[2] == 0


def direction_key(p) -> tuple:
    """Canonical representative of the ray through ``p`` (sign kept)."""
    for c in p:
        if c != 0:
            s = abs(c)
            return tuple(Fraction(x) / s for x in p)
    return (0, 0, 0)


class PolyhedronError(ValueError):
    pass


@dataclass(frozen=True)
class Polyhedron:
    """Vertices with exact rational coordinates and faces listed
    counterclockwise as seen from outside."""

    vertices: tuple[Vec, ...]
    faces: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(vec(v) for v in self.vertices))
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_count(self) -> int:
        return sum(len(f) for f in self.faces) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for f in self.faces:
            for i in range(len(f)):
                out.add(edge_key(f[i], f[(i + 1) % len(f)]))
        return sorted(out)

    def face_normal(self, f: int) -> Vec:
        return polygon_normal([self.vertices[i] for i in self.faces[f]])

    def centroid(self) -> Vec:
        n = len(self.vertices)
        sx = sum(v[0] for v in self.vertices)
        sy = sum(v[1] for v in self.vertices)
        sz = sum(v[2] for v in self.vertices)
        return (sx / n, sy / n, sz / n)

    def translated(self, t) -> Polyhedron:
        return Polyhedron(tuple(add(v, t) for v in self.vertices), self.faces)


def polygon_normal(points: Sequence) -> Vec:
    """Newell normal; for planar polygons it is the exact area-weighted normal.

    Integer input gives an integer result.
    """
    nx = ny = nz = 0
    k = len(points)
    for i in range(k):
        x0, y0, z0 = points[i]
        x1, y1, z1 = points[(i + 1) % k]
        nx += (y0 - y1) * (z0 + z1)
        ny += (z0 - z1) * (x0 + x1)
        nz += (x0 - x1) * (y0 + y1)
    return (nx, ny, nz)


def face_structure(faces: Sequence[Sequence[int]]) -> FaceStructure:
    """Face structure of an explicitly given closed surface."""
    dart_face: dict[tuple[int, int], tuple[int, int]] = {}
    for fid, face in enumerate(faces):
        k = len(face)
        for i in range(k):
            d = (face[i], face[(i + 1) % k])
            if d in dart_face:
                raise PolyhedronError(f"directed edge {d} appears in two faces")
            dart_face[d] = (fid, i)
    for u, v in dart_face:
        if (v, u) not in dart_face:
            raise PolyhedronError(f"edge {(u, v)} borders only one face")
    return FaceStructure(tuple(tuple(f) for f in faces), dart_face)


def _integer_coordinates(vertices: Sequence[Vec]) -> list[tuple[int, int, int]]:
    den = 1
    for v in vertices:
        for c in v:
            den = math.lcm(den, c.denominator)
    return [tuple(int(c * den) for c in v) for v in vertices]


def _plane_sides(faces, normals, pts, chunk: int = 256):
    """For each face: vertices strictly beyond its plane, and vertices on
    the plane that the face does not contain.

    Signs come from a float64 pass; any value within a generous rounding
    bound of zero is recomputed exactly, so the answer is exact.
    """
    X = np.array(pts, dtype=float)
    absX = np.abs(X)
    live = [f for f in range(len(faces)) if not is_zero(normals[f])]
    for start in range(0, len(live), chunk):
        ids = live[start:start + chunk]
        N = np.array([normals[f] for f in ids], dtype=float)
        X0 = X[[faces[f][0] for f in ids]]
        h = np.einsum("ij,ij->i", N, X0)
        val = N @ X.T - h[:, None]
        # rounding error is relative to the magnitudes summed, not the result
        h_size = np.einsum("ij,ij->i", np.abs(N), np.abs(X0))
        bound = 1e-9 * (np.abs(N) @ absX.T + h_size[:, None])
        for row, fid in enumerate(ids):
            nrm = normals[fid]
            hx = dot(nrm, pts[faces[fid][0]])
            members = set(faces[fid])
            outside, touching = [], []
            unsure = np.nonzero(np.abs(val[row]) <= bound[row])[0]
            for i in np.nonzero(val[row] > bound[row])[0]:
                outside.append(int(i))
            for i in unsure:
                i = int(i)
                sx = dot(nrm, pts[i]) - hx
                if sx > 0:
                    outside.append(i)
                elif sx == 0 and i not in members:
                    touching.append(i)
            yield fid, sorted(outside), sorted(touching)


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    checks_run: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_check(self, check: str) -> list[Violation]:
        return [v for v in self.violations if v.check == check]

    def summary(self) -> str:
        if self.ok:
            return "zonohedron: all checks passed (" + ", ".join(self.checks_run) + ")"
        lines = [f"zonohedron: {len(self.violations)} violation(s)"]
        lines += [f"  [{v.check}] {v.detail}" for v in self.violations]
        return "\n".join(lines)


def verify_zonohedron(p: Polyhedron) -> VerificationReport:
    """Exact check that ``p`` is a convex polyhedron with parallelogram
    faces in parallel pairs whose zones share common axes."""
    rep = VerificationReport()
    n = p.vertex_count
    for fid, face in enumerate(p.faces):
        if len(face) < 3 or any(not 0 <= i < n for i in face) or len(set(face)) != len(face):
            rep.violations.append(Violation("structure", f"face {fid} malformed: {face}"))
    if rep.violations:
        return rep
    try:
        fs = face_structure(p.faces)
    except PolyhedronError as exc:
        rep.violations.append(Violation("structure", str(exc)))
        return rep
    rep.checks_run.append("structure")

    pts = _integer_coordinates(p.vertices)
    normals = []
    for fid, face in enumerate(p.faces):
        nrm = polygon_normal([pts[i] for i in face])
        normals.append(nrm)
        if is_zero(nrm):
            rep.violations.append(Violation("planarity", f"face {fid} is degenerate"))
            continue
        h = dot(nrm, pts[face[0]])
        off = [i for i in face if dot(nrm, pts[i]) != h]
        if off:
            rep.violations.append(
                Violation("planarity", f"face {fid}: vertices {off} off the face plane")
            )
    rep.checks_run.append("planarity")

    for fid, face in enumerate(p.faces):
        if len(face) != 4:
            rep.violations.append(Violation("parallelogram", f"face {fid} has {len(face)} sides"))
            continue
        a, b, c, d = (pts[i] for i in face)
        if add(a, c) != add(b, d):
            rep.violations.append(Violation("parallelogram", f"face {fid} is not a parallelogram"))
    rep.checks_run.append("parallelogram")

    by_dir: dict[tuple, list[int]] = {}
    for fid, nrm in enumerate(normals):
        if not is_zero(nrm):
            by_dir.setdefault(direction_key(nrm), []).append(fid)
    for key, fids in sorted(by_dir.items(), key=lambda kv: kv[1][0]):
        if len(fids) > 1:
            rep.violations.append(
                Violation("parallel_pairs", f"faces {fids} share one outward normal")
            )
        opposite = by_dir.get(tuple(-x for x in key), [])
        if len(opposite) != 1:
            rep.violations.append(
                Violation("parallel_pairs", f"face {fids[0]} has {len(opposite)} opposite faces")
            )
    rep.checks_run.append("parallel_pairs")

    for fid, outside, touching in _plane_sides(p.faces, normals, pts):
        if outside:
            rep.violations.append(
                Violation("convexity", f"face {fid}: vertices {outside} beyond its plane")
            )
        if touching:
            rep.violations.append(
                Violation("convexity", f"face {fid}: vertices {touching} on its plane")
            )
    rep.checks_run.append("convexity")

    if all(len(f) == 4 for f in p.faces):
        dec = trace_zones(fs)
        if isinstance(dec, ZoneDefect):
            rep.violations.append(Violation("zone_axes", f"zones undefined: {dec.reason}"))
        else:
            for z in dec.zones:
                u, v = z.zone_edges[0]
                axis = sub(pts[v], pts[u])
                bad = [e for e in z.zone_edges if not is_zero(cross(axis, sub(pts[e[1]], pts[e[0]])))]
                if bad:
                    rep.violations.append(
                        Violation("zone_axes", f"zone {z.id}: edges {bad} not parallel to its axis")
                    )
        rep.checks_run.append("zone_axes")
    return rep
