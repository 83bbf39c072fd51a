"""Build a convex zonohedron for a certified graph.

Start from a cube labelled like the end of the reduction trace, then undo the
deletions newest first.  Undoing a deletion means choosing a direction ``d``
from which exactly the faces on one side of the zone cycle are visible,
pushing that side out by ``d`` and filling the gap with one parallelogram per
cycle edge.  That is the Minkowski sum with the segment ``[0, d]``, so the
result stays convex.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .plane_graph import RotationGraph, edge_key, extract_faces
from .polyhedron import (
    Polyhedron,
    Vec,
    _integer_coordinates,
    add,
    cross,
    dot,
    is_zero,
    polygon_normal,
    scale as vscale,
    sub,
    vec,
    verify_zonohedron,
)
from .recognizer import Rejection, ZoneCertificate, recognize
from .reducer import ReductionTrace, reduce_to_cube
from .planning import integer_axes, plan_directions

log = logging.getLogger(__name__)

__all__ = [
    "ExpansionDirection",
    "InfeasibleDirectionError",
    "Realization",
    "cube_base",
    "expand_zone",
    "find_direction",
    "realize",
    "realize_detailed",
    "verify_zonohedron",
]


class InfeasibleDirectionError(RuntimeError):
    """No direction sees exactly one side of the cycle."""


@dataclass(frozen=True)
class ExpansionDirection:
    """Direction for one zone expansion.

    ``method`` records how ``d`` was found (``"planned"``, ``"normal_sum"``,
    ``"lp"`` or ``"extreme_rays"``); ``perturbed`` is set when ``d`` had to be nudged off
    a face plane it was parallel to.
    """

    d: Vec
    side: frozenset[int]
    method: str = "normal_sum"
    perturbed: bool = False


@dataclass(frozen=True)
class Realization:
    polyhedron: Polyhedron
    directions: tuple[ExpansionDirection, ...] = ()
    offsets: tuple[Vec, ...] = field(default=(), repr=False)
    added_zone_lengths: tuple[int, ...] = ()


def _orient_outward(face: Sequence[int], pts: Sequence, inside) -> tuple[int, ...]:
    nrm = polygon_normal([pts[i] for i in face])
    if dot(nrm, sub(pts[face[0]], inside)) < 0:
        return tuple(reversed(face))
    return tuple(face)


def cube_base(scale=1, base: RotationGraph | None = None) -> Polyhedron:
    """Axis-parallel cube with corners in ``{0, scale}^3``.

    Without ``base`` vertex ``x + 2y + 4z`` sits at ``scale * (x, y, z)``.
    With ``base`` (a cube graph) its vertex 0 goes to the origin and its
    three neighbours, in rotation order, onto the three axes.
    """
    s = Fraction(scale)
    if s <= 0:
        raise ValueError("scale must be positive")
    if base is None:
        bits = [(v & 1, (v >> 1) & 1, (v >> 2) & 1) for v in range(8)]
        raw = []
        for b in (1, 2, 4):
            c, d = (x for x in (1, 2, 4) if x != b)
            for v0 in (0, b):
                raw.append((v0, v0 | c, v0 | c | d, v0 | d))
    else:
        bits = _cube_labelling(base)
        raw = extract_faces(base).faces
    pts = [vec(vscale(s, b)) for b in bits]
    inside = (s / 2, s / 2, s / 2)
    faces = tuple(_orient_outward(f, pts, inside) for f in raw)
    return Polyhedron(tuple(pts), faces)


def _cube_labelling(g: RotationGraph) -> list[tuple[int, int, int]]:
    if g.vertex_count != 8 or any(len(r) != 3 for r in g.rotations):
        raise ValueError("base graph is not a cube graph")
    axes = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    pos: dict[int, tuple[int, int, int]] = {0: (0, 0, 0)}
    for nb, ax in zip(g.rotations[0], axes):
        pos[nb] = ax
    frontier = list(g.rotations[0])
    while len(pos) < 8 and frontier:
        nxt = []
        for x in range(8):
            if x in pos:
                continue
            known = [pos[y] for y in g.rotations[x] if y in pos and y in frontier]
            if len(known) >= 2:
                p = tuple(max(c) for c in zip(*known))
                pos[x] = p
                nxt.append(x)
        frontier = nxt
    if len(pos) != 8 or len(set(pos.values())) != 8:
        raise ValueError("base graph is not a cube graph")
    for u, v in g.edges():
        if sum(abs(a - b) for a, b in zip(pos[u], pos[v])) != 1:
            raise ValueError("base graph is not a cube graph")
    return [pos[v] for v in range(8)]


def _unit(v) -> np.ndarray:
    a = np.array([float(c) for c in v])
    n = np.linalg.norm(a)
    return a / n if n else a


def _integer_candidates(x: np.ndarray):
    # Round a float direction to integer vectors of growing resolution.
    top = float(np.max(np.abs(x)))
    if not np.isfinite(top) or top == 0:
        return
    last = None
    for bits in (0, 1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48):
        q = (1 << bits) / top
        d = tuple(int(round(float(c) * q)) for c in x)
        g = math.gcd(*d)
        if g == 0:
            continue
        d = tuple(c // g for c in d)
        if d != last:
            last = d
            yield d


def _no_wrong_sign(d, constraints) -> bool:
    # zeros pass: a direction parallel to a face can still be nudged
    return all(dot(a, d) >= 0 for a in constraints)


def find_direction(
    p: Polyhedron, cycle: Sequence[int], side, hint=None
) -> ExpansionDirection:
    """Direction seeing every ``side`` face of ``p`` and no other face.

    ``cycle`` is a closed vertex cycle of ``p`` and ``side`` the face ids on
    one side of it.  Candidates, in order: the sum of unit outward normals of
    the side faces along the cycle; a margin-maximising LP over the faces
    along the cycle; the sum of the exact extreme rays of that cone.  Each
    candidate is rounded to an integer vector and accepted only if every face
    of ``p`` has the required strict sign.  An exact ``hint`` (e.g. from a
    direction plan) is tried as given before all of them.
    """
    side = frozenset(side)
    k = len(cycle)
    cyc = {edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
    pts = _integer_coordinates(p.vertices)
    normals = [polygon_normal([pts[i] for i in f]) for f in p.faces]
    signed = [n if fid in side else tuple(-c for c in n) for fid, n in enumerate(normals)]
    adjacent = []
    for fid, face in enumerate(p.faces):
        m = len(face)
        if any(edge_key(face[i], face[(i + 1) % m]) in cyc for i in range(m)):
            adjacent.append(fid)
    if not adjacent or not any(f in side for f in adjacent):
        raise InfeasibleDirectionError("cycle borders no face on the chosen side")
    local = [signed[f] for f in adjacent]

    def accept(d, method: str) -> ExpansionDirection | None:
        if not _no_wrong_sign(d, local):
            return None
        bad = [f for f, a in enumerate(signed) if dot(a, d) <= 0]
        if not bad:
            return ExpansionDirection(vec(d), side, method)
        if all(dot(signed[f], d) == 0 for f in bad):
            nudged = _nudge(d, bad, signed)
            if nudged is not None:
                log.debug("direction %s parallel to faces %s; nudged", d, bad)
                return ExpansionDirection(vec(nudged), side, method, perturbed=True)
        return None

    if hint is not None:
        out = accept(vec(hint), "planned")
        if out is not None:
            return out
        log.debug("planned direction %s rejected", hint)

    guess = sum((_unit(normals[f]) for f in adjacent if f in side), np.zeros(3))
    for d in _integer_candidates(guess):
        out = accept(d, "normal_sum")
        if out is not None:
            return out

    lp = _lp_direction([_unit(a) for a in local])
    if lp is not None:
        for d in _integer_candidates(lp):
            out = accept(d, "lp")
            if out is not None:
                log.debug("normal sum failed; LP direction %s", d)
                return out

    rays = _extreme_ray_sum(local)
    if rays is not None:
        out = accept(rays, "extreme_rays")
        if out is not None:
            log.debug("exact extreme-ray direction %s", rays)
            return out
    raise InfeasibleDirectionError(
        f"no direction separates the two sides of a {k}-cycle"
    )


def _nudge(d, faces, signed):
    # Tilt d toward the faces it is parallel to, halving until every sign holds.
    push = (Fraction(0),) * 3
    for f in faces:
        a = signed[f]
        top = max(abs(c) for c in a)
        push = add(push, vscale(Fraction(1, top), a))
    if is_zero(push):
        return None
    eps = Fraction(max(abs(c) for c in d), max(abs(c) for c in push))
    for _ in range(128):
        eps /= 2
        cand = add(vec(d), vscale(eps, push))
        if all(dot(a, cand) > 0 for a in signed):
            den = math.lcm(*(c.denominator for c in cand))
            ints = [int(c * den) for c in cand]
            g = math.gcd(*ints)
            return tuple(c // g for c in ints)
    return None


def _lp_direction(rows: list[np.ndarray]) -> np.ndarray | None:
    # maximise t subject to a.x >= t, |x_i| <= 1
    a = np.array(rows)
    n = len(rows)
    res = linprog(
        c=[0, 0, 0, -1],
        A_ub=np.hstack([-a, np.ones((n, 1))]),
        b_ub=np.zeros(n),
        bounds=[(-1, 1)] * 3 + [(0, 1)],
        method="highs",
    )
    if res.status != 0 or res.x[3] <= 0:
        return None
    return res.x[:3]


def _extreme_ray_sum(constraints):
    # Extreme rays of {x : a.x >= 0} lie on pairwise plane intersections;
    # their sum is interior whenever the open cone is non-empty.
    uniq = sorted(set(constraints))
    total = (0, 0, 0)
    found = False
    for a, b in itertools.combinations(uniq, 2):
        r = cross(a, b)
        if is_zero(r):
            continue
        for cand in (r, tuple(-c for c in r)):
            if all(dot(c, cand) >= 0 for c in uniq):
                total = add(total, cand)
                found = True
    if not found or is_zero(total):
        return None
    g = math.gcd(*(int(c) for c in total))
    return tuple(int(c) // g for c in total)


def expand_zone(
    p: Polyhedron, cycle: Sequence[int], direction: ExpansionDirection, scale=1
) -> Polyhedron:
    """Split ``p`` along ``cycle`` and insert a band of parallelograms.

    Vertices of the lifted side move by ``scale * d``.  Each cycle vertex
    ``cycle[i]`` stays put and gains a translated copy with id
    ``len(p.vertices) + i`` that takes its place in the lifted faces.
    """
    s = Fraction(scale)
    if s <= 0:
        raise ValueError("scale must be positive")
    t = vscale(s, direction.d)
    side = direction.side
    n = p.vertex_count
    k = len(cycle)
    copy = {c: n + i for i, c in enumerate(cycle)}
    lifted = set()
    for fid in side:
        lifted.update(p.faces[fid])
    lifted -= set(copy)
    for fid, face in enumerate(p.faces):
        if fid not in side and lifted.intersection(face):
            raise ValueError(f"face {fid} straddles the cycle")
    verts = [add(v, t) if i in lifted else v for i, v in enumerate(p.vertices)]
    verts += [add(p.vertices[c], t) for c in cycle]
    faces = [
        tuple(copy.get(x, x) for x in face) if fid in side else face
        for fid, face in enumerate(p.faces)
    ]
    inside = _mean(verts)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        faces.append(_orient_outward((a, b, copy[b], copy[a]), verts, inside))
    return Polyhedron(tuple(verts), tuple(faces))


def _mean(points) -> Vec:
    n = len(points)
    return tuple(sum(p[i] for p in points) / n for i in range(3))


def realize_detailed(
    g: RotationGraph,
    cert: ZoneCertificate | None = None,
    trace: ReductionTrace | None = None,
    scale=1,
    zone_scales: Sequence | None = None,
    plan: bool = True,
) -> Realization:
    """Realize ``g`` and keep the per-expansion record.

    Vertex ``x`` of the result is vertex ``x`` of ``g``.  ``zone_scales``
    gives one expansion length per added zone (in order of addition);
    otherwise every zone uses ``scale``.  With ``plan`` the zone axes are
    first solved for jointly (see :mod:`zonograph.planning`) and each step
    tries its planned axis first; without it every step picks greedily.
    """
    if cert is None:
        cert = recognize(g)
    if isinstance(cert, Rejection):
        raise ValueError(f"graph is not zonohedral: {cert.reason}")
    if trace is None:
        trace = reduce_to_cube(g, cert)
    steps = list(reversed(trace.steps))
    if zone_scales is None:
        zone_scales = [scale] * len(steps)
    if len(zone_scales) != len(steps):
        raise ValueError(f"need {len(steps)} zone scales, got {len(zone_scales)}")

    hints = [None] * len(steps)
    if plan and steps:
        dp = plan_directions(trace)
        if dp is not None and dp.feasible:
            hints = integer_axes(dp)
        else:
            log.debug("no feasible direction plan; choosing greedily")

    poly = cube_base(scale, trace.base)
    dirs = []
    offsets = []
    for step, s, hint in zip(steps, zone_scales, hints):
        src_faces = extract_faces(step.source).faces
        by_vertices = {frozenset(f): fid for fid, f in enumerate(poly.faces)}
        vm = step.vertex_map
        side = set()
        for fid in step.far_faces:
            img = frozenset(vm[x] for x in src_faces[fid])
            if img not in by_vertices:
                raise RuntimeError("trace and polyhedron disagree on a face")
            side.add(by_vertices[img])
        direction = find_direction(poly, step.zone_cycle, side, hint)
        expanded = expand_zone(poly, step.zone_cycle, direction, s)
        base = poly.vertex_count
        copy_of = {c: base + i for i, c in enumerate(step.zone_cycle)}
        far_rail = {b for _, b in step.rails}
        to_new = [copy_of[vm[x]] if x in far_rail else vm[x] for x in range(step.source.vertex_count)]
        from_new = {q: x for x, q in enumerate(to_new)}
        if len(from_new) != expanded.vertex_count:
            raise RuntimeError("vertex bookkeeping lost track of a vertex")
        verts = tuple(expanded.vertices[q] for q in to_new)
        faces = tuple(tuple(from_new[q] for q in f) for f in expanded.faces)
        poly = Polyhedron(verts, faces)
        if {frozenset(f) for f in faces} != {frozenset(f) for f in src_faces}:
            raise RuntimeError("expanded faces do not match the source graph")
        dirs.append(direction)
        offsets.append(vscale(Fraction(s), direction.d))
    return Realization(
        poly,
        tuple(dirs),
        tuple(offsets),
        tuple(len(st.deleted_zone) for st in steps),
    )


def realize(
    g: RotationGraph,
    cert: ZoneCertificate | None = None,
    trace: ReductionTrace | None = None,
    scale=1,
    zone_scales: Sequence | None = None,
    plan: bool = True,
) -> Polyhedron:
    """Convex zonohedron whose graph is ``g`` (vertex ids preserved)."""
    return realize_detailed(g, cert, trace, scale, zone_scales, plan).polyhedron
