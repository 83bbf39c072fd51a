"""Zone deletion by face contraction, down to the cube."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .plane_graph import FaceStructure, RotationGraph, edge_key, extract_faces
from .recognizer import Rejection, ZoneCertificate, recognize
from .zones import Zone


class ReductionError(RuntimeError):
    """Internal inconsistency while deleting zones from certified input."""


@dataclass(frozen=True)
class ReductionStep:
    """One zone deletion ``source -> result``.

    Attributes:
        deleted_zone: The zone, with face ids of ``source``.
        zone_cycle: Vertex cycle of ``result`` left behind by the zone.
        vertex_map: ``vertex_map[x]`` is the ``result`` id of ``source`` vertex x.
        rails: ``(near, far)`` endpoints of each zone edge, in zone order.
        far_side: ``source`` vertices on the far rail's side of the zone.
        far_faces: ``source`` face ids on that side.
        degenerate: The result has a vertex of degree below three.
    """

    deleted_zone: Zone
    zone_cycle: tuple[int, ...]
    vertex_map: tuple[int, ...]
    rails: tuple[tuple[int, int], ...]
    far_side: frozenset[int]
    far_faces: frozenset[int]
    source: RotationGraph = field(repr=False)
    result: RotationGraph = field(repr=False)
    degenerate: bool = False

    @property
    def cycle_edges(self) -> list[tuple[int, int]]:
        c = self.zone_cycle
        return [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def to_json(self) -> dict[str, Any]:
        return {
            "zone_faces": list(self.deleted_zone.face_cycle),
            "zone_edges": [list(e) for e in self.deleted_zone.zone_edges],
            "zone_cycle": [list(e) for e in self.cycle_edges],
            "vertex_map": list(self.vertex_map),
            "far_side": sorted(self.far_side),
        }


@dataclass(frozen=True)
class ReductionTrace:
    source: RotationGraph = field(repr=False)
    steps: tuple[ReductionStep, ...]
    base: RotationGraph = field(repr=False)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict[str, Any]:
        return {
            "steps": [s.to_json() for s in self.steps],
            "base": {"n": self.base.vertex_count, "adj": self.base.to_adjacency()},
        }


def _rails(z: Zone, fs: FaceStructure) -> list[tuple[int, int]]:
    # Orient every zone edge so the first endpoints form one boundary path of
    # the band and the second endpoints the other.
    k = len(z)
    near, far = z.zone_edges[0]
    rails = [(near, far)]
    for i in range(k):
        face = fs.faces[z.face_cycle[i]]
        j = face.index(near)
        nbrs = {face[(j + 1) % 4], face[(j - 1) % 4]}
        if far not in nbrs:
            raise ReductionError(f"zone {z.id}: edge {(near, far)} not in face {face}")
        (nxt_near,) = nbrs - {far}
        a, b = z.zone_edges[(i + 1) % k]
        if nxt_near not in (a, b):
            raise ReductionError(f"zone {z.id}: faces {z.face_cycle[i]} breaks the band")
        near, far = nxt_near, (b if nxt_near == a else a)
        rails.append((near, far))
    if rails[-1] != rails[0]:
        raise ReductionError(f"zone {z.id} closes up as a Moebius band")
    return rails[:-1]


def _merge_rotations(rot_u: tuple[int, ...], rot_v: tuple[int, ...], u: int, v: int) -> list[int]:
    i = rot_u.index(v)
    j = rot_v.index(u)
    return list(rot_u[i + 1:] + rot_u[:i]) + list(rot_v[j + 1:] + rot_v[:j])


def _drop_parallel_edges(rot: list[int], vertex: int) -> tuple[int, ...]:
    # parallel copies bound a contracted face, so they sit next to each other
    out = [w for i, w in enumerate(rot) if rot[i - 1] != w] or rot[:1]
    if len(set(out)) != len(out):
        raise ReductionError(f"vertex {vertex}: parallel edges that bound no face")
    return tuple(out)


def _far_faces(z: Zone, fs: FaceStructure, rails) -> tuple[set[int], set[int]]:
    in_zone = set(z.face_cycle)
    k = len(z)
    seeds: tuple[list[int], list[int]] = ([], [])
    for i in range(k):
        f = z.face_cycle[i]
        face = fs.faces[f]
        for side in (0, 1):
            a, b = rails[i][side], rails[(i + 1) % k][side]
            pos = next(
                t for t in range(4) if edge_key(face[t], face[(t + 1) % 4]) == edge_key(a, b)
            )
            g, _ = fs.across(f, pos)
            if g in in_zone:
                raise ReductionError(f"zone {z.id} touches itself across edge {(a, b)}")
            seeds[side].append(g)
    sides = []
    for side in (0, 1):
        seen = set(seeds[side])
        stack = list(seen)
        while stack:
            f = stack.pop()
            for pos in range(len(fs.faces[f])):
                g, _ = fs.across(f, pos)
                if g not in in_zone and g not in seen:
                    seen.add(g)
                    stack.append(g)
        sides.append(seen)
    near, far = sides
    if near & far or len(near) + len(far) + k != fs.face_count:
        raise ReductionError(f"zone {z.id} does not split the faces in two")
    return near, far


def delete_zone(
    g: RotationGraph, z: Zone, fs: FaceStructure | None = None
) -> tuple[RotationGraph, ReductionStep]:
    """Contract every face of ``z``: each zone edge shrinks to a vertex and
    each zone face to a single edge."""
    if fs is None:
        fs = extract_faces(g)
    if len(z) < 4:
        raise ReductionError(f"zone {z.id} has only {len(z)} faces")
    rails = _rails(z, fs)
    partner: dict[int, int] = {}
    for a, b in rails:
        if a in partner or b in partner:
            raise ReductionError(f"zone {z.id}: zone edges share a vertex")
        partner[a], partner[b] = b, a

    vertex_map = [-1] * g.vertex_count
    nxt = 0
    for x in range(g.vertex_count):
        y = partner.get(x)
        if y is not None and vertex_map[y] >= 0:
            vertex_map[x] = vertex_map[y]
        else:
            vertex_map[x] = nxt
            nxt += 1

    raw: list[list[int]] = [[] for _ in range(nxt)]
    for x in range(g.vertex_count):
        y = partner.get(x)
        if y is None:
            raw[vertex_map[x]] = [vertex_map[w] for w in g.rotations[x]]
        elif x < y:
            merged = _merge_rotations(g.rotations[x], g.rotations[y], x, y)
            raw[vertex_map[x]] = [vertex_map[w] for w in merged]
    rotations = tuple(_drop_parallel_edges(r, i) for i, r in enumerate(raw))
    g2 = RotationGraph(nxt, rotations)

    near_faces, far_faces = _far_faces(z, fs, rails)
    far = {b for _, b in rails}
    for f in far_faces:
        far.update(fs.faces[f])
    if far & {a for a, _ in rails}:
        raise ReductionError(f"zone {z.id}: a vertex lies on both sides")

    step = ReductionStep(
        deleted_zone=z,
        zone_cycle=tuple(vertex_map[a] for a, _ in rails),
        vertex_map=tuple(vertex_map),
        rails=tuple(rails),
        far_side=frozenset(far),
        far_faces=frozenset(far_faces),
        source=g,
        result=g2,
        degenerate=min(map(len, rotations), default=0) < 3,
    )
    return g2, step


def is_cube(g: RotationGraph) -> bool:
    res = recognize(g)
    return isinstance(res, ZoneCertificate) and sorted(res.zone_lengths) == [4, 4, 4]


def _surviving_lengths(step: ReductionStep, before: ZoneCertificate, after: ZoneCertificate) -> None:
    vm = step.vertex_map
    owner = {}
    for z in before.decomposition.zones:
        if z.id == step.deleted_zone.id:
            continue
        for a, b in z.zone_edges:
            owner[edge_key(vm[a], vm[b])] = z.id
    for z in after.decomposition.zones:
        zid = owner.get(z.zone_edges[0])
        if zid is None:
            raise ReductionError(f"zone {z.id} of the reduced graph has no preimage")
        old = len(before.decomposition.zones[zid])
        if len(z) != old - 2:
            raise ReductionError(
                f"zone {zid} went from {old} to {len(z)} faces; expected {old - 2}"
            )


def reduce_to_cube(g: RotationGraph, cert: ZoneCertificate | None = None) -> ReductionTrace:
    """Delete zones of length six or more until only the cube remains.

    The smallest-id eligible zone goes first.  Every intermediate graph is
    re-certified, and every surviving zone must lose exactly two faces.
    """
    if cert is None:
        cert = recognize(g)
    if isinstance(cert, Rejection):
        raise ValueError(f"graph is not zonohedral: {cert.reason}")
    steps = []
    cur, cur_cert = g, cert
    while cur_cert.zone_count > 3:
        z = next((z for z in cur_cert.decomposition.zones if len(z) >= 6), None)
        if z is None:
            raise ReductionError("no zone of length six or more to delete")
        nxt, step = delete_zone(cur, z, cur_cert.faces)
        nxt_cert = recognize(nxt)
        if isinstance(nxt_cert, Rejection):
            raise ReductionError(f"deleting zone {z.id} broke the graph: {nxt_cert.reason}")
        if (
            nxt.vertex_count != cur.vertex_count - len(z)
            or nxt.edge_count != cur.edge_count - 2 * len(z)
            or nxt_cert.faces.face_count != cur_cert.faces.face_count - len(z)
        ):
            raise ReductionError("vertex/edge/face counts off after deletion")
        _surviving_lengths(step, cur_cert, nxt_cert)
        steps.append(step)
        cur, cur_cert = nxt, nxt_cert
    if sorted(cur_cert.zone_lengths) != [4, 4, 4]:
        raise ReductionError(f"reduction ended at zone lengths {cur_cert.zone_lengths}")
    return ReductionTrace(g, tuple(steps), cur)
