"""Zones of a quadrangulated plane graph.

Inside a quadrilateral ``(a, b, c, d)`` the edges ``ab``/``cd`` and
``bc``/``da`` are opposite.  Walking from a face across one edge of an
opposite pair into the next face, and leaving that face through the edge
opposite the one we entered by, sweeps out a zone: a closed band of faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .plane_graph import Edge, FaceStructure, edge_key


class ZoneError(ValueError):
    """Bad arguments to a zone query (as opposed to a defective graph)."""


def opposite_edge(face: Sequence[int], e: Sequence[int]) -> Edge:
    """Edge of a quadrilateral face opposite to ``e``."""
    if len(face) != 4:
        raise ZoneError(f"face {tuple(face)} is not a quadrilateral")
    key = edge_key(*e)
    for i in range(4):
        if edge_key(face[i], face[(i + 1) % 4]) == key:
            return edge_key(face[(i + 2) % 4], face[(i + 3) % 4])
    raise ZoneError(f"{tuple(e)} is not an edge of face {tuple(face)}")


@dataclass(frozen=True)
class Zone:
    """A closed band of faces.

    ``zone_edges[i]`` is shared by ``face_cycle[i - 1]`` and ``face_cycle[i]``.
    """

    id: int
    face_cycle: tuple[int, ...]
    zone_edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.face_cycle)

    @property
    def positions(self) -> dict[int, int]:
        return {f: i for i, f in enumerate(self.face_cycle)}


@dataclass(frozen=True)
class PairIntersection:
    """Where two zones meet.

    ``chains[k]`` holds, for the k-th zone of the pair, the number of faces
    strictly between the shared faces on each side.  Only filled in when the
    zones share exactly two faces.
    """

    zones: tuple[int, int]
    faces: tuple[int, ...]
    chains: tuple[tuple[int, int], tuple[int, int]] | None


@dataclass(frozen=True)
class ZoneDecomposition:
    zones: tuple[Zone, ...]
    face_membership: tuple[tuple[int, ...], ...]
    pair_table: dict[tuple[int, int], PairIntersection] = field(repr=False)
    face_visits: int = 0

    @property
    def zone_count(self) -> int:
        return len(self.zones)

    @property
    def zone_lengths(self) -> list[int]:
        return [len(z) for z in self.zones]

    def zone_of_edge(self) -> dict[Edge, int]:
        return {e: z.id for z in self.zones for e in z.zone_edges}

    def intersection(self, a: int, b: int) -> PairIntersection:
        if a == b:
            raise ZoneError("a zone does not intersect itself")
        key = (a, b) if a < b else (b, a)
        entry = self.pair_table.get(key)
        if entry is None:
            entry = PairIntersection(key, (), None)
        if key == (a, b):
            return entry
        chains = None if entry.chains is None else (entry.chains[1], entry.chains[0])
        return PairIntersection((a, b), entry.faces, chains)


@dataclass(frozen=True)
class ZoneDefect:
    """Structural reason the faces do not decompose into proper zones."""

    reason: str
    witness: dict[str, Any]
    face_visits: int = 0


def trace_zones(fs: FaceStructure) -> ZoneDecomposition | ZoneDefect:
    """Partition face/opposite-pair incidences into zones.

    Every face has two opposite pairs, and each ``(face, pair)`` incidence is
    visited exactly once, so the work is linear in the number of faces.
    """
    faces = fs.faces
    for fid, face in enumerate(faces):
        if len(face) != 4:
            return ZoneDefect("non_quad_face", {"face": fid, "vertices": list(face)})

    owner: dict[tuple[int, int], int] = {}
    raw: list[tuple[list[int], list[Edge]]] = []
    visits = 0
    for f0 in range(len(faces)):
        for p in (0, 1):
            if (f0, p) in owner:
                continue
            zid = len(raw)
            orbit: list[int] = []
            edges: list[Edge] = []
            f, enter = f0, p
            repeated = None
            reversed_pair = False
            on_orbit: set[int] = set()
            while True:
                visits += 1
                if f in on_orbit and repeated is None:
                    repeated = f
                on_orbit.add(f)
                owner[(f, enter % 2)] = zid
                face = faces[f]
                edges.append(edge_key(face[enter], face[(enter + 1) % 4]))
                orbit.append(f)
                g, j = fs.across(f, (enter + 2) % 4)
                if g == f0 and j == p:
                    break
                if (g, j % 2) in owner:
                    # came back to a visited incidence the wrong way round
                    reversed_pair = True
                    break
                f, enter = g, j
            if repeated is not None or reversed_pair:
                face_id = repeated if repeated is not None else f0
                return ZoneDefect(
                    "zone_self_intersection",
                    {
                        "face": face_id,
                        "orbit": orbit,
                        "zone_edges": [list(e) for e in edges],
                        "closed": not reversed_pair,
                    },
                    visits,
                )
            raw.append((orbit, edges))

    zones = _canonical_zones(raw)
    membership: list[list[int]] = [[] for _ in faces]
    for z in zones:
        for f in z.face_cycle:
            membership[f].append(z.id)
    for fid, zs in enumerate(membership):
        if len(zs) != 2 or zs[0] == zs[1]:
            return ZoneDefect(
                "face_membership_defect", {"face": fid, "zones": sorted(zs)}, visits
            )
    return ZoneDecomposition(
        zones=zones,
        face_membership=tuple(tuple(sorted(zs)) for zs in membership),
        pair_table=_pair_table(zones, membership),
        face_visits=visits,
    )


def _canonical_zones(raw: list[tuple[list[int], list[Edge]]]) -> tuple[Zone, ...]:
    # Start at the smallest face; walk toward its smaller neighbour.
    canon = []
    for orbit, edges in raw:
        k = len(orbit)
        i = min(range(k), key=orbit.__getitem__)
        fwd_next = orbit[(i + 1) % k]
        bwd_next = orbit[(i - 1) % k]
        if k > 2 and bwd_next < fwd_next:
            # reversed cycle: face order flips and edge i+1 becomes the entry
            fc = tuple(orbit[(i - t) % k] for t in range(k))
            ze = tuple(edges[(i + 1 - t) % k] for t in range(k))
        else:
            fc = tuple(orbit[(i + t) % k] for t in range(k))
            ze = tuple(edges[(i + t) % k] for t in range(k))
        canon.append((fc, ze))
    canon.sort()
    return tuple(Zone(zid, fc, ze) for zid, (fc, ze) in enumerate(canon))


def _pair_table(
    zones: tuple[Zone, ...], membership: list[list[int]]
) -> dict[tuple[int, int], PairIntersection]:
    pos = [z.positions for z in zones]
    shared: dict[tuple[int, int], list[int]] = {}
    for fid, (a, b) in enumerate(membership):
        key = (a, b) if a < b else (b, a)
        shared.setdefault(key, []).append(fid)
    table = {}
    for (a, b), fids in shared.items():
        chains = None
        if len(fids) == 2:
            chains = (
                _chain_lengths(len(zones[a]), pos[a][fids[0]], pos[a][fids[1]]),
                _chain_lengths(len(zones[b]), pos[b][fids[0]], pos[b][fids[1]]),
            )
        table[(a, b)] = PairIntersection((a, b), tuple(fids), chains)
    return table


def _chain_lengths(length: int, i: int, j: int) -> tuple[int, int]:
    gap = abs(i - j)
    return (gap - 1, length - gap - 1)


def zone_intersection(
    dec: ZoneDecomposition, z1: Zone, z2: Zone
) -> PairIntersection | ZoneDefect:
    """Shared faces of two zones and the chains they cut, or the defect."""
    for z in (z1, z2):
        if z.id >= dec.zone_count or dec.zones[z.id] != z:
            raise ZoneError(f"zone {z.id} does not belong to this decomposition")
    entry = dec.intersection(z1.id, z2.id)
    if len(entry.faces) != 2:
        return ZoneDefect(
            "pair_intersection_defect",
            {"zones": [z1.id, z2.id], "faces": list(entry.faces)},
        )
    assert entry.chains is not None
    for c in entry.chains:
        if c[0] != c[1] or c[0] < 1:
            return ZoneDefect(
                "chain_defect",
                {
                    "zones": [z1.id, z2.id],
                    "faces": list(entry.faces),
                    "chains": [list(entry.chains[0]), list(entry.chains[1])],
                },
            )
    return entry
