"""Combinatorial plane graphs stored as rotation systems.

A :class:`RotationGraph` lists, for every vertex, its neighbours in
counterclockwise cyclic order.  Faces are traced with the rule: after the
directed edge ``(u, v)`` comes ``(v, w)`` where ``w`` follows ``u`` in the
rotation of ``v``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Sequence

Edge = tuple[int, int]
Dart = tuple[int, int]


class GraphError(ValueError):
    """Raised for rotation systems that violate the basic invariants."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class RotationGraph:
    """Simple graph with a fixed cyclic neighbour order at every vertex.

    Attributes:
        vertex_count: Number of vertices, ids ``0 .. vertex_count - 1``.
        rotations: ``rotations[v]`` is the counterclockwise neighbour cycle of v.
    """

    vertex_count: int
    rotations: tuple[tuple[int, ...], ...]
    _succ: tuple[dict[int, int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        rotations = tuple(tuple(int(x) for x in rot) for rot in self.rotations)
        object.__setattr__(self, "rotations", rotations)
        n = self.vertex_count
        if n < 0:
            raise GraphError("vertex_count must be nonnegative")
        if len(rotations) != n:
            raise GraphError(f"expected {n} rotations, got {len(rotations)}")
        neighbour_sets = []
        for v, rot in enumerate(rotations):
            for w in rot:
                if not 0 <= w < n:
                    raise GraphError(f"vertex {v}: neighbour {w} out of range")
                if w == v:
                    raise GraphError(f"vertex {v}: self-loop")
            s = set(rot)
            if len(s) != len(rot):
                raise GraphError(f"vertex {v}: duplicate neighbour in rotation")
            neighbour_sets.append(s)
        for v, rot in enumerate(rotations):
            for w in rot:
                if v not in neighbour_sets[w]:
                    raise GraphError(
                        f"asymmetric adjacency: {v} lists {w}, {w} does not list {v}"
                    )
        succ = tuple(
            {rot[i]: rot[(i + 1) % len(rot)] for i in range(len(rot))}
            for rot in rotations
        )
        object.__setattr__(self, "_succ", succ)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]]) -> RotationGraph:
        return cls(len(adj), tuple(tuple(a) for a in adj))

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation of ``v``."""
        return self._succ[v][u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._succ[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u, rot in enumerate(self.rotations) for v in rot if u < v]

    def darts(self) -> Iterator[Dart]:
        for u, rot in enumerate(self.rotations):
            for v in rot:
                yield (u, v)

    def mirror(self) -> RotationGraph:
        """Same graph with every rotation reversed (the reflected embedding)."""
        return RotationGraph(
            self.vertex_count, tuple(tuple(reversed(r)) for r in self.rotations)
        )

    def to_adjacency(self) -> list[list[int]]:
        return [list(r) for r in self.rotations]


@dataclass(frozen=True)
class FaceStructure:
    """Faces traced from a rotation system.

    ``dart_face[(u, v)]`` gives ``(face id, position)`` with
    ``faces[face][position] == u`` and the next vertex ``v``.
    """

    faces: tuple[tuple[int, ...], ...]
    dart_face: dict[Dart, tuple[int, int]] = field(repr=False)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_to_faces(self) -> dict[Edge, tuple[int, int]]:
        out: dict[Edge, tuple[int, int]] = {}
        for (u, v), (f, _) in self.dart_face.items():
            if u < v:
                out[(u, v)] = (f, self.dart_face[(v, u)][0])
        return out

    def face_edges(self, f: int) -> list[Edge]:
        face = self.faces[f]
        k = len(face)
        return [edge_key(face[i], face[(i + 1) % k]) for i in range(k)]

    def across(self, f: int, pos: int) -> tuple[int, int]:
        """Face and position on the other side of edge ``pos`` of face ``f``."""
        face = self.faces[f]
        u, v = face[pos], face[(pos + 1) % len(face)]
        return self.dart_face[(v, u)]


def extract_faces(g: RotationGraph) -> FaceStructure:
    """Trace every face orbit of the rotation system."""
    dart_face: dict[Dart, tuple[int, int]] = {}
    faces: list[tuple[int, ...]] = []
    for start in g.darts():
        if start in dart_face:
            continue
        fid = len(faces)
        cycle: list[int] = []
        u, v = start
        while (u, v) not in dart_face:
            dart_face[(u, v)] = (fid, len(cycle))
            cycle.append(u)
            u, v = v, g.successor(v, u)
        if (u, v) != start:
            raise GraphError("face tracing did not close; rotation system corrupt")
        faces.append(tuple(cycle))
    return FaceStructure(tuple(faces), dart_face)


def connected_components(
    g: RotationGraph, removed: Iterable[int] = ()
) -> list[list[int]]:
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in range(g.vertex_count):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.rotations[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def is_connected(g: RotationGraph) -> bool:
    return len(connected_components(g)) <= 1


def euler_characteristic(g: RotationGraph, fs: FaceStructure | None = None) -> int:
    if fs is None:
        fs = extract_faces(g)
    e = g.edge_count
    # an isolated vertex still bounds one face
    f = fs.face_count if e else min(g.vertex_count, 1)
    return g.vertex_count - e + f


def check_planarity(g: RotationGraph, fs: FaceStructure | None = None) -> bool:
    """True iff the connected rotation system embeds in the sphere."""
    if not is_connected(g):
        raise GraphError("planarity check needs a connected graph")
    return euler_characteristic(g, fs) == 2


@dataclass(frozen=True)
class ConnectivityWitness:
    """Vertex set whose removal disconnects the graph (or leaves < 2 vertices)."""

    kind: Literal["disconnected", "cut_vertex", "cut_pair", "too_few_vertices"]
    vertices: tuple[int, ...]

    def holds_for(self, g: RotationGraph) -> bool:
        if self.kind == "too_few_vertices":
            return g.vertex_count < 4
        return len(connected_components(g, self.vertices)) > 1


def articulation_points(g: RotationGraph) -> list[int]:
    """Cut vertices of a connected graph (iterative Hopcroft-Tarjan)."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    cut = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(g.rotations[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.rotations[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return sorted(cut)


def _separating_pairs_from_faces(fs: FaceStructure) -> list[tuple[int, int]]:
    # In a 2-connected plane graph {x, y} separates iff two distinct faces
    # contain both and x, y are not consecutive on one of them.
    seen: dict[tuple[int, int], list[tuple[int, bool]]] = defaultdict(list)
    for fid, face in enumerate(fs.faces):
        k = len(face)
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                seen[edge_key(face[i], face[j])].append((fid, consecutive))
    pairs = []
    for key, entries in seen.items():
        if len({f for f, _ in entries}) >= 2 and not all(c for _, c in entries):
            pairs.append(key)
    return sorted(pairs)


def _separating_pair_by_removal(g: RotationGraph) -> tuple[int, int] | None:
    # O(V (V + E)): remove each vertex and look for a cut vertex in the rest.
    for x in range(g.vertex_count):
        rest = _remove_vertex(g, x)
        cuts = articulation_points(rest.graph)
        if cuts:
            return edge_key(x, rest.old_id[cuts[0]])
    return None


@dataclass
class _Subgraph:
    graph: RotationGraph
    old_id: list[int]


def _remove_vertex(g: RotationGraph, x: int) -> _Subgraph:
    old = [v for v in range(g.vertex_count) if v != x]
    new = {v: i for i, v in enumerate(old)}
    rots = tuple(tuple(new[w] for w in g.rotations[v] if w != x) for v in old)
    return _Subgraph(RotationGraph(len(old), rots), old)


def check_three_connected(
    g: RotationGraph, fs: FaceStructure | None = None
) -> ConnectivityWitness | None:
    """Return ``None`` when ``g`` is 3-connected, else a separating set.

    Cut vertices come from a DFS low-point pass.  Separating pairs are read
    off the face incidences when the rotation system is planar, and found by
    vertex removal otherwise.  The returned set is always re-checked by
    traversal before it is reported.
    """
    n = g.vertex_count
    if n < 4:
        return ConnectivityWitness("too_few_vertices", tuple(range(n)))
    comps = connected_components(g)
    if len(comps) > 1:
        return ConnectivityWitness("disconnected", ())
    cuts = articulation_points(g)
    if cuts:
        return ConnectivityWitness("cut_vertex", (cuts[0],))
    if fs is None:
        fs = extract_faces(g)
    if euler_characteristic(g, fs) == 2:
        candidates = _separating_pairs_from_faces(fs)
        for pair in candidates:
            w = ConnectivityWitness("cut_pair", pair)
            if w.holds_for(g):
                return w
        return None
    pair = _separating_pair_by_removal(g)
    return None if pair is None else ConnectivityWitness("cut_pair", pair)


def embedding_isomorphism(
    g1: RotationGraph, g2: RotationGraph, allow_reflection: bool = True
) -> dict[int, int] | None:
    """Find a vertex bijection carrying the rotation system of g1 onto g2.

    Connected graphs only.  With ``allow_reflection`` the mirror of g2 is
    tried as well.  Returns the map or ``None``.
    """
    if (
        g1.vertex_count != g2.vertex_count
        or g1.edge_count != g2.edge_count
        or sorted(map(len, g1.rotations)) != sorted(map(len, g2.rotations))
    ):
        return None
    if g1.vertex_count == 0:
        return {}
    if g1.edge_count == 0:
        return {0: 0} if g1.vertex_count == 1 else None
    targets = [g2, g2.mirror()] if allow_reflection else [g2]
    u0 = 0
    while not g1.rotations[u0]:
        u0 += 1
    v0 = g1.rotations[u0][0]
    for h in targets:
        # try the identity placement first; it is the common case
        darts = [(u0, v0)] + [d for d in h.darts() if d != (u0, v0)]
        for x, y in darts:
            if x >= h.vertex_count or not h.has_edge(x, y):
                continue
            m = _extend_map(g1, h, u0, v0, x, y)
            if m is not None:
                return m
    return None


def _extend_map(
    g1: RotationGraph, g2: RotationGraph, u: int, v: int, x: int, y: int
) -> dict[int, int] | None:
    if g1.degree(u) != g2.degree(x):
        return None
    fwd = {u: x}
    used = {x}
    queue = [(u, v, x, y)]
    while queue:
        a, b, p, q = queue.pop()
        d = g1.degree(a)
        if g2.degree(p) != d:
            return None
        b_i, q_j = b, q
        for _ in range(d):
            if b_i in fwd:
                if fwd[b_i] != q_j:
                    return None
            else:
                if q_j in used or g1.degree(b_i) != g2.degree(q_j):
                    return None
                fwd[b_i] = q_j
                used.add(q_j)
                queue.append((b_i, a, q_j, p))
            b_i = g1.successor(a, b_i)
            q_j = g2.successor(p, q_j)
    if len(fwd) != g1.vertex_count:
        return None
    return fwd
