"""Brute-force zonotopes from generator vectors.

Each zonotope face is read off directly from its normal: for generators
``g_i, g_j`` and a sign ``s`` the face with normal ``s * (g_i x g_j)`` is
the parallelogram spanned by ``g_i, g_j`` at the corner that collects every
other generator pointing into that normal's half-space.  No convex hull and
none of the realizer's code is involved.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .plane_graph import GraphError, RotationGraph
from .polyhedron import Polyhedron, Vec, add, cross, dot, is_zero, vec


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple[Vec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(vec(g) for g in self.generators))

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class DegeneracyWitness:
    kind: Literal["zero", "parallel", "coplanar", "too_few"]
    indices: tuple[int, ...]


def check_general_position(gs: GeneratorSet | Sequence) -> DegeneracyWitness | None:
    """``None`` if no generator is zero, no two are parallel and no three
    are coplanar; otherwise the first offending index set."""
    gens = gs.generators if isinstance(gs, GeneratorSet) else tuple(vec(g) for g in gs)
    if len(gens) < 3:
        return DegeneracyWitness("too_few", tuple(range(len(gens))))
    return _degeneracy(gens)


def _degeneracy(gens: Sequence[Vec]) -> DegeneracyWitness | None:
    gens, _ = _as_integers(gens)
    for i, g in enumerate(gens):
        if is_zero(g):
            return DegeneracyWitness("zero", (i,))
    for i, j in itertools.combinations(range(len(gens)), 2):
        if is_zero(cross(gens[i], gens[j])):
            return DegeneracyWitness("parallel", (i, j))
    for i, j, k in itertools.combinations(range(len(gens)), 3):
        if dot(gens[i], cross(gens[j], gens[k])) == 0:
            return DegeneracyWitness("coplanar", (i, j, k))
    return None


def random_generators(m: int, seed: int, bound: int = 20) -> GeneratorSet:
    """``m`` integer generators in ``[-bound, bound]^3``, redrawn until generic."""
    rng = random.Random(seed)
    gens: list[Vec] = []
    while len(gens) < m:
        cand = vec(rng.randint(-bound, bound) for _ in range(3))
        if _compatible(gens, cand):
            gens.append(cand)
    return GeneratorSet(tuple(gens))


def _compatible(gens: Sequence[Vec], cand: Vec) -> bool:
    gens, _ = _as_integers(list(gens) + [cand])
    cand = gens.pop()
    if is_zero(cand) or any(is_zero(cross(g, cand)) for g in gens):
        return False
    return all(
        dot(cand, cross(a, b)) != 0 for a, b in itertools.combinations(gens, 2)
    )


def build_zonotope(gs: GeneratorSet | Sequence) -> Polyhedron:
    """Minkowski sum of the segments ``[0, g]`` over all generators."""
    if not isinstance(gs, GeneratorSet):
        gs = GeneratorSet(tuple(gs))
    bad = check_general_position(gs)
    if bad is not None:
        raise ValueError(f"generators not in general position: {bad}")
    gens, den = _as_integers(gs.generators)
    m = len(gens)
    index: dict[tuple[int, int, int], int] = {}
    verts: list[tuple[int, int, int]] = []

    def vid(p: Vec) -> int:
        if p not in index:
            index[p] = len(verts)
            verts.append(p)
        return index[p]

    faces = []
    zero = (0, 0, 0)
    for i, j in itertools.combinations(range(m), 2):
        axis = cross(gens[i], gens[j])
        for s in (1, -1):
            nrm = (s * axis[0], s * axis[1], s * axis[2])
            base = zero
            for k in range(m):
                if k != i and k != j and dot(nrm, gens[k]) > 0:
                    base = add(base, gens[k])
            a = base
            b = add(base, gens[i])
            c = add(b, gens[j])
            d = add(base, gens[j])
            # (a, b, c, d) turns counterclockwise about gens[i] x gens[j]
            cyc = (a, b, c, d) if s == 1 else (a, d, c, b)
            faces.append(tuple(vid(p) for p in cyc))
    return Polyhedron(
        tuple(tuple(Fraction(c, den) for c in v) for v in verts), tuple(faces)
    )


def _as_integers(gens: Sequence[Vec]) -> tuple[list[tuple[int, int, int]], int]:
    # exact: scaling by a common denominator changes no sign or zero test
    den = math.lcm(1, *(Fraction(c).denominator for g in gens for c in g))
    return [tuple(int(Fraction(c) * den) for c in g) for g in gens], den


def graph_of(p: Polyhedron) -> RotationGraph:
    """Rotation graph of a polyhedron whose faces are counterclockwise from
    outside; rotations come out counterclockwise from outside as well."""
    # In a CCW face (.., u, v, w, ..) the neighbour after w around v is u.
    nxt: list[dict[int, int]] = [dict() for _ in p.vertices]
    for face in p.faces:
        k = len(face)
        for t in range(k):
            u, v, w = face[t - 1], face[t], face[(t + 1) % k]
            if w in nxt[v]:
                raise GraphError(f"inconsistent face orientation at vertex {v}")
            nxt[v][w] = u
    rots = []
    for v, table in enumerate(nxt):
        if not table:
            rots.append(())
            continue
        start = min(table)
        rot = [start]
        x = table[start]
        while x != start:
            if x not in table or len(rot) > len(table):
                raise GraphError(f"faces around vertex {v} do not close up")
            rot.append(x)
            x = table[x]
        if len(rot) != len(table):
            raise GraphError(f"vertex {v} is not a manifold vertex")
        rots.append(tuple(rot))
    return RotationGraph(len(rots), tuple(rots))


def zonotope_graph(m: int, seed: int) -> RotationGraph:
    return graph_of(build_zonotope(random_generators(m, seed)))
