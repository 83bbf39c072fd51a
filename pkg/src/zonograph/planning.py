"""Choose all expansion directions at once before building anything.

Replaying a reduction trace with directions picked one step at a time can
dead-end: a choice inside one step's feasible cone may leave a later zone
cycle with an empty cone.  The trace already fixes, for every face and every
zone, which side of the zone the face lies on.  That pins down the sign of
``det(a_i, a_j, a_k)`` for every triple of zone axes, so the axes can be
solved for jointly and handed to the realizer as first guesses.

Solving is heuristic.  A spectral drawing of the graph gives approximate
vertex positions; since every vertex sits at ``sum_k S[v, k] * a_k``, a
least-squares fit recovers approximate axes.  A smoothed count of wrong
triple signs is then minimised with L-BFGS at falling temperature.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize
from scipy.sparse.linalg import eigsh

from .plane_graph import RotationGraph, extract_faces
from .reducer import ReductionTrace

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectionPlan:
    """Unit zone axes in the cube frame.

    Rows 0-2 are the cube axes, row ``3 + t`` the t-th added zone.
    ``margin`` is the smallest determinant over all triples of axes, signed
    so that positive means correct; it is positive exactly when the plan
    realizes the graph.
    """

    axes: np.ndarray
    margin: float
    attempts: int
    orientations: np.ndarray | None = None

    @property
    def feasible(self) -> bool:
        return self.margin > 0


def side_matrix(trace: ReductionTrace) -> np.ndarray:
    """``S[v, k] = 1`` when source vertex v lies on the far side of zone k.

    Zones are numbered in order of addition, the three cube axes first.
    """
    from .realizer import _cube_labelling

    g = trace.source
    n = g.vertex_count
    zmap = list(range(n))
    per_step = []
    for st in trace.steps:
        per_step.append([1 if zmap[v] in st.far_side else 0 for v in range(n)])
        zmap = [st.vertex_map[x] for x in zmap]
    bits = _cube_labelling(trace.base)
    cols = [[bits[zmap[v]][b] for v in range(n)] for b in range(3)]
    cols += list(reversed(per_step))
    return np.array(cols, dtype=np.int8).T


def orientation_tensor(trace: ReductionTrace, S: np.ndarray) -> np.ndarray | None:
    """Required sign of ``det(a_i, a_j, a_k)`` for every ordered triple.

    Each face of the source spans two zone axes; the other zones' sides
    decide which way its normal must point.  The cube axes fix the overall
    orientation (``det(e1, e2, e3) = +1``).  Returns ``None`` if two faces
    demand different signs for the same triple.
    """
    m = S.shape[1]
    rows = []
    for face in extract_faces(trace.source).faces:
        turns = []
        for t in range(len(face)):
            diff = S[face[(t + 1) % len(face)]].astype(int) - S[face[t]]
            (k,) = np.nonzero(diff)[0]
            turns.append((int(k), int(diff[k])))
        (i, si), (j, sj) = turns[0], turns[1]
        rows.append((i, j, si * sj, 2 * S[face[0]].astype(int) - 1))
    tau = next(
        (rho * side[2] * (1 if (i, j) == (0, 1) else -1)
         for i, j, rho, side in rows if {i, j} == {0, 1}),
        None,
    )
    if tau is None:
        return None
    chi = np.zeros((m, m, m), dtype=np.int8)
    for i, j, rho, side in rows:
        for k in range(m):
            if k in (i, j):
                continue
            c = tau * rho * side[k]
            for (a, b, d), parity in _permutations(i, j, k):
                want = c * parity
                if chi[a, b, d] == 0:
                    chi[a, b, d] = want
                elif chi[a, b, d] != want:
                    return None
    return chi


def _permutations(i, j, k):
    return (
        ((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
        ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1),
    )


def triples(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays ``I < J < K`` over all triples of ``range(m)``."""
    t = np.array(
        [(i, j, k) for k in range(m) for j in range(k) for i in range(j)], dtype=int
    ).reshape(-1, 3)
    return t[:, 0], t[:, 1], t[:, 2]


def slacks(axes: np.ndarray, chi: np.ndarray) -> np.ndarray:
    """Signed determinant of every triple of unit axes; all positive iff
    ``axes`` has the orientations ``chi`` asks for."""
    I, J, K = triples(len(axes))
    u = axes / np.linalg.norm(axes, axis=1, keepdims=True)
    return chi[I, J, K] * np.einsum("ij,ij->i", np.cross(u[I], u[J]), u[K])


def _spectral_drawing(g: RotationGraph) -> np.ndarray:
    # Laplacian eigenvectors 2-4 tend to draw a polytope graph convexly.
    n = g.vertex_count
    src = [u for u in range(n) for _ in g.rotations[u]]
    dst = [v for u in range(n) for v in g.rotations[u]]
    adj = sp.csr_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    lap = sp.diags(np.asarray(adj.sum(axis=1)).ravel()) - adj
    if n <= 400:
        _, vecs = np.linalg.eigh(lap.toarray())
        return vecs[:, 1:4]
    vals, vecs = eigsh(lap.tocsc(), k=4, sigma=-1e-3, which="LM")
    return vecs[:, np.argsort(vals)[1:4]]


def _start(g: RotationGraph, S: np.ndarray, chi: np.ndarray) -> np.ndarray:
    pos = _spectral_drawing(g)
    axes, *_ = np.linalg.lstsq(S - S.mean(axis=0), pos - pos.mean(axis=0), rcond=None)
    if np.sum(np.sign(slacks(axes, chi))) < 0:
        axes[:, 0] *= -1  # the drawing came out mirrored
    return axes / np.linalg.norm(axes, axis=1, keepdims=True)


def _loss(flat: np.ndarray, sgn, I, J, K, temp: float):
    # temp * softplus(-det / temp) summed over triples, on unit axes
    raw = flat.reshape(-1, 3)
    nrm = np.linalg.norm(raw, axis=1, keepdims=True)
    a = raw / nrm
    cij = np.cross(a[I], a[J])
    z = sgn * np.einsum("ij,ij->i", cij, a[K]) / temp
    val = temp * np.logaddexp(0, -z).sum()
    w = -sgn / (1 + np.exp(np.clip(z, -500, 500)))
    m = len(a)
    parts = (
        (K, w[:, None] * cij),
        (I, w[:, None] * np.cross(a[J], a[K])),
        (J, w[:, None] * np.cross(a[K], a[I])),
    )
    grad = sum(
        np.stack([np.bincount(idx, weights=g[:, c], minlength=m) for c in range(3)], axis=1)
        for idx, g in parts
    )
    grad = (grad - np.sum(grad * a, axis=1, keepdims=True) * a) / nrm
    return val, grad.ravel()


def _anneal(axes: np.ndarray, chi: np.ndarray, rounds: int) -> np.ndarray:
    I, J, K = triples(len(axes))
    sgn = chi[I, J, K].astype(float)
    temp = 0.02
    for _ in range(rounds):
        res = minimize(
            _loss, axes.ravel(), args=(sgn, I, J, K, temp), jac=True,
            method="L-BFGS-B", options={"maxiter": 2000},
        )
        axes = res.x.reshape(-1, 3)
        axes = axes / np.linalg.norm(axes, axis=1, keepdims=True)
        if slacks(axes, chi).min() > 0:
            break
        temp /= 2
    return axes


def _to_cube_frame(axes: np.ndarray) -> np.ndarray:
    # The linear map sending the first three axes to e1, e2, e3 keeps every
    # determinant sign, since det(a0, a1, a2) > 0 in a valid plan.
    out = axes @ np.linalg.inv(axes[:3].T).T
    out[:3] = np.eye(3)
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def plan_directions(
    trace: ReductionTrace, seed: int = 0, attempts: int = 4, rounds: int = 12
) -> DirectionPlan | None:
    """Solve for zone axes with the orientation signs the trace demands.

    Returns ``None`` when the sign requirements contradict each other.  A
    plan with non-positive ``margin`` means no attempt succeeded; attempts
    after the first restart from the spectral fit plus seeded noise.
    """
    S = side_matrix(trace)
    m = S.shape[1]
    if m == 3:
        return DirectionPlan(np.eye(3), 1.0, 0, np.ones((3, 3, 3), dtype=np.int8))
    chi = orientation_tensor(trace, S)
    if chi is None:
        log.debug("face orientations inconsistent; no plan")
        return None
    rng = np.random.default_rng(seed)
    base = _start(trace.source, S.astype(float), chi)
    best, best_margin = base, -np.inf
    for attempt in range(1, attempts + 1):
        start = base if attempt == 1 else base + 0.3 * rng.standard_normal(base.shape)
        axes = _anneal(start, chi, rounds)
        margin = float(slacks(axes, chi).min())
        log.debug("plan attempt %d: margin %.3g", attempt, margin)
        if margin > best_margin:
            best, best_margin = axes, margin
        if margin > 0:
            break
    if best_margin > 0:
        best = _to_cube_frame(best)
        best_margin = float(slacks(best, chi).min())
    return DirectionPlan(best, best_margin, attempt, chi)


def integer_axes(plan: DirectionPlan, max_bits: int = 52) -> list[tuple[int, int, int]]:
    """Round the added axes of a feasible plan to small integer vectors.

    Each axis gets the coarsest rounding that keeps every triple it belongs
    to correctly oriented, judged against the axes already rounded.
    """
    chi = plan.orientations
    axes = plan.axes.copy()
    m = len(axes)
    out = []
    for k in range(3, m):
        others = [t for t in range(m) if t != k]
        ii, jj = np.triu_indices(len(others), 1)
        I, J = np.array(others)[ii], np.array(others)[jj]
        rows = chi[I, J, k][:, None] * np.cross(axes[I], axes[J])
        x = axes[k] / np.max(np.abs(axes[k]))
        best = None
        for bits in range(1, max_bits + 1):
            d = np.round(x * (1 << bits))
            if not d.any():
                continue
            u = d / np.linalg.norm(d)
            if (rows @ u).min() > 1e-12:
                best = d
                break
        if best is None:
            best = np.round(x * (1 << max_bits))
        ints = [int(v) for v in best]
        g = math.gcd(*ints)
        out.append(tuple(v // g for v in ints))
        axes[k] = best / np.linalg.norm(best)
    return out
