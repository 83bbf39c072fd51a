"""Decide whether a rotation graph is the graph of a zonohedron."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .plane_graph import (
    FaceStructure,
    RotationGraph,
    check_three_connected,
    euler_characteristic,
    extract_faces,
    is_connected,
)
from .zones import ZoneDecomposition, ZoneDefect, trace_zones, zone_intersection

REASONS = (
    "not_planar_embedding",
    "not_3_connected",
    "non_quad_face",
    "zone_self_intersection",
    "face_membership_defect",
    "pair_intersection_defect",
    "chain_defect",
    "too_small",
)

CHECKS = (
    "planar_embedding",
    "three_connected",
    "quadrilateral_faces",
    "two_zones_per_face",
    "pairwise_equal_chains",
)


@dataclass(frozen=True)
class ZoneCertificate:
    graph: RotationGraph = field(repr=False)
    faces: FaceStructure = field(repr=False)
    decomposition: ZoneDecomposition = field(repr=False)
    checks_passed: tuple[str, ...] = CHECKS

    @property
    def zone_count(self) -> int:
        return self.decomposition.zone_count

    @property
    def zone_lengths(self) -> list[int]:
        return self.decomposition.zone_lengths

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Rejection:
    reason: str
    witness: dict[str, Any]

    def __post_init__(self) -> None:
        if self.reason not in REASONS:
            raise ValueError(f"unknown rejection reason {self.reason!r}")

    def __bool__(self) -> bool:
        return False


def recognize(g: RotationGraph) -> ZoneCertificate | Rejection:
    """Check the zonohedral-graph conditions in a fixed order.

    Order: planar embedding, 3-connectivity, quadrilateral faces, zone
    tracing, pairwise zone intersections.  The first failing condition is
    reported.
    """
    n = g.vertex_count
    if n < 4:
        return Rejection("too_small", {"vertices": n, "minimum": 8})
    if not is_connected(g):
        return Rejection("not_3_connected", {"kind": "disconnected", "vertices": []})
    fs = extract_faces(g)
    chi = euler_characteristic(g, fs)
    if chi != 2:
        return Rejection(
            "not_planar_embedding",
            {
                "vertices": n,
                "edges": g.edge_count,
                "faces": fs.face_count,
                "euler_characteristic": chi,
            },
        )
    cut = check_three_connected(g, fs)
    if cut is not None:
        return Rejection(
            "not_3_connected", {"kind": cut.kind, "vertices": list(cut.vertices)}
        )
    for fid, face in enumerate(fs.faces):
        if len(face) != 4:
            return Rejection("non_quad_face", {"face": fid, "vertices": list(face)})
    if n < 8:
        # unreachable for 3-connected quadrangulations; kept as a guard
        return Rejection("too_small", {"vertices": n, "minimum": 8})
    dec = trace_zones(fs)
    if isinstance(dec, ZoneDefect):
        return Rejection(dec.reason, dec.witness)
    pair_defect = check_pairs(dec)
    if pair_defect is not None:
        return Rejection(pair_defect.reason, pair_defect.witness)
    return ZoneCertificate(g, fs, dec)


def check_pairs(dec: ZoneDecomposition) -> ZoneDefect | None:
    m = dec.zone_count
    for (a, b) in sorted(dec.pair_table):
        res = zone_intersection(dec, dec.zones[a], dec.zones[b])
        if isinstance(res, ZoneDefect):
            return res
    if len(dec.pair_table) != m * (m - 1) // 2:
        for a in range(m):
            for b in range(a + 1, m):
                if (a, b) not in dec.pair_table:
                    return ZoneDefect(
                        "pair_intersection_defect", {"zones": [a, b], "faces": []}
                    )
    return None


def report(result: ZoneCertificate | Rejection) -> dict[str, Any]:
    """Machine-readable form of a recognition result."""
    if isinstance(result, ZoneCertificate):
        return {
            "accepted": True,
            "zones": result.zone_count,
            "zone_lengths": result.zone_lengths,
            "checks": list(result.checks_passed),
        }
    return {"accepted": False, "reason": result.reason, "witness": result.witness}


def explain(result: ZoneCertificate | Rejection) -> str:
    lines = []
    if isinstance(result, ZoneCertificate):
        g = result.graph
        lines.append("zonohedral graph: accepted")
        lines.append(
            f"vertices: {g.vertex_count}  edges: {g.edge_count}  "
            f"faces: {result.faces.face_count}"
        )
        lines.append(f"zones: {result.zone_count}")
        lengths = ", ".join(str(x) for x in result.zone_lengths)
        lines.append(f"zone lengths: {lengths}")
        lines.append("checks: " + ", ".join(result.checks_passed))
    else:
        w = result.witness
        lines.append(f"zonohedral graph: rejected ({result.reason})")
        if result.reason == "chain_defect":
            (a, b), ca, cb = w["zones"], w["chains"][0], w["chains"][1]
            lines.append(
                f"zones {a} and {b} meet in faces {w['faces'][0]} and "
                f"{w['faces'][1]}; chain lengths of zone {a}: {ca[0]} vs {ca[1]}, "
                f"of zone {b}: {cb[0]} vs {cb[1]}"
            )
        elif result.reason == "face_membership_defect":
            lines.append(f"face {w['face']} lies in zones {w['zones']}")
        elif result.reason == "pair_intersection_defect":
            a, b = w["zones"]
            lines.append(f"zones {a} and {b} share {len(w['faces'])} faces: {w['faces']}")
        elif result.reason == "zone_self_intersection":
            lines.append(
                f"zone through face {w['face']} crosses itself; "
                f"orbit of {len(w['orbit'])} steps: {w['orbit']}"
            )
        elif result.reason == "not_3_connected":
            lines.append(f"{w['kind']}: {w['vertices']}")
        elif result.reason == "non_quad_face":
            lines.append(f"face {w['face']} has {len(w['vertices'])} sides: {w['vertices']}")
        else:
            lines.append(json.dumps(w, sort_keys=True))
    lines.append("json: " + json.dumps(report(result), sort_keys=True))
    return "\n".join(lines)
