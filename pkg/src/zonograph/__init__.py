"""Recognize zonohedral graphs and realize them as convex zonohedra.

A zonohedral graph is the graph of a convex polyhedron whose faces are
parallelograms in parallel pairs.  :func:`recognize` certifies one from a
rotation system, :func:`reduce_to_cube` deletes its zones down to the cube,
and :func:`realize` rebuilds a polyhedron with exact rational coordinates.
"""

import types

from .formats import (
    InputError,
    StatsReport,
    dump_graph,
    emit_off,
    generic_zone_count,
    parse_graph,
    parse_off,
    stats,
)
from .oracle import (
    DegeneracyWitness,
    GeneratorSet,
    build_zonotope,
    check_general_position,
    graph_of,
    random_generators,
    zonotope_graph,
)
from .plane_graph import (
    ConnectivityWitness,
    FaceStructure,
    GraphError,
    RotationGraph,
    check_planarity,
    check_three_connected,
    embedding_isomorphism,
    euler_characteristic,
    extract_faces,
    is_connected,
)
from .planning import DirectionPlan, integer_axes, plan_directions
from .polyhedron import Polyhedron, VerificationReport, Violation, verify_zonohedron
from .realizer import (
    ExpansionDirection,
    InfeasibleDirectionError,
    Realization,
    cube_base,
    expand_zone,
    find_direction,
    realize,
    realize_detailed,
)
from .recognizer import Rejection, ZoneCertificate, explain, recognize, report
from .reducer import (
    ReductionError,
    ReductionStep,
    ReductionTrace,
    delete_zone,
    is_cube,
    reduce_to_cube,
)
from .zones import (
    PairIntersection,
    Zone,
    ZoneDecomposition,
    ZoneDefect,
    ZoneError,
    opposite_edge,
    trace_zones,
    zone_intersection,
)

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, types.ModuleType)
)
