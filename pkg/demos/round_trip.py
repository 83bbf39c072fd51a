"""Graph of a random zonotope -> recognize -> reduce -> realize -> verify.

The realized polyhedron is a different zonohedron from the one the graph
came from, but it has the same graph (up to reflection).

    python demos/round_trip.py [m] [seed]
"""

import sys
import tempfile
import time
from pathlib import Path

from zonograph import (
    embedding_isomorphism,
    emit_off,
    graph_of,
    realize_detailed,
    recognize,
    reduce_to_cube,
    verify_zonohedron,
    zonotope_graph,
)

m = int(sys.argv[1]) if len(sys.argv) > 1 else 8
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

g = zonotope_graph(m, seed)
cert = recognize(g)
print(f"input: {g.vertex_count} vertices, zones {cert.zone_lengths}")

trace = reduce_to_cube(g, cert)
print("deleted zone lengths:", [len(s.deleted_zone) for s in trace.steps])

t0 = time.perf_counter()
real = realize_detailed(g, cert, trace)
print(f"realized in {time.perf_counter() - t0:.2f} s")
for length, d in zip(real.added_zone_lengths, real.directions):
    print(f"  zone of {length:2d} faces added along {tuple(int(c) for c in d.d)} ({d.method})")

p = real.polyhedron
print(verify_zonohedron(p).summary())
print("same graph:", embedding_isomorphism(graph_of(p), g) is not None)

out = Path(tempfile.gettempdir()) / f"zonohedron_m{m}_s{seed}.off"
out.write_text(emit_off(p))
print("wrote", out)
