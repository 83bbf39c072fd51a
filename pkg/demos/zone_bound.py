"""Zone count against vertex count.

A generic zonohedron with m zones has n = m(m-1) + 2 vertices, so
m = (1 + sqrt(4n - 7)) / 2, and every zonohedron obeys m <= 1 + sqrt(n).

    python demos/zone_bound.py
"""

import math

from zonograph import stats, zonotope_graph

print(f"{'m':>3} {'n':>6} {'F':>6} {'zone len':>8} {'m/sqrt(n)':>10} {'1+sqrt(n)':>10}")
for m in (3, 4, 6, 10, 16, 25, 40):
    rep = stats(zonotope_graph(m, 0))
    assert rep.generic_m == rep.m and rep.within_bound
    print(f"{rep.m:>3} {rep.n:>6} {rep.f:>6} {rep.max_zone_length:>8} "
          f"{rep.ratio:>10.4f} {1 + math.sqrt(rep.n):>10.2f}")
