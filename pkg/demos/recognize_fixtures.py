"""Run the recognizer on the bundled fixtures and print its explanations.

    python demos/recognize_fixtures.py
"""

from pathlib import Path

from zonograph import explain, parse_graph, recognize

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

for name in ("cube", "k4", "glued_quads", "pseudo_double_wheel"):
    g = parse_graph((FIXTURES / f"{name}.json").read_text())
    print(f"== {name} ({g.vertex_count} vertices, {g.edge_count} edges)")
    print(explain(recognize(g)))
    print()
