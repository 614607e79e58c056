"""Klein bottle: integer homology, torsion in type A, forgotten in type B.

Run from the repository root:  python3 demos/torsion_pipeline.py
"""

from pathlib import Path

from gpd.diagram import type_A_diagram, type_B_diagram
from gpd.homology import parse_filtration, persistent_module
from gpd.serialize import diagram_to_tsv, label_text

DATA = Path(__file__).resolve().parent.parent / "src" / "gpd" / "data"

K = parse_filtration((DATA / "klein_bottle.flt").read_text())
print(f"filtered Klein bottle: {len(K.simplices)} simplices, "
      f"critical values {[str(v) for v in K.critical_values]}")

F = persistent_module(K, 1, "Z")
rank, torsion = F.objects[-1].data
print(f"final H1 over Z: rank {rank}, torsion {list(torsion)}")

print("\ntype A diagram (free group on indecomposables; keeps [Z/2]):")
print(diagram_to_tsv(type_A_diagram(F)))

print("type B diagram (short-exact-sequence quotient; torsion collapses):")
print(diagram_to_tsv(type_B_diagram(F)))

cell = next(v for _, v in type_A_diagram(F).cells
            if any(k != "Z" for k, _ in v.coeffs))
print(f"the torsion-bearing label, pretty-printed: {label_text(cell, F.cat)}")
