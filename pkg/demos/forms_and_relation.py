"""The weight one forms, their symmetry, and the degree 8 relation.

Run: python3 demos/forms_and_relation.py   (about ten seconds)
"""
from hilbert49.cyclotomic import CycNumber
from hilbert49.eisenstein import build_all
from hilbert49.grouprep import group, invariant_dimension, projective_image
from hilbert49.qseries import g7_translate, to_symmetrized
from hilbert49.relations import find_relation, reference_P8

series = build_all(12)
for name in ("F0", "F1", "F2", "F4", "E2"):
    print(f"{name} = {to_symmetrized(series[name])}")

for i in (0, 1, 2, 4):
    f = series[f"F{i}"]
    print(f"F{i}(z+1) = zeta^{3 * i % 7} F{i}(z):", g7_translate(f) == f.scale(CycNumber.zeta(3 * i)))

print(f"\ngroup of order {len(group())}, projective image of order {len(projective_image())}")
print("invariants of degree 0..12:", [invariant_dimension(k) for k in range(13)])

res = find_relation(25)
print(f"\nrelation: kernel dimension {res.kernel_dimension}, {len(res.relation)} terms, "
      f"matches the reference: {res.relation == reference_P8()}")
