"""Cusp resolutions, intersection numbers and the singular points of the octic.

Run: python3 demos/cusp_geometry.py   (about ten seconds)
"""
import mpmath

from hilbert49 import dims, toric
from hilbert49.octic import verify_singular_orbit

for facet in (toric.FACET_T1, toric.FACET_T2):
    r = toric.verify_hull_facet(facet)
    (form, bound) = r.integer_form
    print(f"facet {[str(v) for v in facet]}: form {form} >= {bound}, checked up to trace {r.trace_bound}: {r.ok}")

sm = toric.build_cusp_fan("p", "sm")
star, _ = toric.star_quotient(sm, toric.d1_index(sm))
print("self-intersections of the boundary curves of D1:", star.self_intersections())
for key, val in toric.intersection_numbers().items():
    print(f"  {key:20s} {val}")

print("\ncusp forms of weight 8 for SL(2,O):", dims.dimension_gamma1(8).cusp)
print("Poincare series of the invariant ring:", [dims.poincare_invariant_ring(k) for k in range(9)])

with mpmath.workdps(50):
    r = verify_singular_orbit(80, 50)
print(f"\norbit of the point over (i,i,i): {r['orbit']} points, "
      f"max |grad Q| {mpmath.nstr(r['max_gradient'], 3)}, all A2: {r['all_singular']}")
