"""Walk through the cubic field of discriminant 49 and the character identity.

Run: python3 demos/field_and_characters.py
"""
from hilbert49.cubicfield import format_element_pretty, norm, totally_positive_of_trace
from hilbert49.ideals import count_cusps, divisor_sum_s, factor_element, rho_LK, s_of_element

print("totally positive elements of trace 7:")
for x in totally_positive_of_trace(7):
    print(f"  {format_element_pretty(x):12s} norm {norm(x)}")

print("\ndivisor sums of s against ideal counts in Q(zeta_7):")
for x in totally_positive_of_trace(11)[:6]:
    fac = factor_element(x)
    s = s_of_element(x) if x.mod_p() else "-"
    print(f"  {format_element_pretty(x):14s} ({fac})  s={s}  sum={divisor_sum_s(x)}  rho={rho_LK(x)}")

print(f"\ncusps of Gamma(p): {count_cusps()}")
