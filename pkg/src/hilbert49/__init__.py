"""Hilbert modular threefolds for the cubic field of discriminant 49.

Exact arithmetic in O = Z[w], w^3 + w^2 - 2w - 1 = 0; q-expansions of the
level p Eisenstein series F0, F1, F2, F4 and E2; the action of SL(2, F7) and
the degree 8 relation; toroidal cusp data; dimension formulas; and the
numeric study of the octic surface with 84 A2 points.
"""
__version__ = "0.1.0"

__all__ = ["cubicfield", "ideals", "qseries", "eisenstein", "grouprep", "relations",
           "toric", "dims", "octic", "cli"]
