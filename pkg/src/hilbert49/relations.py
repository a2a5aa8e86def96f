"""The degree 8 relation among F0, F1, F2, F4, E2 and the polynomials built on it.

``find_relation`` discovers the relation from q-expansions alone; the
reference polynomials below (P8, Q, the weight two cusp quadrics and the
eight sections of 2K) are stated as data and checked against it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import build_all
from .grouprep import (
    act_on_polynomial,
    commutant_dimension,
    gamma4,
    gamma7,
    invariant_basis,
    invariant_basis_deg8,
    invariant_dimension,
    invariant_polynomials,
    span_is_stable,
)
from .linalg import kernel_rational, rank_rational
from .polynomial import WeightedPolynomial, variables
from .qseries import BOUNDARY_RAYS, QExpansion, boundary_order, jacobian_det

SERIES_ORDER = ("F0", "F1", "F2", "F4", "E2")
E2_TOP = (0, 0, 0, 0, 4)
MIN_TRACE_BOUND = 25


class InsufficientRows(ValueError):
    """The truncated expansions do not determine the relation."""


def _vars():
    F0, F1, F2, F4, E2 = variables()
    return F0, F1, F2, F4, E2, E2 * Fraction(6, 7)


def reference_P8() -> WeightedPolynomial:
    F0, F1, F2, F4, E2, e = _vars()
    return (e**4
            - 3 * e**2 * (2 * F0**4 + 6 * F0 * F1 * F2 * F4 + (F2 * F4**3 + F1**3 * F4 + F1 * F2**3))
            + e * (-8 * F0**6 + 20 * F0**3 * F1 * F2 * F4
                   + 10 * F0**2 * (F2 * F4**3 + F1**3 * F4 + F1 * F2**3)
                   + 10 * F0 * (F1**2 * F4**3 + F2**3 * F4**2 + F1**3 * F2**2)
                   + (15 * F1**2 * F2**2 * F4**2 + F1 * F4**5 + F2**5 * F4 + F1**5 * F2))
            + reference_Q())


def reference_Q() -> WeightedPolynomial:
    F0, F1, F2, F4, _, _ = _vars()
    return (-3 * F0**8 + 38 * F0**5 * F1 * F2 * F4
            + 13 * F0**4 * (F2 * F4**3 + F1**3 * F4 + F1 * F2**3)
            - 46 * F0**3 * (F1**2 * F4**3 + F2**3 * F4**2 + F1**3 * F2**2)
            + F0**2 * (5 * F1 * F4**5 + 5 * F2**5 * F4 + 5 * F1**5 * F2 + 23 * F1**2 * F2**2 * F4**2)
            - 2 * F0 * (F4**7 + F2**7 + F1**7 + 4 * F1 * F2**2 * F4**4 + 4 * F1**4 * F2 * F4**2
                        + 4 * F1**2 * F2**4 * F4)
            + (2 * F2**2 * F4**6 + 2 * F1**6 * F4**2 + 2 * F1**2 * F2**6 - 5 * F1**3 * F2 * F4**4
               - 5 * F1 * F2**4 * F4**3 - 5 * F1**4 * F2**3 * F4))


def cusp_basis_weight2() -> list[WeightedPolynomial]:
    F0, F1, F2, F4, _, _ = _vars()
    return [2 * F0 * F1 - F4**2, 2 * F0 * F2 - F1**2, 2 * F0 * F4 - F2**2]


def sections_2K() -> list[WeightedPolynomial]:
    F0, F1, F2, F4, E2, e = _vars()
    h = Fraction(1, 2)
    c24, c12 = Fraction(24, 7), Fraction(12, 7)
    return [
        F0**4 - e**2 + 3 * F0 * F1 * F2 * F4 + h * (F2 * F4**3 + F4 * F1**3 + F1 * F2**3),
        4 * F0**4 + c24 * E2 * F0**2 - 10 * F4 * F2 * F1 * F0 + F4 * F1**3 + F2**3 * F1 + F4**3 * F2,
        4 * F1 * F0 * (F0**2 + e) - 10 * F4**2 * F0**2 - 4 * F4 * F2**2 * F0 - 4 * F4 * F2 * F1**2
        + F2**4 + c12 * E2 * F4**2,
        4 * F2 * F0 * (F0**2 + e) - 10 * F1**2 * F0**2 - 4 * F1 * F4**2 * F0 - 4 * F1 * F4 * F2**2
        + F4**4 + c12 * E2 * F1**2,
        4 * F4 * F0 * (F0**2 + e) - 10 * F2**2 * F0**2 - 4 * F2 * F1**2 * F0 - 4 * F2 * F1 * F4**2
        + F1**4 + c12 * E2 * F2**2,
        2 * F2 * F1 * F0**2 + 2 * F1**3 * F0 - 2 * F4**2 * F2 * F0 + F4**2 * F1**2
        - c12 * E2 * F2 * F1 + 2 * F4 * F2**3,
        2 * F1 * F4 * F0**2 + 2 * F4**3 * F0 - 2 * F2**2 * F1 * F0 + F2**2 * F4**2
        - c12 * E2 * F1 * F4 + 2 * F2 * F1**3,
        2 * F4 * F2 * F0**2 + 2 * F2**3 * F0 - 2 * F1**2 * F4 * F0 + F1**2 * F2**2
        - c12 * E2 * F4 * F2 + 2 * F1 * F4**3,
    ]


# evaluation on q-expansions ---------------------------------------------------------

def series_values(T: int) -> list[QExpansion]:
    s = build_all(T)
    return [s[k] for k in SERIES_ORDER]


def evaluate_on_series(polys: list[WeightedPolynomial], T: int) -> list[QExpansion]:
    vals = series_values(T)
    cache: dict = {}
    return [p.evaluate(vals, cache=cache) for p in polys]


def coefficient_matrix(series: list[QExpansion]) -> tuple[list[tuple[int, int, int]], list[list[Fraction]]]:
    """Rows indexed by monomials of the q-lattice, columns by the series."""
    keys = sorted({n for s in series for n, _ in s.items()}, key=lambda n: (sum(n), n))
    return keys, [[s.coefficient(n) for s in series] for n in keys]


@dataclass
class RelationResult:
    relation: WeightedPolynomial
    kernel_dimension: int
    rows: int
    rank: int
    trace_bound: int
    kernel_vector: list[Fraction] = field(default_factory=list)


def find_relation(T: int = MIN_TRACE_BOUND) -> RelationResult:
    """The linear relation among the six invariant weight 8 polynomials.

    Raises InsufficientRows when the expansions up to T leave more than a
    one dimensional kernel (too few monomials to pin the relation down).
    """
    basis = invariant_basis_deg8()
    values = evaluate_on_series(basis, T)
    keys, rows = coefficient_matrix(values)
    kern = kernel_rational(rows, len(basis)) if rows else kernel_rational([], len(basis))
    rank = len(basis) - len(kern)
    if len(kern) != 1:
        if len(kern) > 1:
            raise InsufficientRows(
                f"at trace bound {T} only {len(keys)} rows; kernel has dimension {len(kern)}")
        raise ArithmeticError("no relation among the invariant polynomials")
    vec = kern[0]
    rel = WeightedPolynomial()
    for c, b in zip(vec, basis):
        rel = rel + b * c
    rel = rel.scaled_to(E2_TOP, Fraction(6, 7) ** 4)
    return RelationResult(rel, len(kern), len(keys), rank, T, vec)


def kernel_without(T: int, drop: int) -> int:
    """Kernel dimension after removing one basis polynomial."""
    basis = invariant_basis_deg8()
    values = evaluate_on_series([b for i, b in enumerate(basis) if i != drop], T)
    _, rows = coefficient_matrix(values)
    return len(basis) - 1 - rank_rational(rows)


def derive_octic(P8: WeightedPolynomial | None = None) -> WeightedPolynomial:
    P8 = reference_P8() if P8 is None else P8
    return P8.set_e2_zero()


def P4() -> WeightedPolynomial:
    """Generator of the degree four invariants in the F's, scaled to F0^4 coefficient 2."""
    (p,) = invariant_polynomials(4)
    return p.scaled_to((4, 0, 0, 0, 0), 2)


# checks ---------------------------------------------------------------------------

@dataclass
class SectionCheck:
    name: str
    constant_term: Fraction
    orders: dict[str, Fraction | None]
    certified: bool


def check_vanishing(polys: list[WeightedPolynomial], T: int, names=None) -> list[SectionCheck]:
    values = evaluate_on_series(polys, T)
    out = []
    for i, s in enumerate(values):
        orders, cert = {}, True
        for label, r in BOUNDARY_RAYS.items():
            bo = boundary_order(s, r)
            orders[label] = bo.value
            cert = cert and bo.certified
        name = names[i] if names else f"#{i + 1}"
        out.append(SectionCheck(name, s.constant_term(), orders, cert))
    return out


def section_decomposition(secs: list[WeightedPolynomial] | None = None) -> dict:
    """Invariance of the first section and irreducibility of the span of the rest."""
    secs = sections_2K() if secs is None else secs
    rest = secs[1:]
    return {
        "span_stable": span_is_stable(secs),
        "first_invariant": all(act_on_polynomial(g, secs[0]) == secs[0] for g in (gamma4(), gamma7())),
        "rest_stable": span_is_stable(rest),
        "rest_commutant_dimension": commutant_dimension(rest),
        "span_rank": _rank_of(secs),
    }


def _rank_of(polys: list[WeightedPolynomial]) -> int:
    monos = sorted({m for p in polys for m in p.terms})
    return rank_rational([[p.coefficient(m) for m in monos] for p in polys])


def factorization_obstruction(P8: WeightedPolynomial | None = None) -> dict:
    """Rule out P8 = (E2^2 + a P4)(E2^2 + b P4).

    Such a product has no E2^1 term, while P8 does.  (Scaling E2 by 6/7 does
    not affect the argument.)
    """
    P8 = reference_P8() if P8 is None else P8
    e1 = P8.e2_part(1)
    return {"e2_linear_terms": len(e1), "product_form_possible": e1.is_zero()}


def jacobian_report(T: int = 20) -> dict:
    s = build_all(T)
    F0 = s["F0"]
    inv = F0.inverse()
    t1, t2, t3 = s["F1"] * inv, s["F2"] * inv, s["F4"] * inv
    J = jacobian_det(t1, t2, t3)
    d, lead = J.lowest_degree_terms()
    return {"nonzero": not J.is_zero(), "terms": len(J), "lowest_degree": d,
            "leading_terms": lead, "series": J}


def irreducibility_report(T: int = 20) -> dict:
    jr = jacobian_report(T)
    fo = factorization_obstruction()
    return {
        "invariant_dimension_2": invariant_dimension(2),
        "jacobian_nonzero": jr["nonzero"],
        "jacobian_lowest_degree": jr["lowest_degree"],
        "jacobian_leading_terms": jr["leading_terms"],
        "factorization_ruled_out": not fo["product_form_possible"],
    }


def weight2_space_dimension(T: int = 20) -> int:
    """Rank of E2 and the ten quadrics in the F's as q-expansions."""
    F0, F1, F2, F4, E2, _ = _vars()
    fs = [F0, F1, F2, F4]
    polys = [E2] + [fs[i] * fs[j] for i in range(4) for j in range(i, 4)]
    _, rows = coefficient_matrix(evaluate_on_series(polys, T))
    return rank_rational(rows)
