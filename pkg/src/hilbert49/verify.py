"""The regression suite: twelve checks, each returning a ``Check`` record.

Shared by ``hilbert49 verify-all`` and the acceptance tests.  Reference data
(trace tables, printed expansions, the Fricke coefficient list) lives here
as frozen oracles.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

import mpmath

from .qseries import canonical_rotation

SCHEMA_VERSION = 1

TRACE_7 = ("-w^2+4", "-w+2", "w^2+w+1")
TRACE_14 = (
    "-5w^2-3w+12", "-3w^2-2w+9", "-2w^2-3w+7",
    "-2w^2+8", "-w^2-w+6", "-2w+4",
    "-w^2+2w+7", "w+5", "w^2+3",
    "2w^2-w+1", "3w^2-2w-1", "w^2+3w+4",
    "2w^2+2w+2", "3w^2+w", "2w^2+5w+3",
)

# leading terms of the expansions in symmetrized notation
PRINTED_EXPANSIONS = {
    "F0": "1/14 + q(2,2,3) + q(2,5,7) + q(3,5,6) + q(3,6,5) + q(3,7,11) + 2q(4,10,14) + 2q(4,4,6)",
    "F1": "q(1,1,1) + 2q(2,4,4) + q(2,3,5) + q(2,6,9) + 2q(3,3,4) + 2q(3,6,8) + 2q(4,11,16)"
          " + 2q(4,5,8) + 2q(4,6,7) + 2q(4,7,6) + 2q(4,9,11) + 3q(4,8,12)",
    "F2": "q(1,2,3) + 2q(2,2,2) + q(2,5,6) + 2q(3,4,6) + 2q(3,5,5) + 2q(3,7,10) + 2q(4,10,13)"
          " + 2q(4,12,18) + 2q(4,4,5) + 2q(4,6,10) + 2q(4,7,9) + 2q(4,9,14) + 3q(4,8,8)",
    "F4": "q(1,2,2) + 2q(2,4,6) + 2q(3,4,5) + 2q(3,5,4) + 2q(3,7,9) + q(3,9,14) + 2q(4,10,12)"
          " + 2q(4,6,9) + 2q(4,7,8) + 2q(4,8,7) + 2q(4,9,13) + 3q(4,4,4)",
    "E2": "-1/168 + q(2,2,3) + q(2,5,7) + 8q(3,5,6) + q(3,6,5) + q(3,1,11) + 9q(4,4,6)"
          " + 14q(4,5,5) + 14q(4,7,10) + 14q(4,8,9) + 9q(4,10,14)",
}
# a printed exponent whose trace is not a multiple of 7: (as printed, orbit carrying the value)
KNOWN_MISPRINTS = {("E2", canonical_rotation((3, 1, 11))): ((3, 1, 11), (3, 7, 11))}
EXPANSION_FULL_BOUND = 36


@dataclass
class Check:
    id: str
    paper_anchor: str
    status: str            # pass | fail | insufficient
    value: Any = None
    expected: Any = None
    tolerance: Any = None
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        return f"[{self.status.upper():12s}] {self.id:18s} {self.paper_anchor} ({self.seconds:.2f}s)"


@dataclass
class Config:
    trace_bound: int | None = None     # overrides the relation search bound only
    dps: int = 50
    octic_bounds: tuple[int, int] = (60, 80)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _timed(fn: Callable[[Config], Check]) -> Callable[[Config], Check]:
    def run(cfg: Config) -> Check:
        t = time.perf_counter()
        chk = fn(cfg)
        chk.seconds = time.perf_counter() - t
        return chk
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# 1 ---------------------------------------------------------------------------------

@_timed
def trace_tables(cfg: Config) -> Check:
    from .cubicfield import parse_element, totally_positive_of_trace
    got7 = sorted(totally_positive_of_trace(7))
    got14 = sorted(totally_positive_of_trace(14))
    ref7 = sorted(parse_element(s) for s in TRACE_7)
    ref14 = sorted(parse_element(s) for s in TRACE_14)
    ok = got7 == ref7 and got14 == ref14
    return Check("trace-tables", "totally positive elements of trace 7 and 14", _status(ok),
                 [len(got7), len(got14)], [3, 15])


# 2 ---------------------------------------------------------------------------------

@_timed
def character_identity(cfg: Config) -> Check:
    from .cubicfield import FieldElement, totally_positive_up_to_trace
    from .ideals import divisor_sum_s_ideal, factor_coords, rho_LK_ideal
    n, bad = 0, []
    for _, arr in totally_positive_up_to_trace(40):
        for a, b, c in arr.tolist():
            I = factor_coords(a, b, c)
            n += 1
            if divisor_sum_s_ideal(I) != rho_LK_ideal(I):
                bad.append(str(FieldElement(a, b, c)))
    return Check("character-identity", "divisor sums of s equal rho_{L/K} up to trace 40",
                 _status(not bad and n > 1000), {"elements": n, "mismatches": bad[:5]}, {"mismatches": []})


# 3 ---------------------------------------------------------------------------------

def printed_terms() -> dict[str, list[tuple[Fraction, tuple[int, int, int]]]]:
    """Printed (coefficient, exponent) pairs, one per rotation orbit."""
    from .qseries import parse_symmetrized, symmetrized_terms
    out = {}
    for name, text in PRINTED_EXPANSIONS.items():
        out[name] = symmetrized_terms(parse_symmetrized(text, 60))
    return out


def compare_expansions(T: int) -> dict:
    """Printed coefficients of trace <= T against build_F / build_E2 at bound T."""
    from .eisenstein import build_all
    series = build_all(T)
    checked, mismatches, misprints, skipped = 0, [], [], 0
    for name, terms in printed_terms().items():
        f = series[name]
        for c, n in terms:
            if sum(n) > T:
                skipped += 1
                continue
            checked += 1
            got = f.coefficient(n)
            if got == c:
                continue
            printed, alt = KNOWN_MISPRINTS.get((name, n), (n, None))
            if alt is not None and sum(alt) <= T and f.coefficient(alt) == c and got == 0:
                misprints.append({"series": name, "printed": printed, "matches": alt})
            elif alt is not None and sum(alt) > T and got == 0:
                misprints.append({"series": name, "printed": printed, "matches": None})
            else:
                mismatches.append({"series": name, "exponent": n, "printed": str(c), "computed": str(got)})
    return {"T": T, "checked": checked, "skipped_above_T": skipped,
            "mismatches": mismatches, "misprints": misprints}


@_timed
def eisenstein_expansions(cfg: Config) -> Check:
    low = compare_expansions(20)
    full = compare_expansions(EXPANSION_FULL_BOUND)
    ok = not low["mismatches"] and not full["mismatches"] and full["skipped_above_T"] == 0
    notes = [f"misprint logged: {m['series']} q{m['printed']} is the orbit q{m['matches']}"
             for m in full["misprints"]]
    return Check("eisenstein-expansions", "printed leading terms of F0, F1, F2, F4, E2",
                 _status(ok), {"T=20": low, f"T={EXPANSION_FULL_BOUND}": full},
                 {"mismatches": []}, notes=notes)


# 4 ---------------------------------------------------------------------------------

@_timed
def eigenvalues(cfg: Config) -> Check:
    from .cyclotomic import CycNumber
    from .eisenstein import build_F
    from .qseries import g7_translate
    res = {}
    for i in (0, 1, 2, 4):
        f = build_F(i, 20)
        res[f"F{i}"] = g7_translate(f) == f.scale(CycNumber.zeta(3 * i))
    return Check("g7-eigenvalues", "translation by 1 multiplies F_i by zeta^(3i)",
                 _status(all(res.values())), res, {k: True for k in res})


# 5 ---------------------------------------------------------------------------------

@_timed
def diagonal_identities(cfg: Config) -> Check:
    from .eisenstein import FRICKE_EXPECTED, build_s, conic, diagonal_F, f0_bar_cubic, fricke_f0_bar
    N = 40
    s = [build_s(a, N) for a in (1, 2, 3)]
    lhs = diagonal_F(0, 7 * N).in_units(1)
    cubic_ok = lhs == f0_bar_cubic(*s)
    conic_ok = conic(*s).as_list() == [0] * (N + 1)
    fr = fricke_f0_bar(14, 1).as_list()
    fr_ok = [x.to_fraction() if hasattr(x, "to_fraction") else x for x in fr] == list(FRICKE_EXPECTED)
    ok = cubic_ok and conic_ok and fr_ok
    return Check("diagonal-identities", "restriction of F0 to the diagonal, the conic and the Fricke image",
                 _status(ok), {"cubic": cubic_ok, "conic": conic_ok, "fricke": [str(x) for x in fr]},
                 {"cubic": True, "conic": True, "fricke": [str(x) for x in FRICKE_EXPECTED]})


# 6 ---------------------------------------------------------------------------------

@_timed
def representation(cfg: Config) -> Check:
    from .cyclotomic import CycMatrix
    from .grouprep import gamma4, group, invariant_dimension, projective_image
    g = group()
    dims = [invariant_dimension(k) for k in (0, 2, 4, 6, 8)]
    sq = gamma4() * gamma4() == -CycMatrix.identity(4)
    value = {"order": len(g), "projective": len(projective_image()), "invariants": dims, "gamma4^2=-I": sq}
    expected = {"order": 336, "projective": 168, "invariants": [1, 0, 1, 1, 3], "gamma4^2=-I": True}
    return Check("representation", "group generated by g4 and g7 and its invariants",
                 _status(value == expected), value, expected)


# 7 ---------------------------------------------------------------------------------

@_timed
def relation(cfg: Config) -> Check:
    from .relations import InsufficientRows, evaluate_on_series, find_relation, reference_P8
    T = cfg.trace_bound or 25
    try:
        res = find_relation(T)
    except InsufficientRows as exc:
        return Check("relation", "the weight 8 relation P8", "insufficient", str(exc), "kernel dimension 1")
    P8 = reference_P8()
    match = res.relation == P8
    (z,) = evaluate_on_series([P8], 30)
    ok = match and len(res.relation) == 42 and res.kernel_dimension == 1 and z.is_zero()
    return Check("relation", "the weight 8 relation P8", _status(ok),
                 {"kernel_dimension": res.kernel_dimension, "terms": len(res.relation),
                  "matches_reference": match, "rows": res.rows, "vanishes_T30": z.is_zero()},
                 {"kernel_dimension": 1, "terms": 42, "matches_reference": True, "vanishes_T30": True})


# 8 ---------------------------------------------------------------------------------

@_timed
def octic_orbit(cfg: Config) -> Check:
    from .octic import VANISHING_TOL, verify_singular_orbit
    from .relations import derive_octic, reference_Q
    Q = derive_octic()
    q_ok = Q == reference_Q() and len(Q) == 24
    lo, hi = cfg.octic_bounds
    with mpmath.workdps(cfg.dps):
        r_lo = verify_singular_orbit(lo, cfg.dps)
        r_hi = verify_singular_orbit(hi, cfg.dps)
        # at the lower bound the truncation error itself exceeds 1e-20, so the
        # singular checks there use ten times the tail bound as tolerance
        lo_tol = max(VANISHING_TOL, 10 * r_lo["tail_bound"])
        r_lo_tail = verify_singular_orbit(lo, cfg.dps, tol=lo_tol)
    stable = r_lo["orbit"] == r_hi["orbit"] == 84
    ok = (q_ok and stable and r_hi["all_singular"] and r_hi["stabilizer"] == 2
          and not r_hi["ambiguous"] and r_lo_tail["all_singular"] and r_lo["max_q"] < VANISHING_TOL)

    def summary(r):
        return {"orbit": r["orbit"], "stabilizer": r["stabilizer"], "all_singular": r["all_singular"],
                "max_gradient": mpmath.nstr(r["max_gradient"], 3), "max_q": mpmath.nstr(r["max_q"], 3),
                "tail_bound": mpmath.nstr(r["tail_bound"], 3)}

    notes = [f"T={lo}: singular checks at tolerance {mpmath.nstr(lo_tol, 3)} (10x tail bound)"]
    return Check("octic-orbit", "84 singular points of type A2 on the octic W", _status(ok),
                 {"octic_terms": len(Q), f"T={lo}": summary(r_lo), f"T={hi}": summary(r_hi),
                  f"T={lo} tail tolerance": r_lo_tail["all_singular"]},
                 {"octic_terms": 24, "orbit": 84, "stabilizer": 2}, str(VANISHING_TOL), notes=notes)


# 9 ---------------------------------------------------------------------------------

@_timed
def toric_checks(cfg: Config) -> Check:
    from . import toric
    facets = [toric.verify_hull_facet(f).ok for f in (toric.FACET_T1, toric.FACET_T2)]
    inter = toric.intersection_numbers()
    kch = sorted(set(toric.kch_on_d1().values()))
    sm = toric.build_cusp_fan("p", "sm")
    disc = toric.discrepancy(sm, sm.e_coords[(0, 0)])
    normal = sorted(set(toric.normal_bundle_values(sm, toric.d1_index(sm))), reverse=True)
    value = {"facets": facets, "D1 square": str(inter["(2L-3/2E-D)^2 D1"]), "L^3": str(inter["L^3"]),
             "(K-E/2)^3": str(inter["(K-E/2)^3"]), "K_ch.M": [str(x) for x in kch],
             "boundary curves": len(toric.kch_on_d1()), "E discrepancy": str(disc),
             "normal values": [str(x) for x in normal]}
    expected = {"facets": [True, True], "D1 square": "5/2", "L^3": "12", "(K-E/2)^3": "36",
                "K_ch.M": ["1/2"], "boundary curves": 6, "E discrepancy": "1/2",
                "normal values": ["0", "-1", "-2", "-3", "-4", "-5"]}
    return Check("toric", "hull facets, the surface D1 and intersection numbers",
                 _status(value == expected), value, expected)


# 10 --------------------------------------------------------------------------------

@_timed
def dimensions(cfg: Config) -> Check:
    from . import dims
    gp = {k: (dims.dimension_gamma_p(k).cusp, dims.dimension_gamma_p(k).total) for k in range(2, 11)}
    gp_ok = gp[2] == (3, 11) and all(gp[k] == (2 * (k - 1) ** 3, 2 * (k - 1) ** 3 + 8) for k in range(3, 11))
    g1 = dims.dimension_gamma1(8)
    vol = dims.volume_constants()
    poin = all(dims.poincare_invariant_ring(k) == dims.galois_invariant_formula(k) for k in range(4, 13))
    ok = gp_ok and (g1.cusp, g1.total) == (4, 5) and (vol["vol_SL2O"], vol["vol_Gamma_p"]) == (Fraction(1, 84), 2) \
        and dims.poincare_invariant_ring(4) == 46 and poin
    return Check("dimensions", "dimension formulas on Gamma(p) and SL(2,O)", _status(ok),
                 {"gamma_p": gp_ok, "gamma1_weight8": [g1.cusp, g1.total],
                  "volumes": [str(vol["vol_SL2O"]), str(vol["vol_Gamma_p"])],
                  "poincare(4)": dims.poincare_invariant_ring(4), "formulas_agree": poin},
                 {"gamma_p": True, "gamma1_weight8": [4, 5], "volumes": ["1/84", "2"],
                  "poincare(4)": 46, "formulas_agree": True})


# 11 --------------------------------------------------------------------------------

@_timed
def cusp_sections(cfg: Config) -> Check:
    from .grouprep import span_is_stable
    from .relations import check_vanishing, cusp_basis_weight2, sections_2K
    quad = check_vanishing(cusp_basis_weight2(), 25)
    secs = check_vanishing(sections_2K(), 30)

    def good(checks, order):
        return all(c.constant_term == 0 and c.certified and all(v is not None and v >= order
                                                                for v in c.orders.values())
                   for c in checks)

    value = {"quadrics": good(quad, 1), "sections": good(secs, 2),
             "quadrics_stable": span_is_stable(cusp_basis_weight2()), "sections_stable": span_is_stable(sections_2K())}
    return Check("cusp-sections", "weight 2 cusp forms and the eight sections of 2K",
                 _status(all(value.values())), value, {k: True for k in value})


# 12 --------------------------------------------------------------------------------

@_timed
def cusps(cfg: Config) -> Check:
    from .ideals import count_cusps
    n = count_cusps()
    return Check("cusp-count", "number of cusps of Gamma(p)", _status(n == 8), n, 8)


ALL_CHECKS = (trace_tables, character_identity, eisenstein_expansions, eigenvalues,
              diagonal_identities, representation, relation, octic_orbit, toric_checks,
              dimensions, cusp_sections, cusps)


def run_check(fn, cfg: Config) -> Check:
    """Run one check; an exception becomes a failed record rather than a crash."""
    try:
        return fn(cfg)
    except Exception as exc:  # noqa: BLE001 - aggregated into the report
        return Check(fn.__name__, fn.__doc__ or fn.__name__, "fail", f"{type(exc).__name__}: {exc}")


def verify_all(cfg: Config | None = None, only: list[str] | None = None) -> list[Check]:
    cfg = cfg or Config()
    out = []
    for fn in ALL_CHECKS:
        if only and fn.__name__ not in only:
            continue
        out.append(run_check(fn, cfg))
    return out


def _jsonable(x):
    if isinstance(x, (Fraction, mpmath.mpf, mpmath.mpc)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def report_json(checks: list[Check]) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "passed": all(c.passed for c in checks),
        "checks": [_jsonable({k: v for k, v in asdict(c).items() if k != "seconds"}) for c in checks],
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
