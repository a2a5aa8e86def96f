"""Numeric side of the octic W = {Q = 0} in P^3: evaluation of F0, F1, F2, F4
and E2 on H^3, the singular point over (i, i, i), its orbit under the group,
and the local A2 test (Hessian of corank one, nonzero cubic along the kernel).
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from .cubicfield import FieldElement, embeddings
from .eisenstein import build_all, diagonal_E2, diagonal_F
from .grouprep import projective_image
from .polynomial import WeightedPolynomial
from .qseries import element_of_exponents
from .relations import derive_octic

FORM_NAMES = ("F0", "F1", "F2", "F4")
DEFAULT_DPS = int(os.environ.get("HILBERT49_DPS", "50"))
VANISHING_TOL = mpmath.mpf("1e-20")
RANK_GUARD = mpmath.mpf("1e6")
CLUSTER_TOL = mpmath.mpf("1e-15")


class PrecisionError(ArithmeticError):
    """The truncation tail is larger than the requested precision."""


# evaluation ------------------------------------------------------------------------

def lattice_count_estimate(t: int) -> int:
    """Upper estimate for #{a >> 0 : Tr(a) = t}: the slice has area ~ t^2/14 in lattice units."""
    return t * t // 7 + 3 * t + 3


def tail_bound(T: int, y_min, weight_exponent: float = 1.5, extra: int = 4000):
    """Bound for sum_{Tr(a) > T} |c(a)| |q^a| with |c(a)| <= (Tr(a)/3)^weight_exponent.

    Every prime of O has norm at least 7, so the number of ideal divisors
    of (a) is at most N(a)^(1/2) <= (Tr(a)/3)^(3/2); sigma_1 adds one more
    factor of N(a).  |q^a| <= exp(-2 pi y_min Tr(a) / 7).
    """
    y_min = mpmath.mpf(y_min)
    if y_min <= 0:
        raise ValueError("imaginary parts must be positive")
    tot = mpmath.mpf(0)
    r = mpmath.exp(-2 * mpmath.pi * y_min / 7)
    for t in range(T + 1, T + 1 + extra):
        term = lattice_count_estimate(t) * (mpmath.mpf(t) / 3) ** weight_exponent * r**t
        tot += term
        if t > T + 50 and term < tot * mpmath.mpf(10) ** (-mpmath.mp.dps):
            break
    return tot


@dataclass
class NumericPoint:
    values: tuple                    # F0, F1, F2, F4
    radius: object                   # bound on the error of each value
    e2: object = None
    e2_radius: object = None
    z: tuple | None = None
    T: int = 0

    def normalized(self) -> "NumericPoint":
        """Divide by the coordinate of largest modulus."""
        k = max(range(4), key=lambda i: abs(self.values[i]))
        c = self.values[k]
        scale = 1 / abs(c)
        return NumericPoint(tuple(v / c for v in self.values), self.radius * scale * 2,
                            self.e2, self.e2_radius, self.z, self.T)

    def vector(self) -> mpmath.matrix:
        return mpmath.matrix(list(self.values))


@lru_cache(maxsize=None)
def _exponent_basis() -> tuple[FieldElement, FieldElement, FieldElement]:
    return tuple(element_of_exponents(*e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def q_variables(z) -> tuple:
    """q_j = exp(2 pi i Tr(beta_j z) / 7) with beta_j the preimages of the unit exponents."""
    out = []
    for beta in _exponent_basis():
        emb = embeddings(beta, dps=mpmath.mp.dps).values
        s = sum(e * zk for e, zk in zip(emb, z))
        out.append(mpmath.exp(2j * mpmath.pi * s / 7))
    return tuple(out)


def evaluate_series(f, qs) -> mpmath.mpc:
    powers = [{0: mpmath.mpf(1)} for _ in range(3)]

    def pw(j, n):
        d = powers[j]
        if n not in d:
            d[n] = qs[j] ** n
        return d[n]

    tot = mpmath.mpc(0)
    for n, c in f.items():
        tot += mpmath.mpf(c.numerator) / c.denominator * pw(0, n[0]) * pw(1, n[1]) * pw(2, n[2])
    return tot


def evaluate_forms(z, T: int = 60, dps: int | None = None, precision=None) -> NumericPoint:
    """F0, F1, F2, F4, E2 at z in H^3 from the series with Tr(a) <= T."""
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps):
        z = tuple(mpmath.mpmathify(x) for x in z)
        if any(mpmath.im(x) <= 0 for x in z):
            raise ValueError("z must lie in the upper half plane")
        y_min = min(mpmath.im(x) for x in z)
        rad = tail_bound(T, y_min)
        e2_rad = tail_bound(T, y_min, 4.5)
        if precision is not None and rad > precision:
            raise PrecisionError(f"tail bound {mpmath.nstr(rad, 3)} exceeds {precision}")
        s = build_all(T)
        qs = q_variables(z)
        vals = tuple(evaluate_series(s[k], qs) for k in FORM_NAMES)
        e2 = evaluate_series(s["E2"], qs)
    return NumericPoint(vals, rad, e2, e2_rad, z, T)


def evaluate_diagonal(tau, T: int = 60, dps: int | None = None, precision=None) -> NumericPoint:
    """The same at z = (tau, tau, tau), summing whole trace slices."""
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps):
        tau = mpmath.mpmathify(tau)
        if mpmath.im(tau) <= 0:
            raise ValueError("tau must lie in the upper half plane")
        rad = tail_bound(T, mpmath.im(tau))
        e2_rad = tail_bound(T, mpmath.im(tau), 4.5)
        if precision is not None and rad > precision:
            raise PrecisionError(f"tail bound {mpmath.nstr(rad, 3)} exceeds {precision}")
        x = mpmath.exp(2j * mpmath.pi * tau / 7)

        def ev(d):
            return sum(mpmath.mpf(c.numerator) / c.denominator * x**t for t, c in d.coeffs.items())

        vals = tuple(ev(diagonal_F(i, T)) for i in (0, 1, 2, 4))
        e2 = ev(diagonal_E2(T))
    return NumericPoint(vals, rad, e2, e2_rad, (tau,) * 3, T)


def cusp_point() -> NumericPoint:
    """Limit at (i oo)^3: only constant terms survive."""
    return NumericPoint((mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0)), mpmath.mpf(0))


# the octic and its derivatives -------------------------------------------------------

def _numeric_terms(p: WeightedPolynomial) -> tuple:
    return tuple((m[:4], mpmath.mpf(c.numerator) / c.denominator) for m, c in p.terms.items())


@lru_cache(maxsize=None)
def octic_data(chart: int):
    """Q and its first and second partials in the chart F_chart = 1, as numeric term lists."""
    Q = derive_octic()
    names = [n for i, n in enumerate(FORM_NAMES) if i != chart]
    first = [Q.partial(n) for n in names]
    second = [[d.partial(n) for n in names] for d in first]
    return (_numeric_terms(Q), tuple(_numeric_terms(d) for d in first),
            tuple(tuple(_numeric_terms(e) for e in row) for row in second))


def _eval_terms(terms, v):
    tot = mpmath.mpc(0)
    for m, c in terms:
        t = c
        for x, e in zip(v, m):
            if e:
                t = t * x**e
        tot += t
    return tot


def Q_value(v) -> mpmath.mpc:
    return _eval_terms(octic_data(0)[0], list(v))


def _chart(v, chart: int):
    c = v[chart]
    return [x / c for x in v]


def _affine(x, chart: int):
    v = list(x)
    v.insert(chart, mpmath.mpf(1))
    return v


@dataclass
class SingularReport:
    chart: int
    q_value: object
    gradient_norm: object
    singular_values: list
    hessian_rank: int | None
    kernel: list
    cubic_term: object
    passed: bool
    notes: list = field(default_factory=list)


def singular_point_check(P: NumericPoint, tol=None, guard=None) -> SingularReport:
    """Vanishing of Q and its gradient, Hessian rank 2 and a nonzero cubic along the kernel.

    Works in the affine chart of the largest coordinate.  The rank is
    ambiguous (None) unless the smallest singular value is below tol and the
    next one exceeds guard * tol.
    """
    tol = VANISHING_TOL if tol is None else mpmath.mpf(tol)
    guard = RANK_GUARD if guard is None else mpmath.mpf(guard)
    v = list(P.values)
    chart = max(range(4), key=lambda i: abs(v[i]))
    v = _chart(v, chart)
    x = [v[i] for i in range(4) if i != chart]
    Qt, first, second = octic_data(chart)
    q = _eval_terms(Qt, v)
    grad = [_eval_terms(d, v) for d in first]
    H = mpmath.matrix([[_eval_terms(e, v) for e in row] for row in second])
    U, S, V = mpmath.svd_c(H)
    sv = sorted([abs(S[i]) for i in range(3)], reverse=True)
    gnorm = mpmath.sqrt(sum(abs(g) ** 2 for g in grad))
    rank = None
    if sv[2] <= tol and sv[1] >= guard * tol:
        rank = 2
    elif sv[2] > guard * tol:
        rank = 3
    # kernel: right singular vector of the smallest singular value
    k = min(range(3), key=lambda i: abs(S[i]))
    kern = [mpmath.conj(V[k, j]) for j in range(3)]

    def along(t):
        y = [xi + t * ki for xi, ki in zip(x, kern)]
        return _eval_terms(Qt, _affine(y, chart))

    cubic = _third_derivative(along)
    notes = []
    ok = abs(q) <= tol and gnorm <= tol and rank == 2 and abs(cubic) > guard * tol
    if rank is None:
        notes.append("Hessian rank ambiguous within the guard band")
    return SingularReport(chart, q, gnorm, sv, rank, kern, cubic, ok, notes)


def _third_derivative(g, h=None):
    """g'''(0) for a polynomial g of degree <= 8, from its values on a circle."""
    r = mpmath.mpf(h) if h is not None else mpmath.mpf("0.01")
    n = 9
    roots = [mpmath.exp(2j * mpmath.pi * k / n) for k in range(n)]
    vals = [g(r * u) for u in roots]
    c3 = sum(val * u ** (-3) for val, u in zip(vals, roots)) / n / r**3
    return 6 * c3


def smooth_point_check(seed: int = 7) -> dict:
    """A root of Q on a random line in the chart F0 = 1: a smooth point of W."""
    rnd = random.Random(seed)
    base = [mpmath.mpc(rnd.uniform(-1, 1), rnd.uniform(-1, 1)) for _ in range(3)]
    d = [mpmath.mpc(rnd.uniform(-1, 1), rnd.uniform(-1, 1)) for _ in range(3)]
    Qt, first, _ = octic_data(0)

    def g(t):
        return _eval_terms(Qt, _affine([b + t * e for b, e in zip(base, d)], 0))

    n = 9
    roots = [mpmath.exp(2j * mpmath.pi * k / n) for k in range(n)]
    vals = [g(u) for u in roots]
    coeffs = [sum(v * u ** (-k) for v, u in zip(vals, roots)) / n for k in range(n)]
    while abs(coeffs[-1]) < mpmath.mpf(10) ** (-mpmath.mp.dps // 2):
        coeffs.pop()
    ts = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    t = ts[0]
    v = _affine([b + t * e for b, e in zip(base, d)], 0)
    grad = [_eval_terms(dd, v) for dd in first]
    return {"q_value": _eval_terms(Qt, v), "gradient_norm": mpmath.sqrt(sum(abs(x) ** 2 for x in grad))}


# orbits ------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _numeric_group(dps: int):
    """Transposes of the 168 projective images: Q(m^T v) = Q(v), so W is stable under v -> m^T v."""
    with mpmath.workdps(dps):
        return tuple(m.to_mpmath(dps).T for m in projective_image())


def projective_distance(u, v):
    """sqrt(1 - |<u, v>|^2 / (|u|^2 |v|^2)): the sine of the angle between two lines."""
    uu = sum(abs(x) ** 2 for x in u)
    vv = sum(abs(x) ** 2 for x in v)
    uv = sum(mpmath.conj(a) * b for a, b in zip(u, v))
    c = abs(uv) ** 2 / (uu * vv)
    return mpmath.sqrt(max(mpmath.mpf(0), 1 - c))


@dataclass
class OrbitReport:
    clusters: list
    count: int
    stabilizer: int
    min_separation: object
    ambiguous: bool


class AmbiguousClustering(ArithmeticError):
    pass


def orbit(P: NumericPoint, tol=None, elements=None) -> OrbitReport:
    tol = CLUSTER_TOL if tol is None else mpmath.mpf(tol)
    mats = _numeric_group(mpmath.mp.dps) if elements is None else elements
    v = mpmath.matrix(list(P.values))
    images = []
    for m in mats:
        w = m * v
        images.append([w[i] for i in range(4)])
    clusters: list[list] = []
    stab = 0
    base = [v[i] for i in range(4)]
    for w in images:
        if projective_distance(w, base) < tol:
            stab += 1
        for c in clusters:
            if projective_distance(w, c[0]) < tol:
                c.append(w)
                break
        else:
            clusters.append([w])
    reps = [c[0] for c in clusters]
    sep = min((projective_distance(a, b) for i, a in enumerate(reps) for b in reps[i + 1:]),
              default=mpmath.inf)
    ambiguous = sep < 10 * tol
    return OrbitReport(reps, len(reps), stab, sep, ambiguous)


def orbit_count(P: NumericPoint, tol=None, elements=None) -> int:
    rep = orbit(P, tol, elements)
    if rep.ambiguous:
        raise AmbiguousClustering(f"clusters separated by only {mpmath.nstr(rep.min_separation, 3)}")
    return rep.count


def special_point(T: int = 60, dps: int | None = None) -> NumericPoint:
    """The point of P^3 over z = (i, i, i)."""
    return evaluate_diagonal(mpmath.mpc(0, 1), T, dps)


def verify_singular_orbit(T: int = 60, dps: int | None = None, tol=None) -> dict:
    """Orbit of the point over (i, i, i): size, stabilizer, and the singular check at every point."""
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps):
        P = special_point(T, dps)
        rep = orbit(P)
        checks = [singular_point_check(NumericPoint(tuple(w), P.radius), tol) for w in rep.clusters]
        return {
            "T": T,
            "tail_bound": P.radius,
            "e2_value": P.e2,
            "orbit": rep.count,
            "stabilizer": rep.stabilizer,
            "min_separation": rep.min_separation,
            "ambiguous": rep.ambiguous,
            "all_singular": all(c.passed for c in checks),
            "max_gradient": max(c.gradient_norm for c in checks),
            "max_q": max(abs(c.q_value) for c in checks),
            "min_cubic": min(abs(c.cubic_term) for c in checks),
            "hessian_singular_values": checks[0].singular_values,
            "checks": checks,
            "point": P,
        }


def transformation_residuals(z, T: int = 60, sign: int = 1, dps: int | None = None) -> dict:
    """Compare g4 F_i(z) = -(1/(z1 z2 z3)) F_i(-1/z) with sum_j gamma4[j][i] F_j(z).

    Also returns the weight two residual of E2, which is invariant.  The
    residuals should sit at the level of the tail bound.
    """
    from .grouprep import gamma4
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps):
        z = tuple(mpmath.mpmathify(x) for x in z)
        P = evaluate_forms(z, T, dps)
        Pi = evaluate_forms(tuple(-1 / x for x in z), T, dps)
        g = gamma4(sign).to_mpmath(dps)
        prod = z[0] * z[1] * z[2]
        res = []
        for i in range(4):
            lhs = -Pi.values[i] / prod
            rhs = sum(g[j, i] * P.values[j] for j in range(4))
            res.append(abs(lhs - rhs))
        e2 = abs(Pi.e2 / prod**2 - P.e2)
        return {"F": res, "E2": e2, "tail_bound": max(P.radius, Pi.radius)}
