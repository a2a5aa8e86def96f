"""Toroidal data at the cusp: hull facets, fans of Y and X (convex hull and
smooth versions), the boundary surface D1, discrepancies and intersection
numbers.

Units are written eps1^m eps2^n with eps1 = w^2 and eps2 = (w+1)^2, the
totally positive generators.  In these coordinates the two hull triangles
through a vertex x are

    T1(x) = {x, x + (1,0), x + (0,1)}     (index 2 in O)
    T2(x) = {x, x + (-1,1), x + (0,1)}    (a Z-basis of O)

and every unit is a vertex.  Nothing below is read off a picture: the
triangles are checked to be hull facets by ``verify_hull_facet`` and the
stars of D1 and E are derived from the 3-dimensional fan.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cubicfield import (
    EPS1,
    EPS2,
    ONE,
    PI,
    FieldElement,
    is_totally_positive,
    norm,
    totally_positive_of_trace,
    trace,
    unit_from_exponents as unit,
)

FACET_T1 = (FieldElement(1), FieldElement(0, 0, 1), FieldElement(1, 2, 1))
FACET_T2 = (FieldElement(1), FieldElement(2, 1, 0), FieldElement(1, 2, 1))
T1_STEPS = ((0, 0), (1, 0), (0, 1))
T2_STEPS = ((0, 0), (-1, 1), (0, 1))
RESIDUE_TO_D = {1: 0, 4: 1, 2: 2}   # D1, D2, D3 by the residue of the unit mod p
NUMBER_OF_CUSPS = 8


def _det3(rows) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _solve3(m, rhs):
    """Cramer's rule over Q."""
    d = _det3(m)
    if d == 0:
        raise ValueError("singular system")
    out = []
    for k in range(3):
        mk = [list(r) for r in m]
        for r in range(3):
            mk[r][k] = rhs[r]
        out.append(Fraction(_det3(mk)) / d)
    return out


# hull facets --------------------------------------------------------------------

@dataclass
class FacetReport:
    vertices: tuple[FieldElement, ...]
    functional: tuple[Fraction, Fraction, Fraction]     # l(a,b,c) = l0 a + l1 b + l2 c
    integer_form: tuple[tuple[int, int, int], int]      # (coefficients, bound): form >= bound
    lam: FieldElement            # l(r) = Tr(lam r)
    multiplier: FieldElement     # d * lam, in O
    trace_bound: int             # d
    candidates: list[FieldElement]   # r >> 0 with Tr(r mu) <= d
    equality: list[FieldElement]
    ok: bool


def supporting_functional(vertices) -> FieldElement:
    """lam in K with Tr(lam v) = 1 for the three vertices."""
    basis = (FieldElement(1), FieldElement(0, 1), FieldElement(0, 0, 1))
    m = [[trace(e * v) for e in basis] for v in vertices]
    coords = _solve3(m, [1, 1, 1])
    return FieldElement(*coords)


def verify_hull_facet(vertices) -> FacetReport:
    """Check that the cone on ``vertices`` is a facet of the hull of O >> 0.

    With lam the supporting functional and mu = d lam in O (d minimal), any
    r >> 0 with Tr(lam r) <= 1 gives a totally positive s = r mu with
    Tr(s) <= d.  All such s are enumerated by trace slices; r = s/mu must
    satisfy Tr(lam r) >= 1 with equality exactly at the vertices.
    """
    vertices = tuple(FieldElement.coerce(v) for v in vertices)
    if any(not is_totally_positive(v) for v in vertices):
        raise ValueError("vertices must be totally positive")
    lam = supporting_functional(vertices)
    if not is_totally_positive(lam):
        raise ValueError("supporting functional is not positive on the cone")
    l = tuple(trace(lam * e) for e in (FieldElement(1), FieldElement(0, 1), FieldElement(0, 0, 1)))
    den = math.lcm(*(x.denominator for x in l))
    ints = tuple(int(x * den) for x in l)
    g = math.gcd(*ints)
    integer_form = (tuple(x // g for x in ints), den // g)
    d = math.lcm(lam.a.denominator, lam.b.denominator, lam.c.denominator)
    while not (lam * d).is_integral():
        d += 1
    mu = lam * d
    candidates = []
    for t in range(1, d + 1):
        for s in totally_positive_of_trace(t):
            r = s / mu
            if r.is_integral():
                candidates.append(r)
    values = [trace(lam * r) for r in candidates]
    equality = [r for r, v in zip(candidates, values) if v == 1]
    ok = all(v >= 1 for v in values) and sorted(equality) == sorted(vertices)
    return FacetReport(vertices, l, integer_form, lam, mu, d, candidates, equality, ok)


# the three-dimensional fans ---------------------------------------------------------

@dataclass
class Fan3D:
    rays: list[FieldElement]
    kinds: list[str]                         # "D" (hull vertex) or "E" (added in sm)
    orbits: list[int]                        # orbit index under the unit group
    cones: list[tuple[int, int, int]]
    cone_types: list[str]                    # "T1", "T2", or "T1/E" pieces
    level: str                               # "full" or "p"
    resolution: str                          # "ch" or "sm"
    unit_generators: tuple[FieldElement, ...]
    unit_coords: dict[tuple[int, int], int] = field(default_factory=dict)  # D-rays by (m, n)
    e_coords: dict[tuple[int, int], int] = field(default_factory=dict)     # E-rays by base x

    @property
    def scale(self) -> FieldElement:
        return PI if self.level == "p" else ONE

    def lattice_index(self, cone: tuple[int, int, int]) -> int:
        """|det| of the cone's rays in a basis of the ambient lattice (O or p)."""
        rows = [self.rays[i].coords for i in cone]
        d = abs(_det3(rows))
        if self.level == "p":
            d = d / norm(PI)
        if Fraction(d).denominator != 1:
            raise ArithmeticError("ray outside the lattice")
        return int(d)

    def orbit_counts(self) -> dict[str, int]:
        out: dict[str, set] = {"D": set(), "E": set()}
        for k, o in zip(self.kinds, self.orbits):
            out[k].add(o)
        return {k: len(v) for k, v in out.items()}

    def index_of(self, x: FieldElement) -> int:
        return self.rays.index(x)

    def locate(self, x: FieldElement) -> tuple[int, int, int] | None:
        """A cone containing x (x must already sit near the window centre)."""
        for cone in self.cones:
            rows = [self.rays[i].coords for i in cone]
            cols = [[rows[j][k] for j in range(3)] for k in range(3)]
            try:
                coef = _solve3(cols, list(x.coords))
            except ValueError:
                continue
            if all(c >= 0 for c in coef):
                return cone
        return None


def _d_orbit(m: int, n: int, level: str) -> int:
    if level == "full":
        return 0
    return RESIDUE_TO_D[unit(m, n).mod_p()]


def _lattice_class(m: int, n: int, level: str) -> int:
    # U1 corresponds to the sublattice <(1,1), (0,3)> of (m, n)
    return 0 if level == "full" else (n - m) % 3


@lru_cache(maxsize=None)
def build_cusp_fan(level: str = "p", resolution: str = "ch", radius: int = 3) -> Fan3D:
    """Fan of the cusp resolution over a window |m|, |n| <= radius of units.

    level "full": lattice O, unit group U (the cusp of Y); level "p":
    lattice p = (2 - w)O, unit group U1, rays scaled by 2 - w (a cusp of X).
    """
    if level not in ("full", "p") or resolution not in ("ch", "sm"):
        raise ValueError("level must be full|p and resolution ch|sm")
    scale = PI if level == "p" else ONE
    rays, kinds, orbits, coords = [], [], [], {}
    rng = range(-radius, radius + 1)
    for m in rng:
        for n in rng:
            coords[(m, n)] = len(rays)
            rays.append(unit(m, n) * scale)
            kinds.append("D")
            orbits.append(_d_orbit(m, n, level))
    cones, types, e_coords = [], [], {}

    def idx(x, step):
        return coords.get((x[0] + step[0], x[1] + step[1]))

    for x in sorted(coords):
        t1 = [idx(x, s) for s in T1_STEPS]
        if None not in t1:
            if resolution == "ch":
                cones.append(tuple(t1))
                types.append("T1")
            else:
                e = (rays[t1[0]] + rays[t1[1]] + rays[t1[2]]) / 2
                e_coords[x] = len(rays)
                rays.append(e)
                kinds.append("E")
                orbits.append(_lattice_class(*x, level))
                ei = e_coords[x]
                for a, b in ((0, 1), (1, 2), (0, 2)):
                    cones.append((ei, t1[a], t1[b]))
                    types.append("T1/E")
        t2 = [idx(x, s) for s in T2_STEPS]
        if None not in t2:
            cones.append(tuple(t2))
            types.append("T2")
    gens = (EPS1 * EPS2, EPS2**3) if level == "p" else (EPS1, EPS2)
    fan = Fan3D(rays, kinds, orbits, cones, types, level, resolution, gens, coords, e_coords)
    if resolution == "sm":
        bad = [c for c in cones if fan.lattice_index(c) != 1]
        if bad:
            raise ArithmeticError(f"smooth fan has singular cones: {bad[:3]}")
    return fan


def divisor_counts() -> dict[str, int]:
    """Exceptional divisors over all cusps, from orbit counts."""
    ch = build_cusp_fan("p", "ch").orbit_counts()
    sm = build_cusp_fan("p", "sm").orbit_counts()
    return {
        "D_per_cusp": ch["D"],
        "E_per_cusp": sm["E"],
        "X_ch": NUMBER_OF_CUSPS * ch["D"],
        "E_total": NUMBER_OF_CUSPS * sm["E"],
        "X_sm": NUMBER_OF_CUSPS * (sm["D"] + sm["E"]),
    }


def reduce_by_units(x: FieldElement) -> FieldElement:
    """Multiply x >> 0 by a totally positive unit to bring it near the window centre.

    Greedy: apply eps1^+-1, eps2^+-1 while Tr decreases.
    """
    best = x
    improved = True
    steps = [EPS1, EPS2, EPS1.inverse(), EPS2.inverse(), EPS2 / EPS1, EPS1 / EPS2]
    while improved:
        improved = False
        for u in steps:
            y = best * u
            if trace(y) < trace(best):
                best, improved = y, True
    return best


# two-dimensional fans ----------------------------------------------------------------

def _completion(v: tuple[int, int, int]) -> list[list[int]]:
    """Unimodular A with A v = (1, 0, 0) for a primitive integer vector v."""
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    x = list(v)

    def add(i, j, k):    # row_i += k * row_j
        x[i] += k * x[j]
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]

    def swap(i, j):
        x[i], x[j] = x[j], x[i]
        A[i], A[j] = A[j], A[i]

    for j in (1, 2):
        while x[j] != 0:
            if x[0] == 0 or abs(x[j]) < abs(x[0]):
                swap(0, j)
                continue
            add(0, j, -(x[0] // x[j]))
    if abs(x[0]) != 1:
        raise ValueError("vector is not primitive")
    if x[0] == -1:
        x[0] = 1
        A[0] = [-a for a in A[0]]
    return A


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angle_key(u):
    return math.atan2(u[1], u[0]) % (2 * math.pi)


@dataclass
class Fan2D:
    """Complete fan in Z^2 with rays in counterclockwise order."""

    rays: list[tuple[int, int]]
    labels: list[str]

    def __post_init__(self):
        order = sorted(range(len(self.rays)), key=lambda i: _angle_key(self.rays[i]))
        self.rays = [tuple(self.rays[i]) for i in order]
        self.labels = [self.labels[i] for i in order]
        keys = [_angle_key(r) for r in self.rays]
        if len(set(keys)) != len(keys):
            raise ValueError("two rays point in the same direction")

    def __len__(self):
        return len(self.rays)

    def cone_determinants(self) -> list[int]:
        n = len(self.rays)
        return [_cross(self.rays[i], self.rays[(i + 1) % n]) for i in range(n)]

    def is_complete(self) -> bool:
        return len(self.rays) >= 3 and all(d > 0 for d in self.cone_determinants())

    def is_smooth(self) -> bool:
        return all(d == 1 for d in self.cone_determinants())

    def self_intersections(self) -> list[int]:
        """-b_i with u_{i-1} + u_{i+1} = b_i u_i (smooth fans only)."""
        if not self.is_smooth():
            raise ValueError("fan is not smooth")
        n = len(self.rays)
        out = []
        for i in range(n):
            p, c, q = self.rays[i - 1], self.rays[i], self.rays[(i + 1) % n]
            s = (p[0] + q[0], p[1] + q[1])
            b = s[0] // c[0] if c[0] else s[1] // c[1]
            if (b * c[0], b * c[1]) != s:
                raise ArithmeticError("neighbouring rays do not satisfy the smooth relation")
            out.append(-b)
        return out


def _hull_chain(u, v) -> list[tuple[int, int]]:
    """Interior vertices of the compact boundary of conv(cone(u, v) cap Z^2 minus 0)."""
    d = _cross(u, v)
    if d <= 1:
        return []
    pts = []
    # lattice points alpha u + beta v with 0 <= alpha, beta < 1: alpha = i/d
    for i in range(d):
        for j in range(d):
            if (i, j) == (0, 0):
                continue
            x = i * u[0] + j * v[0]
            y = i * u[1] + j * v[1]
            if x % d == 0 and y % d == 0:
                pts.append((x // d, y // d))
    # walk from u towards v, always taking the point making the smallest turn
    chain = []
    cur = u
    cand = pts + [v]
    while cur != v:
        best = None
        for p in cand:
            if p == cur or _cross(cur, p) <= 0:
                continue
            if best is None:
                best = p
                continue
            e1 = (best[0] - cur[0], best[1] - cur[1])
            e2 = (p[0] - cur[0], p[1] - cur[1])
            c = _cross(e1, e2)
            # keep the point on the origin side, prefer the nearer one if collinear
            if c < 0 or (c == 0 and abs(e2[0]) + abs(e2[1]) < abs(e1[0]) + abs(e1[1])):
                best = p
        if best != v:
            chain.append(best)
        cur = best
    return chain


def refine(fan: Fan2D, values: list[Fraction]) -> tuple[Fan2D, list[Fraction]]:
    """Minimal smooth subdivision, with PL values interpolated linearly."""
    n = len(fan)
    rays, labels, vals = [], [], []
    for i in range(n):
        u, v = fan.rays[i], fan.rays[(i + 1) % n]
        rays.append(u)
        labels.append(fan.labels[i])
        vals.append(Fraction(values[i]))
        d = _cross(u, v)
        for w in _hull_chain(u, v):
            # w = (alpha u + beta v): solve 2x2
            alpha = Fraction(_cross(w, v), d)
            beta = Fraction(_cross(u, w), d)
            rays.append(w)
            labels.append(f"new({fan.labels[i]},{fan.labels[(i + 1) % n]})")
            vals.append(alpha * values[i] + beta * values[(i + 1) % n])
    out = Fan2D(rays, labels)
    # Fan2D sorts by angle; reorder values alongside
    lookup = {r: val for r, val in zip(rays, vals)}
    return out, [lookup[r] for r in out.rays]


def _smooth_pairing(fan: Fan2D, vals: list[Fraction]) -> tuple[Fraction, list[Fraction]]:
    """D^2 and the list D.M_i for D = sum vals_i M_i on a smooth complete fan."""
    b = [-s for s in fan.self_intersections()]
    n = len(fan)
    dots = [vals[i - 1] + vals[(i + 1) % n] - b[i] * vals[i] for i in range(n)]
    sq = sum(vals[i] * dots[i] for i in range(n))
    return Fraction(sq), dots


def pl_self_intersection(fan: Fan2D, values) -> Fraction:
    """Self-intersection of the (Q-Cartier) divisor sum values_i M_i.

    Singular fans are refined first; pulling back does not change the number.
    """
    if not fan.is_complete():
        raise ValueError("fan is not complete")
    values = [Fraction(v) for v in values]
    if not fan.is_smooth():
        fan, values = refine(fan, values)
    return _smooth_pairing(fan, values)[0]


def boundary_intersections(fan: Fan2D, values) -> dict[str, Fraction]:
    """D . M for every boundary curve M of the original fan (projection formula)."""
    values = [Fraction(v) for v in values]
    labels = list(fan.labels)
    if not fan.is_smooth():
        fan, values = refine(fan, values)
    _, dots = _smooth_pairing(fan, values)
    return {lab: d for lab, d in zip(fan.labels, dots) if lab in labels}


# stars of divisors ---------------------------------------------------------------

def neighbours(fan: Fan3D, v: int) -> list[int]:
    out = set()
    for c in fan.cones:
        if v in c:
            out.update(i for i in c if i != v)
    return sorted(out)


def ray_label(fan: Fan3D, i: int) -> str:
    return f"{fan.kinds[i]}{fan.orbits[i] + 1}"


def _unscaled(fan: Fan3D, x: FieldElement) -> FieldElement:
    return x / fan.scale


def star_quotient(fan: Fan3D, v: int) -> tuple[Fan2D, list[int]]:
    """Fan of the toric surface D_v: neighbours projected to Z^3 / Z v.

    Coordinates are taken in the basis of O (level full) or of p, i.e. of the
    unscaled points; returns the 2D fan and the 3D ray index behind each 2D ray.
    """
    nb = neighbours(fan, v)
    if not nb:
        raise ValueError("not a ray of the fan")
    base = _unscaled(fan, fan.rays[v]).int_coords()
    A = _completion(base)
    proj = []
    for i in nb:
        x = _unscaled(fan, fan.rays[i]).int_coords()
        y = [sum(A[r][k] * x[k] for k in range(3)) for r in range(3)]
        proj.append((y[1], y[2]))
    labels = [str(i) for i in nb]
    f2 = Fan2D(proj, labels)
    idx = [int(s) for s in f2.labels]
    f2.labels = [f"{ray_label(fan, i)}:{_unscaled(fan, fan.rays[i])}" for i in idx]
    return f2, idx


def first_coordinate(x: FieldElement) -> Fraction:
    return x.a


def normal_bundle_values(fan: Fan3D, v: int, functional=first_coordinate) -> list[Fraction]:
    """Coefficients of D_v|D_v on the boundary curves of D_v (star order).

    D_v is linearly equivalent near D_v to D_v - div(chi^m) for a linear m
    with m(v) = 1, whose coefficients are -m(u) on the neighbours u.  The
    default m is the first coordinate of the unscaled points, normalized by
    its value at v.
    """
    f2, idx = star_quotient(fan, v)
    mv = functional(_unscaled(fan, fan.rays[v]))
    if mv == 0:
        raise ValueError("functional vanishes on the ray")
    return [-functional(_unscaled(fan, fan.rays[i])) / mv for i in idx]


def d1_index(fan: Fan3D) -> int:
    return fan.unit_coords[(0, 0)]


def restriction_to_D1(fan: Fan3D, e_coeff: Fraction, d_coeff: Fraction) -> tuple[Fan2D, list[Fraction]]:
    """PL values of (2L + e_coeff E + d_coeff D) restricted to D1 (L restricts trivially).

    Every other component meeting D1 contributes its coefficient, and D1
    itself contributes d_coeff times its normal bundle values.
    """
    v = d1_index(fan)
    f2, idx = star_quotient(fan, v)
    nb = normal_bundle_values(fan, v)
    vals = []
    for i, n in zip(idx, nb):
        own = e_coeff if fan.kinds[i] == "E" else d_coeff
        vals.append(own + d_coeff * n)
    return f2, vals


def d1_self_intersection_value() -> Fraction:
    """(2L - 3/2 E - D)^2 . D1 on X_sm."""
    fan = build_cusp_fan("p", "sm")
    f2, vals = restriction_to_D1(fan, Fraction(-3, 2), Fraction(-1))
    return pl_self_intersection(f2, vals)


def kch_on_d1() -> dict[str, Fraction]:
    """K_ch . M for the boundary curves M of D1 on X_ch (K_ch = 2L - D there)."""
    fan = build_cusp_fan("p", "ch")
    f2, vals = restriction_to_D1(fan, Fraction(0), Fraction(-1))
    return boundary_intersections(f2, vals)


def e_component_report() -> dict:
    """Star of an E-ray: a P^2 with normal bundle O(-2), and K_ch pulled back trivial on it."""
    fan = build_cusp_fan("p", "sm")
    e = fan.e_coords[(0, 0)]
    f2, idx = star_quotient(fan, e)
    x = _unscaled(fan, fan.rays[e]).int_coords()
    # an integer functional m with m(E) = 1: first row of the completion matrix
    m_row = _completion(x)[0]

    def m(y: FieldElement):
        c = y.int_coords()
        return sum(a * b for a, b in zip(m_row, c))

    nb_vals = [-m(_unscaled(fan, fan.rays[i])) for i in idx]
    is_p2 = len(f2) == 3 and f2.is_smooth() and all(s == 1 for s in f2.self_intersections())
    degree = sum(nb_vals)          # each boundary curve of P^2 is a line
    # (2L - 3/2 E - D)|E: coefficient -3/2 * normal values - 1 on each D neighbour
    k_vals = [Fraction(-3, 2) * n - 1 for n in nb_vals]
    k_degree = sum(k_vals)
    return {"rays": len(f2), "is_P2": is_p2, "normal_degree": degree,
            "K_minus_half_E_degree": k_degree}


# discrepancies ------------------------------------------------------------------

def hull_support(fan: Fan3D, x: FieldElement) -> Fraction:
    """psi(x): the hull function, linear on ch cones, 1 on hull vertices."""
    ch = build_cusp_fan(fan.level, "ch")
    cone = ch.locate(x)
    if cone is None:
        raise ValueError("point outside the window of the fan")
    lam = supporting_functional([_unscaled(ch, ch.rays[i]) for i in cone])
    return trace(lam * _unscaled(ch, x))


def discrepancy(fan: Fan3D, ray: int, relative_to: str = "ch") -> Fraction:
    """Coefficient of the exceptional divisor of ``ray`` in K_sm - pullback.

    relative_to "ch": psi_hull(ray) - 1 (zero on hull vertices); relative to
    the minimal compactification X every exceptional ray has coefficient -1.
    """
    if relative_to == "X":
        return Fraction(-1)
    return hull_support(fan, fan.rays[ray]) - 1


# intersection numbers ----------------------------------------------------------------

def intersection_numbers() -> dict[str, Fraction]:
    from .dims import L_cubed
    L3 = L_cubed()
    s = d1_self_intersection_value()
    ered = e_component_report()
    ke2_l = 4 * L3                       # (K - E/2)^2 L = (2L)^2 L
    ke2_e = Fraction(0) if ered["K_minus_half_E_degree"] == 0 else None
    n_d = divisor_counts()["X_ch"]
    ke2_d = n_d * s
    cube = 2 * ke2_l - Fraction(3, 2) * (ke2_e if ke2_e is not None else 0) - ke2_d
    return {"L^3": L3, "(K-E/2)^2 L": ke2_l, "(K-E/2)^2 E": ke2_e, "(2L-3/2E-D)^2 D1": s,
            "(K-E/2)^2 D": ke2_d, "(K-E/2)^3": cube}
