"""The action of G = SL(2, F_7) on the span of F0, F1, F2, F4.

Matrix convention: the image g(F_i) is the i-th *column* of the matrix of g,
g(F_i) = sum_j m[j][i] F_j.  Hence a polynomial P transforms by the linear
substitution F -> m^T F, and act(m1 m2) = act(m1) o act(m2).  E2 has level
one and is invariant.

The scalar -i/sqrt(7) is realized in Q(zeta_7) as -g/7 with
g = sum_t (t/7) zeta^t (g = i sqrt 7 for zeta = exp(2 pi i/7)); the opposite
choice is available through ``gamma4(sign=-1)`` so tests can confirm that
only one sign is consistent with the q-expansions.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycMatrix, CycNumber, gauss_sum
from .linalg import rref
from .polynomial import WeightedPolynomial, monomials_of_degree

GROUP_ORDER = 336
GUARD = 1000
BASIS_NAMES = ("F0", "F1", "F2", "F4")
G7_EXPONENTS = (0, 3, 6, 5)   # gamma7 = diag(zeta^0, zeta^3, zeta^6, zeta^5)


def zeta(k: int) -> CycNumber:
    return CycNumber.zeta(k)


def a_values() -> tuple[CycNumber, CycNumber, CycNumber]:
    """a_k = zeta^k + zeta^-k for k = 1, 2, 3."""
    return tuple(zeta(k) + zeta(-k) for k in (1, 2, 3))


def minus_i_over_sqrt7(sign: int = 1) -> CycNumber:
    return gauss_sum() * Fraction(-sign, 7)


@lru_cache(maxsize=None)
def gamma4(sign: int = 1) -> CycMatrix:
    a1, a2, a3 = a_values()
    one = CycNumber.one()
    two = one * 2
    rows = [[one, two, two, two],
            [one, a1, a3, a2],
            [one, a3, a2, a1],
            [one, a2, a1, a3]]
    c = minus_i_over_sqrt7(sign)
    return CycMatrix([[c * x for x in r] for r in rows])


@lru_cache(maxsize=None)
def gamma7() -> CycMatrix:
    return CycMatrix.diagonal([zeta(e) for e in G7_EXPONENTS])


def generate_group(gens: tuple[CycMatrix, ...] | None = None, guard: int = GUARD) -> list[CycMatrix]:
    """Closure of the generators under multiplication (breadth first)."""
    if gens is None:
        gens = (gamma4(), gamma7())
    ident = CycMatrix.identity(gens[0].size, gens[0].n)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                k = y.key()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > guard:
                        raise RuntimeError(f"group closure exceeded {guard} elements")
        frontier = nxt
    return sorted(seen.values(), key=lambda m: m.key())


_GROUP = None


def group() -> list[CycMatrix]:
    global _GROUP
    if _GROUP is None:
        _GROUP = generate_group()
    return _GROUP


def projective_key(m: CycMatrix) -> tuple:
    """m up to scalars: divide by its first nonzero entry."""
    first = next(x for r in m.rows for x in r if not x.is_zero())
    inv = first.inverse()
    return tuple((x * inv).key() for r in m.rows for x in r)


def projective_image(elements: list[CycMatrix] | None = None) -> list[CycMatrix]:
    elements = group() if elements is None else elements
    reps = {}
    for m in elements:
        reps.setdefault(projective_key(m), m)
    return list(reps.values())


def element_order(m: CycMatrix, bound: int = 100) -> int:
    ident = CycMatrix.identity(m.size, m.n)
    x = m
    for k in range(1, bound + 1):
        if x == ident:
            return k
        x = x * m
    raise RuntimeError("order exceeds bound")


# Molien-type averages ---------------------------------------------------------------

def _power_traces(m: CycMatrix) -> list[CycNumber]:
    """tr(m), tr(m^2), tr(m^3), tr(m^4)."""
    m2 = m * m
    rows, cols2 = m.rows, list(zip(*m2.rows))
    cols = list(zip(*rows))

    def tr_prod(a_rows, b_cols):
        acc = CycNumber.zero()
        for i, r in enumerate(a_rows):
            for x, y in zip(r, b_cols[i]):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
        return acc

    return [m.trace(), m2.trace(), tr_prod(m2.rows, cols), tr_prod(m2.rows, cols2)]


def characteristic_coefficients(m: CycMatrix) -> tuple[CycNumber, ...]:
    """Elementary symmetric functions e1..e4 of the eigenvalues (Newton)."""
    p = _power_traces(m)
    e = [CycNumber.one()]
    for k in range(1, 5):
        acc = CycNumber.zero()
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc * Fraction(1, k))
    return tuple(e[1:])


def complete_homogeneous(e: tuple[CycNumber, ...], kmax: int) -> list[CycNumber]:
    """h_0..h_kmax of the eigenvalues: trace of m on Sym^k."""
    h = [CycNumber.one()]
    for k in range(1, kmax + 1):
        acc = CycNumber.zero()
        for i in range(1, min(k, 4) + 1):
            term = e[i - 1] * h[k - i]
            acc = acc + term if i % 2 == 1 else acc - term
        h.append(acc)
    return h


@lru_cache(maxsize=None)
def _class_data(kmax: int):
    # the average only depends on characteristic polynomials, so group by them
    counts: dict[tuple, tuple[int, tuple]] = {}
    for m in group():
        e = characteristic_coefficients(m)
        key = tuple(x.key() for x in e)
        if key in counts:
            counts[key] = (counts[key][0] + 1, e)
        else:
            counts[key] = (1, e)
    return [(cnt, complete_homogeneous(e, kmax)) for cnt, e in counts.values()]


def invariant_dimension(k: int) -> int:
    """dim Sym^k(V_4)^G = (1/|G|) sum_g tr(g | Sym^k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    data = _class_data(max(k, 12))
    total = CycNumber.zero()
    for cnt, h in data:
        total = total + h[k] * cnt
    avg = total * Fraction(1, len(group()))
    if not avg.is_rational():
        raise ArithmeticError(f"Molien average for k={k} is not rational: {avg}")
    q = avg.to_fraction()
    if q.denominator != 1 or q < 0:
        raise ArithmeticError(f"Molien average for k={k} is not a nonnegative integer: {q}")
    return int(q)


# polynomial action ---------------------------------------------------------------

def linear_forms(m: CycMatrix) -> list[WeightedPolynomial]:
    """Images g(F_i) = sum_j m[j][i] F_j as polynomials."""
    forms = []
    for i in range(4):
        terms = {}
        for j in range(4):
            c = m[j, i]
            if not c.is_zero():
                mono = [0] * 5
                mono[j] = 1
                terms[tuple(mono)] = c
        forms.append(WeightedPolynomial(terms))
    return forms


def act_on_polynomial(m: CycMatrix, poly: WeightedPolynomial) -> WeightedPolynomial:
    """P -> P(g F0, g F1, g F2, g F4, E2)."""
    return poly.substitute_linear(linear_forms(m))


def is_invariant(poly: WeightedPolynomial, gens=None) -> bool:
    gens = (gamma4(), gamma7()) if gens is None else gens
    return all(act_on_polynomial(g, poly) == poly for g in gens)


def _g7_weight(mono: tuple[int, ...]) -> int:
    return sum(e * w for e, w in zip(mono[:4], G7_EXPONENTS)) % 7


def invariant_polynomials(k: int) -> list[WeightedPolynomial]:
    """A basis of Sym^k(V_4)^G in the F's.

    gamma7 is diagonal, so its invariants are spanned by the monomials with
    3 e1 + 6 e2 + 5 e4 = 0 mod 7.  On that span the gamma4-fixed vectors are
    the solutions of (gamma4 - 1) x = 0, solved exactly over Q(zeta_7); no
    averaging over the group is needed.
    """
    monos = [m for m in monomials_of_degree(k, with_e2=False) if _g7_weight(m) == 0]
    if not monos:
        return []
    g4 = gamma4()
    forms = linear_forms(g4)
    images = [WeightedPolynomial.monomial(m).substitute_linear(forms) for m in monos]
    all_monos = sorted({mm for img in images for mm in img.terms} | set(monos), reverse=True)
    index = {mm: r for r, mm in enumerate(all_monos)}
    # column j: image of monos[j] minus monos[j]
    rows = [[CycNumber.zero() for _ in monos] for _ in all_monos]
    for j, (mono, img) in enumerate(zip(monos, images)):
        for mm, c in img.terms.items():
            cc = c if isinstance(c, CycNumber) else CycNumber.from_rational(c)
            rows[index[mm]][j] = rows[index[mm]][j] + cc
        rows[index[mono]][j] = rows[index[mono]][j] - 1
    red, pivots = rref(rows)
    free = [c for c in range(len(monos)) if c not in pivots]
    basis = []
    for f in free:
        terms = {monos[f]: Fraction(1)}
        for row, pc in zip(red, pivots):
            if not row[f].is_zero():
                terms[monos[pc]] = -row[f]
        basis.append(WeightedPolynomial(terms))
    return basis


@lru_cache(maxsize=None)
def _invariant_polynomials_cached(k: int) -> tuple[WeightedPolynomial, ...]:
    return tuple(invariant_polynomials(k))


def invariant_basis(d: int) -> list[WeightedPolynomial]:
    """Basis of G-invariant weighted-degree-d polynomials in F's and E2."""
    e2 = WeightedPolynomial.variable("E2")
    out = []
    for j in range(d // 2, -1, -1):
        for p in _invariant_polynomials_cached(d - 2 * j):
            out.append(p * e2**j)
    return out


def invariant_basis_deg8() -> list[WeightedPolynomial]:
    basis = invariant_basis(8)
    if len(basis) != 6:
        raise RuntimeError(f"expected a 6-dimensional space, got {len(basis)}")
    return basis


def span_is_stable(polys: list[WeightedPolynomial], gens=None) -> bool:
    """Whether the span of polys is mapped into itself by each generator."""
    gens = (gamma4(), gamma7()) if gens is None else gens
    monos = sorted({m for p in polys for m in p.terms}, reverse=True)

    def vec(p):
        for m in p.terms:
            if m not in monos:
                return None
        return [_to_cyc(p.coefficient(m)) for m in monos]

    base_rows = [vec(p) for p in polys]
    base_rank = len(rref(base_rows)[1])
    for g in gens:
        for p in polys:
            v = vec(act_on_polynomial(g, p))
            if v is None:
                return False
            if len(rref(base_rows + [v])[1]) != base_rank:
                return False
    return True


def commutant_dimension(polys: list[WeightedPolynomial], gens=None) -> int:
    """dim of the space of matrices commuting with the action on span(polys).

    For a representation over a field containing all character values this
    equals 1 iff the representation is absolutely irreducible.
    """
    gens = (gamma4(), gamma7()) if gens is None else gens
    mats = [representation_matrix(polys, g) for g in gens]
    n = len(polys)
    # unknown X (n x n), equations X A - A X = 0 for each generator matrix A
    rows = []
    for A in mats:
        for i in range(n):
            for j in range(n):
                row = [CycNumber.zero() for _ in range(n * n)]
                # (XA)_ij = sum_k X_ik A_kj ; (AX)_ij = sum_k A_ik X_kj
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + A[k][j]
                    row[k * n + j] = row[k * n + j] - A[i][k]
                rows.append(row)
    red, piv = rref(rows)
    return n * n - len(piv)


def representation_matrix(polys: list[WeightedPolynomial], g: CycMatrix) -> list[list[CycNumber]]:
    """A with act(g, polys[j]) = sum_i A[i][j] polys[i] (requires a stable span)."""
    monos = sorted({m for p in polys for m in p.terms}, reverse=True)
    n = len(polys)
    cols = []
    for p in polys:
        img = act_on_polynomial(g, p)
        # solve sum_i x_i polys[i] = img
        rows = []
        for m in monos:
            rows.append([_to_cyc(q.coefficient(m)) for q in polys] + [_to_cyc(img.coefficient(m))])
        for m in img.terms:
            if m not in monos:
                raise ValueError("span is not stable")
        red, piv = rref(rows)
        if n in piv:
            raise ValueError("span is not stable")
        x = [CycNumber.zero() for _ in range(n)]
        for row, pc in zip(red, piv):
            x[pc] = row[n]
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _to_cyc(c) -> CycNumber:
    return c if isinstance(c, CycNumber) else CycNumber.from_rational(c)
