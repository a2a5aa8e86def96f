"""Weighted polynomials in F0, F1, F2, F4 (weight 1) and E2 (weight 2).

Monomials are exponent 5-tuples (e0, e1, e2, e4, eE).  Coefficients may be
Fractions or CycNumbers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .cyclotomic import CycNumber

VARIABLE_NAMES = ("F0", "F1", "F2", "F4", "E2")
WEIGHTS = (1, 1, 1, 1, 2)


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNumber) else x == 0


def _canon(x):
    if isinstance(x, CycNumber) and x.is_rational():
        return x.to_fraction()
    if isinstance(x, int):
        return Fraction(x)
    return x


class WeightedPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, ...], object] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != 5:
                raise ValueError("monomials have five exponents")
            if not _is_zero(c):
                clean[tuple(m)] = _canon(c)
        self.terms = clean

    # construction ----------------------------------------------------------
    @classmethod
    def variable(cls, name: str) -> "WeightedPolynomial":
        m = [0] * 5
        m[VARIABLE_NAMES.index(name)] = 1
        return cls({tuple(m): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "WeightedPolynomial":
        return cls({(0, 0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, m: tuple[int, ...], c=1) -> "WeightedPolynomial":
        return cls({tuple(m): c})

    # structure -------------------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @staticmethod
    def monomial_degree(m) -> int:
        return sum(w * e for w, e in zip(WEIGHTS, m))

    def degrees(self) -> set[int]:
        return {self.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is not weighted homogeneous")
        return ds.pop()

    def coefficient(self, m: tuple[int, ...]):
        return self.terms.get(tuple(m), Fraction(0))

    def e2_part(self, j: int) -> "WeightedPolynomial":
        """Coefficient of E2^j, as a polynomial in the F's."""
        return WeightedPolynomial({m[:4] + (0,): c for m, c in self.terms.items() if m[4] == j})

    def set_e2_zero(self) -> "WeightedPolynomial":
        return self.e2_part(0)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    # arithmetic ------------------------------------------------------------
    def _lift(self, other) -> "WeightedPolynomial":
        if isinstance(other, WeightedPolynomial):
            return other
        return WeightedPolynomial.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return WeightedPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return WeightedPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, WeightedPolynomial):
            if isinstance(other, (int, Fraction)):
                other = Fraction(other)
            return WeightedPolynomial({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], m1[4] + m2[4])
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return WeightedPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = WeightedPolynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, WeightedPolynomial):
            other = WeightedPolynomial.constant(other)
        return (self - other).is_zero()

    __hash__ = None

    def scaled_to(self, m: tuple[int, ...], value=1) -> "WeightedPolynomial":
        """Rescale so the coefficient at m equals value."""
        c = self.coefficient(m)
        if _is_zero(c):
            raise ZeroDivisionError(f"coefficient at {m} vanishes")
        return self * (Fraction(value) / c if not isinstance(c, CycNumber) else c.inverse() * value)

    # evaluation ----------------------------------------------------------------
    def evaluate(self, values: dict[str, object] | Iterable, one=None, cache: dict | None = None):
        """Substitute ring elements (series, numbers) for the five variables.

        Monomials are built incrementally from shared sub-products, which
        matters when the values are truncated q-series.
        """
        vals = list(values[n] for n in VARIABLE_NAMES) if isinstance(values, dict) else list(values)
        if one is None:
            one = vals[0] ** 0
        cache = {} if cache is None else cache
        total = None
        for m, c in sorted(self.terms.items()):
            mono = monomial_value(m, vals, one, cache)
            term = mono * c
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    def substitute_linear(self, forms: list["WeightedPolynomial"]) -> "WeightedPolynomial":
        """F_i -> forms[i] (i over F0, F1, F2, F4); E2 is left alone."""
        pow_cache: dict[tuple[int, int], WeightedPolynomial] = {}

        def power(i: int, e: int) -> WeightedPolynomial:
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = forms[i] if e == 1 else power(i, e - 1) * forms[i]
            return pow_cache[key]

        e2 = WeightedPolynomial.variable("E2")
        out = WeightedPolynomial()
        for m, c in self.terms.items():
            term = WeightedPolynomial.monomial((0, 0, 0, 0, m[4]), c)
            for i in range(4):
                if m[i]:
                    term = term * power(i, m[i])
            out = out + term
        return out

    def partial(self, name: str) -> "WeightedPolynomial":
        i = VARIABLE_NAMES.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return WeightedPolynomial(out)

    def map_coefficients(self, fn: Callable) -> "WeightedPolynomial":
        return WeightedPolynomial({m: fn(c) for m, c in self.terms.items()})

    # printing --------------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"WeightedPolynomial({len(self)} terms)"


def monomial_value(m: tuple[int, ...], vals: list, one, cache: dict):
    """Value of the monomial m, memoized through m minus one variable."""
    if m in cache:
        return cache[m]
    if not any(m):
        cache[m] = one
        return one
    # peel off the last variable with a positive exponent
    i = max(j for j in range(5) if m[j])
    prev = list(m)
    prev[i] -= 1
    val = monomial_value(tuple(prev), vals, one, cache) * vals[i]
    cache[m] = val
    return val


def variables() -> tuple[WeightedPolynomial, ...]:
    return tuple(WeightedPolynomial.variable(n) for n in VARIABLE_NAMES)


def monomials_of_degree(d: int, with_e2: bool = True) -> list[tuple[int, ...]]:
    out = []
    for eE in range(d // 2 + 1 if with_e2 else 1):
        rest = d - 2 * eE
        for e0 in range(rest + 1):
            for e1 in range(rest - e0 + 1):
                for e2 in range(rest - e0 - e1 + 1):
                    e4 = rest - e0 - e1 - e2
                    out.append((e0, e1, e2, e4, eE))
    return sorted(out, reverse=True)


def _fmt_coeff(c) -> str:
    return str(c) if not isinstance(c, CycNumber) else f"({c})"


def format_polynomial(p: WeightedPolynomial) -> str:
    """Raw monomial form, e.g. "-3*F0^8 + 38*F0^5*F1*F2*F4"."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in sorted(p.terms.items(), key=lambda t: (-t[0][4], tuple(-x for x in t[0][:4]))):
        factors = []
        for name, e in zip(VARIABLE_NAMES, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            parts.append(_fmt_coeff(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_fmt_coeff(c)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
