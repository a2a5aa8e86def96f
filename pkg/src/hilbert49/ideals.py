"""Ideals of O = Z[w]: prime factorization, the sign character s, rho_{L/K}.

O is a PID and Z[w] is the maximal order, so Kummer-Dedekind describes every
prime: over q the factorization of (q) mirrors that of
f(x) = x^3 + x^2 - 2x - 1 mod q.  The only ramified prime is p = (2 - w)
with (7) = p^3.

Two independent routes are kept on purpose:

* the sign character s is evaluated by the Frobenius rule in Q(zeta_7)/K
  (``s_of_prime``) and, as an oracle, from its definition through a prime
  generator congruent to 1 mod p (``s_of_element``);
* ``rho_LK`` decides splitting in L = K(zeta_7) from the relative polynomial
  x^2 - w x + 1 over the residue field, never from s.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Poly, factorint, symbols

from .cubicfield import (
    PI,
    W,
    FieldElement,
    is_totally_positive,
    norm,
    norm_polynomial,
    trace,
)

_X = symbols("x")


def _f(r: int) -> int:
    return r**3 + r**2 - 2 * r - 1


def _fprime(r: int) -> int:
    return 3 * r**2 + 2 * r - 2


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    """A prime of O over the rational prime q.

    For f = 1 the prime is (q, w - root); for f = 3 it is (q) itself.
    """

    q: int
    f: int
    root: int | None = None

    @property
    def ramified(self) -> bool:
        return self.q == 7

    @property
    def e(self) -> int:
        return 3 if self.q == 7 else 1

    @property
    def norm(self) -> int:
        return self.q ** self.f

    def contains(self, x: FieldElement) -> bool:
        a, b, c = x.int_coords()
        if self.f == 3:
            return a % self.q == 0 and b % self.q == 0 and c % self.q == 0
        return (a + b * self.root + c * self.root**2) % self.q == 0

    def __str__(self):
        if self.q == 7:
            return "p"
        if self.f == 3:
            return f"({self.q})"
        return f"({self.q}, w-{self.root})"


P7 = PrimeIdeal(7, 1, 2)


@lru_cache(maxsize=None)
def roots_mod(q: int) -> tuple[int, ...]:
    """Sorted roots of f mod q."""
    if q < 200:
        return tuple(r for r in range(q) if _f(r) % q == 0)
    rts = Poly(_X**3 + _X**2 - 2 * _X - 1, _X, modulus=q).ground_roots()
    return tuple(sorted(int(r) % q for r in rts))


_prime_lock = threading.Lock()
_prime_cache: dict[int, tuple[PrimeIdeal, ...]] = {}


def primes_over(q: int) -> tuple[PrimeIdeal, ...]:
    """The prime ideals of O above the rational prime q (memoized)."""
    got = _prime_cache.get(q)
    if got is not None:
        return got
    if q == 7:
        result = (P7,)
    else:
        rts = roots_mod(q)
        if len(rts) == 0:
            result = (PrimeIdeal(q, 3),)
        elif len(rts) == 3:
            result = tuple(PrimeIdeal(q, 1, r) for r in rts)
        else:
            # a cyclic cubic field has no primes of residue pattern (1, 2)
            raise AssertionError(f"unexpected splitting of f mod {q}: {rts}")
    with _prime_lock:
        _prime_cache.setdefault(q, result)
    return _prime_cache[q]


@lru_cache(maxsize=None)
def _hensel_root(q: int, r: int, k: int) -> int:
    """Lift a simple root r of f mod q to a root mod q^k."""
    if k == 1:
        return r
    prev = _hensel_root(q, r, k - 1)
    mod = q**k
    inv = pow(_fprime(prev), -1, mod)
    return (prev - _f(prev) * inv) % mod


# integer factorization of norms -------------------------------------------------

class _Sieve:
    """Smallest-prime-factor table grown on demand."""

    def __init__(self):
        self.limit = 1
        self.spf = np.zeros(2, dtype=np.int64)
        self.lock = threading.Lock()

    def ensure(self, n: int):
        if n <= self.limit:
            return
        with self.lock:
            if n <= self.limit:
                return
            limit = max(n, 2 * self.limit, 1 << 16)
            spf = np.zeros(limit + 1, dtype=np.int64)
            for i in range(2, int(math.isqrt(limit)) + 1):
                if spf[i] == 0:
                    block = spf[i * i::i]
                    block[block == 0] = i
            idx = np.nonzero(spf == 0)[0]
            spf[idx] = idx
            self.spf = spf
            self.limit = limit

    def factor(self, n: int) -> dict[int, int]:
        if n > 1 << 24:
            return factorint(n)
        self.ensure(n)
        out: dict[int, int] = {}
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return out


_SIEVE = _Sieve()


def factor_integer(n: int) -> dict[int, int]:
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    return _SIEVE.factor(n)


# ideal factorization ---------------------------------------------------------------

@dataclass(frozen=True)
class IdealFactorization:
    """Product of prime powers; exponents are positive."""

    factors: tuple[tuple[PrimeIdeal, int], ...]

    @classmethod
    def from_dict(cls, d: dict[PrimeIdeal, int]) -> "IdealFactorization":
        return cls(tuple(sorted((P, k) for P, k in d.items() if k != 0)))

    def as_dict(self) -> dict[PrimeIdeal, int]:
        return dict(self.factors)

    @property
    def norm(self) -> int:
        out = 1
        for P, k in self.factors:
            out *= P.norm**k
        return out

    def __mul__(self, other: "IdealFactorization") -> "IdealFactorization":
        d = self.as_dict()
        for P, k in other.factors:
            d[P] = d.get(P, 0) + k
        return IdealFactorization.from_dict(d)

    def divide(self, P: PrimeIdeal, k: int = 1) -> "IdealFactorization":
        d = self.as_dict()
        if d.get(P, 0) < k:
            raise ValueError(f"{P}^{k} does not divide the ideal")
        d[P] -= k
        return IdealFactorization.from_dict(d)

    def exponent(self, P: PrimeIdeal) -> int:
        return self.as_dict().get(P, 0)

    def __str__(self):
        if not self.factors:
            return "(1)"
        return " * ".join(str(P) if k == 1 else f"{P}^{k}" for P, k in self.factors)


UNIT_IDEAL = IdealFactorization(())


def valuation(x: FieldElement, P: PrimeIdeal) -> int:
    """v_P(x) for integral nonzero x."""
    a, b, c = x.int_coords()
    if a == b == c == 0:
        raise ValueError("valuation of 0")
    if P.q == 7:
        v = 0
        y = x
        while True:
            z = y / PI
            if not z.is_integral():
                return v
            y, v = z, v + 1
    if P.f == 3:
        return min(_vq(t, P.q) for t in (a, b, c) if t != 0)
    bound = _vq(int(norm(x)), P.q)
    v = 0
    while v < bound:
        mod = P.q ** (v + 1)
        r = _hensel_root(P.q, P.root, v + 1)
        if (a + b * r + c * r * r) % mod != 0:
            break
        v += 1
    return v


def _vq(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def factor_coords(a: int, b: int, c: int) -> IdealFactorization:
    """Factorization of the principal ideal (a + bw + cw^2)."""
    n = abs(int(norm_polynomial(a, b, c)))
    if n == 0:
        raise ValueError("cannot factor the zero ideal")
    out: dict[PrimeIdeal, int] = {}
    for q, e in factor_integer(n).items():
        primes = primes_over(q)
        if q == 7:
            out[P7] = e
        elif primes[0].f == 3:
            out[primes[0]] = e // 3
        else:
            total = 0
            for P in primes:
                if total == e:
                    break
                k = _split_valuation(a, b, c, P, e - total)
                if k:
                    out[P] = k
                    total += k
            if total != e:
                raise AssertionError(f"valuations at {q} do not add up to v_q(N) = {e}")
    return IdealFactorization.from_dict(out)


def _split_valuation(a, b, c, P: PrimeIdeal, bound: int) -> int:
    v = 0
    while v < bound:
        mod = P.q ** (v + 1)
        r = _hensel_root(P.q, P.root, v + 1)
        if (a + b * r + c * r * r) % mod != 0:
            break
        v += 1
    return v


def factor_element(x: FieldElement) -> IdealFactorization:
    x = FieldElement.coerce(x)
    if x.is_zero():
        raise ValueError("cannot factor 0")
    return factor_coords(*x.int_coords())


# the character s -------------------------------------------------------------------

def s_of_prime(P: PrimeIdeal) -> int:
    """Frobenius rule: s(P) = +1 iff N(P) = 1 mod 7, -1 iff N(P) = -1 mod 7."""
    if P.q == 7:
        return 0
    r = P.norm % 7
    if r == 1:
        return 1
    if r == 6:
        return -1
    raise AssertionError(f"N(P) = {P.norm} is not +-1 mod 7")


def legendre7(n: int) -> int:
    n %= 7
    if n == 0:
        return 0
    return 1 if n in (1, 2, 4) else -1


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@lru_cache(maxsize=None)
def _unit_with_residue() -> dict[int, FieldElement]:
    """A unit +-w^j for every residue in F_7^x."""
    table: dict[int, FieldElement] = {}
    for sgn in (1, -1):
        for j in range(6):
            u = W**j * sgn
            table.setdefault(u.mod_p(), u)
    if len(table) != 6:
        raise AssertionError("unit residues do not cover F_7^x")
    return table


def s_of_element(c: FieldElement) -> int:
    """s((c)) from the definition: sign(Norm(c1)) for the generator c1 = 1 mod p."""
    c = FieldElement.coerce(c)
    if c.is_zero():
        raise ValueError("s is undefined at 0")
    r = c.mod_p()
    if r == 0:
        return 0
    inv = pow(r, -1, 7)
    c1 = c * _unit_with_residue()[inv]
    if c1.mod_p() != 1:
        raise AssertionError("unit adjustment failed")
    return _sign(norm(c1))


def s_product_formula(c: FieldElement) -> int:
    """Alternative form sign(Norm(c)) * (c / p)."""
    c = FieldElement.coerce(c)
    if c.is_zero():
        raise ValueError("s is undefined at 0")
    return _sign(norm(c)) * legendre7(c.mod_p())


def s_of_ideal(I: IdealFactorization) -> int:
    out = 1
    for P, k in I.factors:
        out *= s_of_prime(P) ** k
    return out


def _local_s_sum(sP: int, k: int) -> int:
    # sum_{j=0..k} s^j with 0^0 = 1
    if sP == 1:
        return k + 1
    if sP == -1:
        return 1 if k % 2 == 0 else 0
    return 1


def divisor_sum_s_ideal(I: IdealFactorization) -> int:
    out = 1
    for P, k in I.factors:
        out *= _local_s_sum(s_of_prime(P), k)
        if out == 0:
            return 0
    return out


def divisor_sum_s(a: FieldElement) -> int:
    """Sum of s(c) over the ideal divisors (c) of (a)."""
    return divisor_sum_s_ideal(factor_element(a))


def divisor_sum_s_brute(a: FieldElement) -> int:
    """Oracle: enumerate all divisors of (a) explicitly and evaluate s on each."""
    I = factor_element(a)
    primes = [P for P, _ in I.factors]
    ranges = [range(k + 1) for _, k in I.factors]
    total = 0
    for exps in itertools.product(*ranges):
        total += s_of_ideal(IdealFactorization.from_dict(dict(zip(primes, exps))))
    return total


# rho_{L/K} ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def splits_in_L(P: PrimeIdeal) -> str:
    """'split', 'inert' or 'ramified' for P in L = K(zeta_7) = K[x]/(x^2 - w x + 1).

    Decided from the discriminant w^2 - 4 over the residue field O/P.
    """
    if P.q == 7:
        return "ramified"
    disc = W * W - 4
    if P.q == 2:
        # characteristic 2: x = w*y turns x^2 + w x + 1 into y^2 + y + w^-2
        # (Artin-Schreier); it splits iff the absolute trace of w^-2 vanishes.
        t = trace(W ** -2) if P.f == 3 else None
        if t is None:
            raise AssertionError("2 is inert in K")
        return "split" if int(t) % 2 == 0 else "inert"
    if P.f == 1:
        r = P.root
        d = int(disc.a + disc.b * r + disc.c * r * r) % P.q
    else:
        # a unit of F_{q^3} is a square iff its norm to F_q is a square
        d = int(norm(disc)) % P.q
    if d == 0:
        raise AssertionError("relative discriminant vanishes at an unramified prime")
    return "split" if pow(d, (P.q - 1) // 2, P.q) == 1 else "inert"


def rho_LK_ideal(I: IdealFactorization) -> int:
    out = 1
    for P, k in I.factors:
        kind = splits_in_L(P)
        if kind == "split":
            out *= k + 1
        elif kind == "inert":
            out *= 1 if k % 2 == 0 else 0
        if out == 0:
            return 0
    return out


def rho_LK(b: FieldElement) -> int:
    """Number of ideals of Q(zeta_7) with relative norm (b)."""
    return rho_LK_ideal(factor_element(b))


# sigma_1 ------------------------------------------------------------------------

def sigma1_ideal(I: IdealFactorization) -> int:
    """Sum of N(c) over the integral divisors c of I."""
    out = 1
    for P, k in I.factors:
        n = P.norm
        out *= (n ** (k + 1) - 1) // (n - 1)
    return out


# prime generators (oracle path only) ----------------------------------------------

@lru_cache(maxsize=None)
def prime_generator(P: PrimeIdeal, max_radius: int = 40) -> FieldElement:
    """Some generator of P: a short vector of P with |Norm| = N(P).

    Candidates are scanned in boxes of growing radius, sorted by the
    sum of squares of the embeddings (= Tr(x^2)).
    """
    target = P.norm
    for radius in range(1, max_radius + 1):
        cands = []
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                for c in range(-radius, radius + 1):
                    if max(abs(a), abs(b), abs(c)) != radius and radius > 1:
                        continue
                    if abs(norm_polynomial(a, b, c)) != target:
                        continue
                    x = FieldElement(a, b, c)
                    if P.contains(x):
                        cands.append(x)
        if cands:
            cands.sort(key=lambda x: (trace(x * x), x.coords))
            return cands[0]
    raise ValueError(f"no generator of {P} found within radius {max_radius}")


# cusps ----------------------------------------------------------------------------

def unit_residue_group() -> frozenset[int]:
    """Residues mod p of the units of O (generated by -1 and w)."""
    group = {1}
    frontier = [1]
    gens = [FieldElement(-1).mod_p() % 7, W.mod_p()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % 7
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


def cusp_orbits() -> list[list[tuple[int, int]]]:
    """Orbits of the unit residues acting by scalars on (O/p)^2 minus 0."""
    scalars = sorted(unit_residue_group())
    seen: set[tuple[int, int]] = set()
    orbits = []
    for x in range(7):
        for y in range(7):
            if (x, y) == (0, 0) or (x, y) in seen:
                continue
            orbit = sorted({(s * x % 7, s * y % 7) for s in scalars})
            seen.update(orbit)
            orbits.append(orbit)
    return orbits


def count_cusps() -> int:
    return len(cusp_orbits())
