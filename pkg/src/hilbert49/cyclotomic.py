"""Exact arithmetic in cyclotomic fields Q(zeta_n) and small matrices over them.

Elements are stored as integer coordinates on {1, zeta, ..., zeta^(phi(n)-1)}
together with one positive common denominator.  Reduction uses the table
zeta^j mod Phi_n for 0 <= j < n, so products never leave Z until normalized.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    # x^n - 1 = prod_{d | n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta^j for j = 0..n-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CycNumber:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("n", "num", "den")

    def __init__(self, num, den: int = 1, n: int = 7, _normalized: bool = False):
        object.__setattr__(self, "n", n)
        if _normalized:
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den)
            return
        num = tuple(int(x) for x in num)
        if len(num) != euler_phi(n):
            raise ValueError(f"expected {euler_phi(n)} coordinates, got {len(num)}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    # construction ------------------------------------------------------------
    @classmethod
    def from_rational(cls, q, n: int = 7) -> "CycNumber":
        q = Fraction(q)
        num = [0] * euler_phi(n)
        num[0] = q.numerator
        return cls(num, q.denominator, n)

    @classmethod
    def from_powers(cls, exps: dict[int, object] | list, n: int = 7) -> "CycNumber":
        """sum_j c_j zeta^j for a mapping j -> rational c_j (any integer j)."""
        items = exps.items() if isinstance(exps, dict) else enumerate(exps)
        fracs = [(j % n, Fraction(c)) for j, c in items if c]
        den = 1
        for _, c in fracs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [0] * n
        for j, c in fracs:
            ints[j] += int(c * den)
        return cls(_reduce(ints, n), den, n)

    @classmethod
    def zeta(cls, k: int = 1, n: int = 7) -> "CycNumber":
        return cls.from_powers({k: 1}, n)

    @classmethod
    def zero(cls, n: int = 7) -> "CycNumber":
        return cls.from_rational(0, n)

    @classmethod
    def one(cls, n: int = 7) -> "CycNumber":
        return cls.from_rational(1, n)

    # helpers -----------------------------------------------------------------
    def _lift(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.n != self.n:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(other, self.n)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = d // self.den, d // other.den
        return CycNumber(tuple(x * fa + y * fb for x, y in zip(self.num, other.num)), d, self.n)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(tuple(-x for x in self.num), self.den, self.n, _normalized=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNumber(tuple(x * other for x in self.num), self.den, self.n)
        if isinstance(other, Fraction):
            return CycNumber(tuple(x * other.numerator for x in self.num),
                             self.den * other.denominator, self.n)
        if not isinstance(other, CycNumber):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("mixing different cyclotomic fields")
        n = self.n
        acc = [0] * n
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        acc[(i + j) % n] += x * y
        return CycNumber(_reduce(acc, n), self.den * other.den, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNumber.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, t: int) -> "CycNumber":
        """Image under zeta -> zeta^t, gcd(t, n) = 1."""
        n = self.n
        if math.gcd(t, n) != 1:
            raise ValueError("not an automorphism")
        acc = [0] * n
        for i, x in enumerate(self.num):
            acc[(i * t) % n] += x
        return CycNumber(_reduce(acc, n), self.den, n)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def norm(self) -> Fraction:
        out = CycNumber.one(self.n)
        for t in range(2, self.n):
            if math.gcd(t, self.n) == 1:
                out = out * self.galois(t)
        return (out * self).to_fraction()

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in a cyclotomic field")
        others = CycNumber.one(self.n)
        for t in range(2, self.n):
            if math.gcd(t, self.n) == 1:
                others = others * self.galois(t)
        nrm = (others * self).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.n, self.num, self.den))

    # numerics and printing ---------------------------------------------------
    def to_complex(self, dps: int = 30):
        with mpmath.workdps(dps):
            z = mpmath.exp(2j * mpmath.pi / self.n)
            return mpmath.fsum(mpmath.mpf(c) * z**k for k, c in enumerate(self.num) if c) / self.den

    def key(self) -> tuple:
        """Canonical serialization (used for set/dict deduplication)."""
        return (self.num, self.den)

    def __repr__(self):
        return f"CycNumber({self.num}, {self.den}, n={self.n})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            coef = Fraction(c, self.den)
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(mono)
            elif coef == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _reduce(acc: list[int], n: int) -> tuple[int, ...]:
    table = _reduction_table(n)
    deg = euler_phi(n)
    out = [0] * deg
    for j, c in enumerate(acc):
        if c:
            row = table[j]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def legendre(t: int, q: int) -> int:
    t %= q
    if t == 0:
        return 0
    return 1 if pow(t, (q - 1) // 2, q) == 1 else -1


def gauss_sum() -> CycNumber:
    """g = sum_t (t/7) zeta_7^t; g^2 = -7 and g = i*sqrt(7) for zeta_7 = exp(2 pi i/7)."""
    return CycNumber.from_powers({t: legendre(t, 7) for t in range(1, 7)})


# matrices ------------------------------------------------------------------------

class CycMatrix:
    """Square matrix over Q(zeta_n); rows are tuples of CycNumber."""

    __slots__ = ("rows", "n")

    def __init__(self, rows, n: int = 7):
        conv = []
        for r in rows:
            conv.append(tuple(x if isinstance(x, CycNumber) else CycNumber.from_rational(x, n) for x in r))
        object.__setattr__(self, "rows", tuple(conv))
        object.__setattr__(self, "n", n)
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("CycMatrix must be square")

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, m: int, n: int = 7) -> "CycMatrix":
        return cls([[1 if i == j else 0 for j in range(m)] for i in range(m)], n)

    @classmethod
    def diagonal(cls, entries, n: int = 7) -> "CycMatrix":
        m = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, CycMatrix):
            m = self.size
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = CycNumber.zero(self.n)
                    for x, y in zip(r, c):
                        if not x.is_zero() and not y.is_zero():
                            acc = acc + x * y
                    row.append(acc)
                out.append(row)
            return CycMatrix(out, self.n)
        return CycMatrix([[x * other for x in r] for r in self.rows], self.n)

    __rmul__ = lambda self, other: self * other  # noqa: E731  (scalars commute)

    def __neg__(self):
        return CycMatrix([[-x for x in r] for r in self.rows], self.n)

    def __add__(self, other: "CycMatrix"):
        return CycMatrix([[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)], self.n)

    def __sub__(self, other: "CycMatrix"):
        return self + (-other)

    def __pow__(self, k: int):
        out = CycMatrix.identity(self.size, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def transpose(self) -> "CycMatrix":
        return CycMatrix(list(zip(*self.rows)), self.n)

    def trace(self) -> CycNumber:
        acc = CycNumber.zero(self.n)
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def determinant(self) -> CycNumber:
        # fraction-based Gaussian elimination; matrices here are tiny
        a = [list(r) for r in self.rows]
        m = self.size
        det = CycNumber.one(self.n)
        for col in range(m):
            piv = next((r for r in range(col, m) if not a[r][col].is_zero()), None)
            if piv is None:
                return CycNumber.zero(self.n)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = a[col][col].inverse()
            for r in range(col + 1, m):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all((x == d) if i == j else x.is_zero()
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def key(self) -> tuple:
        return tuple(x.key() for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, CycMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_mpmath(self, dps: int = 30):
        with mpmath.workdps(dps):
            return mpmath.matrix([[x.to_complex(dps) for x in r] for r in self.rows])

    def __repr__(self):
        return "CycMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"
