"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored as integer coefficients on the power basis
1, zeta, ..., zeta^(phi(m)-1) over a common positive denominator, reduced
modulo the m-th cyclotomic polynomial.  Values with different conductors are
combined in Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Number = Union[int, Fraction, "Cyclotomic"]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds zeta_m^j reduced to the power basis (j = 0 .. m-1)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by x, then replace x^deg by -(phi - x^deg)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _descent(m: int, M: int):
    """Left inverse of the embedding Q(zeta_m) -> Q(zeta_M) on chosen pivot coordinates."""
    step = M // m
    table = _power_table(M)
    emb = [list(map(Fraction, table[(j * step) % M])) for j in range(totient(m))]
    k, n = len(emb), totient(M)
    # Gauss-Jordan on the columns to find k independent coordinates
    aug = [row[:] + [Fraction(int(i == r)) for i in range(k)] for r, row in enumerate(emb)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, k) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(k):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == k:
            break
    # x * emb = v  =>  x = v[pivots] * inv(emb[:, pivots]); aug right block is that inverse's transpose action
    inv_rows = [aug[r][n:] for r in range(k)]
    return tuple(pivots), inv_rows


class Cyclotomic:
    __slots__ = ("m", "coeffs", "den", "_hash")

    def __init__(self, m: int, coeffs, den: int = 1, *, _canonical: bool = False):
        self.m = m
        if not _canonical:
            coeffs, den = _normalize(m, list(coeffs), den)
        self.coeffs: tuple[int, ...] = tuple(coeffs)
        self.den: int = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, q, m: int = 1) -> Cyclotomic:
        q = Fraction(q)
        return cls(m, [q.numerator] + [0] * (totient(m) - 1), q.denominator, _canonical=True)._fix()

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> Cyclotomic:
        return cls(m, _power_table(m)[k % m], 1, _canonical=True)

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> Cyclotomic:
        """sum_k counts[k] * zeta_m^k."""
        table = _power_table(m)
        acc = [0] * totient(m)
        for k, c in enumerate(counts):
            if c:
                for i, t in enumerate(table[k % m]):
                    if t:
                        acc[i] += c * t
        return cls(m, acc, 1)

    def _fix(self) -> Cyclotomic:
        c, d = _normalize(self.m, list(self.coeffs), self.den)
        self.coeffs, self.den = tuple(c), d
        return self

    # -- conductor handling ---------------------------------------------------

    def lift(self, M: int) -> Cyclotomic:
        """Same value, written in Q(zeta_M) (requires m | M)."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"conductor {self.m} does not divide {M}")
        step = M // self.m
        table = _power_table(M)
        acc = [0] * totient(M)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(j * step) % M]):
                    if t:
                        acc[i] += c * t
        return Cyclotomic(M, acc, self.den)

    def descend(self, m: int) -> Cyclotomic | None:
        """The same value written in Q(zeta_m), or None if it does not lie there."""
        if m == self.m:
            return self
        if self.m % m:
            return None
        pivots, inv_rows = _descent(m, self.m)
        v = [Fraction(self.coeffs[p], self.den) for p in pivots]
        x = [sum(v[r] * inv_rows[r][i] for r in range(len(v))) for i in range(len(v))]
        den = math.lcm(*(q.denominator for q in x)) if x else 1
        cand = Cyclotomic(m, [int(q * den) for q in x], den)
        return cand if cand.lift(self.m) == self else None

    def minimal(self) -> Cyclotomic:
        """The same value in the smallest conductor dividing m that contains it."""
        for d in range(1, self.m + 1):
            if self.m % d == 0:
                low = self.descend(d)
                if low is not None:
                    return low
        return self

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other, self.m)
        return None

    @staticmethod
    def _common(a: Cyclotomic, b: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if a.m == b.m:
            return a, b
        M = math.lcm(a.m, b.m)
        return a.lift(M), b.lift(M)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(self, o)
        d = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return Cyclotomic(a.m, [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs], self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.m, [c * other for c in self.coeffs], self.den)
        if isinstance(other, Fraction):
            return Cyclotomic(self.m, [c * other.numerator for c in self.coeffs], self.den * other.denominator)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(self, other)
        m = a.m
        table = _power_table(m)
        prod = [0] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[(i + j) % m] += x * y
        acc = [0] * len(a.coeffs)
        for k, c in enumerate(prod):
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        acc[i] += c * t
        return Cyclotomic(m, acc, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.m, [c * q.denominator for c in self.coeffs], self.den * q.numerator)
        return NotImplemented

    def conjugate(self) -> Cyclotomic:
        """Complex conjugation, zeta -> zeta^(m-1)."""
        m = self.m
        table = _power_table(m)
        acc = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(-j) % m]):
                    if t:
                        acc[i] += c * t
        return Cyclotomic(m, acc, self.den)

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta -> zeta^k (k coprime to m)."""
        m = self.m
        table = _power_table(m)
        acc = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(j * k) % m]):
                    if t:
                        acc[i] += c * t
        return Cyclotomic(m, acc, self.den)

    # -- predicates and conversions ---------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_rational_integer(self) -> bool:
        return self.is_rational() and self.den == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return complex(sum(int(c) * z ** k for k, c in enumerate(self.coeffs)) / self.den)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.m != self.m:
            a, b = self._common(self, o)
            return a.coeffs == b.coeffs and a.den == b.den
        return self.coeffs == o.coeffs and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            # values that are rational hash like the Fraction, independent of conductor
            if self.is_rational():
                self._hash = hash(Fraction(self.coeffs[0], self.den))
            else:
                low = self.minimal()
                self._hash = hash((low.m, low.coeffs, low.den))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(Fraction(self.coeffs[0], self.den))
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            q = Fraction(c, self.den)
            mono = "1" if k == 0 else (f"z{self.m}" if k == 1 else f"z{self.m}^{k}")
            if k and abs(q) == 1:
                terms.append(("-" if q < 0 else "+") + mono)
            else:
                terms.append(f"{'+' if q > 0 else '-'}{abs(q)}" + ("" if k == 0 else "*" + mono))
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    def serialize(self) -> str:
        """Space-separated power-basis coefficients, each ``num`` or ``num/den``."""
        return " ".join(str(Fraction(c, self.den)) for c in self.coeffs)

    @classmethod
    def parse(cls, m: int, text: str) -> Cyclotomic:
        qs = [Fraction(t) for t in text.split()]
        if len(qs) != totient(m):
            raise ValueError(f"expected {totient(m)} coefficients for conductor {m}")
        den = math.lcm(*(q.denominator for q in qs))
        return cls(m, [int(q * den) for q in qs], den)


def _normalize(m: int, coeffs: list[int], den: int) -> tuple[list[int], int]:
    n = totient(m)
    if len(coeffs) != n:
        raise ValueError(f"conductor {m} needs {n} coefficients, got {len(coeffs)}")
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        coeffs, den = [-c for c in coeffs], -den
    g = den
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    if not any(coeffs):
        return [0] * n, 1
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return coeffs, den


def zero(m: int = 1) -> Cyclotomic:
    return Cyclotomic(m, [0] * totient(m), 1, _canonical=True)


def as_cyclotomic(x, m: int = 1) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x, m)
