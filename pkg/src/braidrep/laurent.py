"""Exact Laurent polynomials in one variable over the rationals."""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """A Laurent polynomial with exact Fraction coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in dict(coeffs).items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self._coeffs = clean

    @staticmethod
    def zero() -> LaurentPoly:
        return LaurentPoly()

    @staticmethod
    def one() -> LaurentPoly:
        return LaurentPoly({0: 1})

    @staticmethod
    def t(exponent: int = 1, coefficient=1) -> LaurentPoly:
        return LaurentPoly({exponent: coefficient})

    @staticmethod
    def const(c) -> LaurentPoly:
        return LaurentPoly({0: c})

    def items(self):
        return sorted(self._coeffs.items())

    def coefficient(self, e: int) -> Fraction:
        return self._coeffs.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_exp(self) -> int:
        return min(self._coeffs)

    def max_exp(self) -> int:
        return max(self._coeffs)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def invert_variable(self) -> LaurentPoly:
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self.items()))

    def evaluate(self, x) -> Fraction:
        """Exact evaluation at a nonzero rational point."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._coeffs.items():
            total += c * x**e
        return total

    def divide_exact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact division; raises if the divisor does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        # Shift both to ordinary polynomials and do synthetic division.
        a_shift, b_shift = self.min_exp(), other.min_exp()
        rem = dict(self.shift(-a_shift)._coeffs)
        div = other.shift(-b_shift)
        lead_e = div.max_exp()
        lead_c = div.coefficient(lead_e)
        out: dict[int, Fraction] = {}
        while rem:
            e = max(rem)
            if e < lead_e:
                raise ValueError("inexact Laurent division")
            q_e = e - lead_e
            q_c = rem[e] / lead_c
            out[q_e] = q_c
            for de, dc in div._coeffs.items():
                k = q_e + de
                new = rem.get(k, Fraction(0)) - q_c * dc
                if new == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = new
        return LaurentPoly(out).shift(a_shift - b_shift)

    def is_palindromic(self) -> bool:
        """p(t) == p(1/t) after centering; assumes already centered."""
        return self == self.invert_variable()

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts)


def laurent_matrix_mul(A, B):
    """Product of two matrices with LaurentPoly entries (lists of lists)."""
    rows, inner, cols = len(A), len(B), len(B[0])
    if len(A[0]) != inner:
        raise ValueError("inner dimension mismatch")
    out = [[LaurentPoly() for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(cols):
                if not B[k][j].is_zero():
                    out[i][j] = out[i][j] + a * B[k][j]
    return out


def laurent_identity(size: int):
    return [
        [LaurentPoly.one() if i == j else LaurentPoly() for j in range(size)]
        for i in range(size)
    ]


def laurent_det(M) -> LaurentPoly:
    """Determinant by minor expansion, memoized on column subsets."""
    size = len(M)
    if size == 0:
        return LaurentPoly.one()
    cache: dict[tuple[int, ...], LaurentPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> LaurentPoly:
        if not cols:
            return LaurentPoly.one()
        key = cols
        hit = cache.get(key)
        if hit is not None:
            return hit
        total = LaurentPoly()
        for pos, col in enumerate(cols):
            entry = M[row][col]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            total = total + (term if pos % 2 == 0 else -term)
        cache[key] = total
        return total

    return minor(0, tuple(range(size)))
