"""Rational-coefficient formal power series truncated at a fixed order.

Exact arithmetic throughout: add, mul, reciprocal of a unit, log of a
series with constant term 1, exp of a series with constant term 0.  All
identities hold coefficientwise through the truncation order.
"""

from __future__ import annotations

from fractions import Fraction


class TruncatedSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def zvar(cls, order):
        return cls([0, 1], order)

    def __getitem__(self, i):
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def truncate(self, t):
        if t > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: t + 1], t)

    def _common(self, other):
        if isinstance(other, TruncatedSeries):
            t = min(self.order, other.order)
            a = self.truncate(t) if self.order > t else self
            b = other.truncate(t) if other.order > t else other
            return a, b
        return self, TruncatedSeries([other], self.order)

    def __add__(self, other):
        a, b = self._common(other)
        return TruncatedSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-x for x in self.coeffs], self.order)

    def __sub__(self, other):
        a, b = self._common(other)
        return TruncatedSeries([x - y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        a, b = self._common(other)
        t = a.order
        out = [Fraction(0)] * (t + 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j in range(t + 1 - i):
                y = b.coeffs[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(out, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs and self.order == other.order
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def inverse(self):
        """Reciprocal; requires a unit constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series has no reciprocal (zero constant term)")
        t = self.order
        inv0 = 1 / c0
        out = [inv0] + [Fraction(0)] * t
        for k in range(1, t + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += self.coeffs[i] * out[k - i]
            out[k] = -inv0 * s
        return TruncatedSeries(out, t)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        a, b = self._common(other)
        return a * b.inverse()

    def log(self):
        """log of a series with constant term 1, exact through the order."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        t = self.order
        out = [Fraction(0)] * (t + 1)
        for k in range(1, t + 1):
            s = Fraction(0)
            for j in range(1, k):
                s += j * out[j] * self.coeffs[k - j]
            out[k] = self.coeffs[k] - s / k
        return TruncatedSeries(out, t)

    def exp(self):
        """exp of a series with constant term 0, exact through the order."""
        if self.coeffs[0]:
            raise ValueError("exp needs constant term 0")
        t = self.order
        out = [Fraction(1)] + [Fraction(0)] * t
        for k in range(1, t + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += j * self.coeffs[j] * out[k - j]
            out[k] = s / k
        return TruncatedSeries(out, t)

    def shift(self, e):
        """Multiply by z**e."""
        if e < 0:
            raise ValueError("negative shift")
        return TruncatedSeries([Fraction(0)] * e + list(self.coeffs), self.order)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c and parts:
                continue
            term = str(c) if i == 0 else (f"{c}*z^{i}" if i > 1 else f"{c}*z")
            parts.append(term)
        return " + ".join(parts) + f" + O(z^{self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, order={self.order})"


def geometric(ratio_coeffs, t):
    """1 / (1 - sum_i ratio_coeffs[i] z^{i+1}) through order t."""
    denom = TruncatedSeries([1] + [-Fraction(c) for c in ratio_coeffs], t)
    return denom.inverse()
