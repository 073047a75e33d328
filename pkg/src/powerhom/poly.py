"""Multivariate polynomials over exact fields.

A Polynomial is a tuple of (monomial, coefficient) terms kept sorted
strictly descending under its ring's order, with no zero coefficients and
no duplicate monomials; every operation returns that canonical form.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import (
    QQ,
    DegRevLex,
    GFElement,
    mono_deg,
    mono_mul,
    mono_one,
)


class PolyRing:
    """A polynomial ring: variable names, coefficient field, term order."""

    __slots__ = ("names", "field", "order")

    def __init__(self, names, field=QQ, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.field = field
        self.order = order if order is not None else DegRevLex(len(names))

    @property
    def ngens(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, type(self.order).__name__))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    # -- constructors ------------------------------------------------------

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.of(c)
        if not c:
            return Polynomial(self, ())
        return Polynomial(self, ((mono_one(self.ngens), c),))

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.ngens
        e[i] = 1
        return Polynomial(self, ((tuple(e), self.field.one),))

    def gens(self):
        return [self.var(i) for i in range(self.ngens)]

    def monomial(self, mono, coeff=1):
        coeff = self.field.of(coeff)
        if not coeff:
            return Polynomial(self, ())
        return Polynomial(self, ((tuple(mono), coeff),))

    def from_dict(self, d):
        """Build from {monomial: coefficient}, dropping zeros and sorting."""
        items = [(m, c) for m, c in d.items() if c]
        items.sort(key=lambda t: self.order.key(t[0]), reverse=True)
        return Polynomial(self, tuple(items))

    def with_order(self, order):
        return PolyRing(self.names, self.field, order)

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring.names != self.names or x.ring.field != self.field:
                raise ValueError("mixed-ring operands rejected")
            if x.ring.order == self.order:
                return x
            return self.from_dict(dict(x.terms))
        return self.const(x)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # tuple[(mono, coeff)], sorted desc, canonical

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def is_unit_constant(self):
        return len(self.terms) == 1 and not any(self.terms[0][0])

    def constant_coeff(self):
        one = mono_one(self.ring.ngens)
        for m, c in self.terms:
            if m == one:
                return c
        return self.ring.field.zero

    def degree(self):
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    def low_degree(self):
        """Min total degree among terms; -1 for zero."""
        if not self.terms:
            return -1
        return min(mono_deg(m) for m, _ in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {mono_deg(m) for m, _ in self.terms}
        return len(degs) == 1

    def lead_monomial(self):
        return self.terms[0][0]

    def lead_coeff(self):
        return self.terms[0][1]

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == self.ring.field.one:
            return self
        return Polynomial(self.ring, tuple((m, c / lc) for m, c in self.terms))

    def homogeneous_part(self, d):
        items = tuple((m, c) for m, c in self.terms if mono_deg(m) == d)
        return Polynomial(self.ring, items)

    # -- arithmetic --------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
                raise ValueError("mixed-ring operands rejected")
            return other
        if isinstance(other, (int, Fraction, GFElement)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        g = self._coerce_other(other)
        if g is None:
            return NotImplemented
        d = dict(self.terms)
        for m, c in g.terms:
            s = d.get(m)
            s = c if s is None else s + c
            if s:
                d[m] = s
            else:
                del d[m]
        return self.ring.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        g = self._coerce_other(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GFElement)):
            c = self.ring.field.of(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((m, a * c) for m, a in self.terms))
        g = self._coerce_other(other)
        if g is None:
            return NotImplemented
        d = {}
        for m1, c1 in self.terms:
            for m2, c2 in g.terms:
                m = mono_mul(m1, m2)
                s = d.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    d[m] = s
                elif m in d:
                    del d[m]
        return self.ring.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        g = self._coerce_other(other)
        if g is None:
            return NotImplemented
        return self.terms == g.terms

    def __hash__(self):
        return hash((self.ring.names, self.terms))

    # -- ring maps ---------------------------------------------------------

    def substitute(self, target_ring, images):
        """Apply the ring map sending variable i to images[i]."""
        if len(images) != self.ring.ngens:
            raise ValueError("need one image per variable")
        out = target_ring.zero()
        for m, c in self.terms:
            t = target_ring.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            out = out + t
        return out

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"<{self}>"


def poly_arith(op, f, g):
    """Dispatch basic polynomial arithmetic by name: add, sub, mul, scale."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
