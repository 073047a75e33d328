"""Coefficient fields, monomial helpers, and term orders.

All arithmetic is exact.  Rationals are `fractions.Fraction`; prime-field
elements are reduced residues mod an odd prime below 2**31.  Monomials are
plain tuples of non-negative exponents.  Orders compare monomials through
additive integer key vectors, so key(u*m) = key(u) + key(m) componentwise;
this keeps term manipulation cheap inside the Groebner engine.
"""

from __future__ import annotations

from fractions import Fraction


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """The field of exact rationals (elements are Fraction)."""

    characteristic = 0

    def of(self, a, b=1):
        if isinstance(a, GFElement):
            raise TypeError("cannot coerce a prime-field element into QQ")
        return Fraction(a, b) if b != 1 else Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


def _is_prime(p):
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin, valid far beyond 2**31
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class GFElement:
    """Residue class in a prime field, reduced to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElement(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElement(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElement(w - self.v, self.p)

    def __mul__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElement(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return GFElement(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return GFElement(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, Fraction):
            return other.denominator % self.p != 0 and self.v == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField:
    """GF(p) for an odd prime p < 2**31."""

    def __init__(self, p):
        if not isinstance(p, int) or p == 2 or p >= 2**31 or not _is_prime(p):
            raise ValueError(f"need an odd prime below 2**31, got {p!r}")
        self.p = p
        self.characteristic = p

    def of(self, a, b=1):
        if isinstance(a, GFElement):
            if a.p != self.p:
                raise ValueError("mixed prime fields")
            x = a
        else:
            x = GFElement(0, self.p)._lift(a)
            x = GFElement(x, self.p)
        if b != 1:
            x = x / b
        return x

    @property
    def zero(self):
        return GFElement(0, self.p)

    @property
    def one(self):
        return GFElement(1, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


# ---------------------------------------------------------------------------
# monomials: tuples of non-negative ints


def mono_one(n):
    return (0,) * n


def mono_deg(m):
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """Does a divide b?"""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b; requires b | a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in q):
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n, d):
    """All exponent tuples of total degree d in n variables, deterministic order."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# scalar term orders


class TermOrder:
    is_global = True

    def key(self, mono):
        raise NotImplementedError

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__,) + self._ident())

    def _ident(self):
        return ()


class DegRevLex(TermOrder):
    """Total degree first, ties by reverse lexicographic comparison."""

    name = "degrevlex"

    def __init__(self, n):
        self.n = n

    def key(self, mono):
        return (sum(mono),) + tuple(-e for e in reversed(mono))

    def _ident(self):
        return (self.n,)


class Lex(TermOrder):
    """Pure lexicographic order; ignores total degree."""

    name = "lex"

    def __init__(self, n):
        self.n = n

    def key(self, mono):
        return mono

    def _ident(self):
        return (self.n,)


class BlockElim(TermOrder):
    """Elimination order: the block of variables in `block` dominates.

    Any monomial involving a block variable beats every block-free monomial;
    ties inside each block break by degrevlex.
    """

    name = "elim"

    def __init__(self, n, block):
        self.n = n
        self.block = tuple(sorted(block))
        self.rest = tuple(i for i in range(n) if i not in set(self.block))

    def key(self, mono):
        b = tuple(mono[i] for i in self.block)
        r = tuple(mono[i] for i in self.rest)
        return (
            (sum(b),)
            + tuple(-e for e in reversed(b))
            + (sum(r),)
            + tuple(-e for e in reversed(r))
        )

    def _ident(self):
        return (self.n, self.block)


# ---------------------------------------------------------------------------
# module orders on pairs (monomial, component)


class ModuleOrder:
    """Total order on module monomials with additive integer keys.

    key(u*m, c) = scalar_key(u) + key(m, c) holds componentwise for every
    subclass, which is what lets the engine shift terms without re-keying.
    """

    is_global = True

    def key(self, mono, comp):
        raise NotImplementedError

    def scalar_key(self, mono):
        raise NotImplementedError

    def compare(self, a, b):
        ka, kb = self.key(*a), self.key(*b)
        return (ka > kb) - (ka < kb)


class TermOverPosition(ModuleOrder):
    """Compare monomials under a scalar order first; lower component wins ties."""

    def __init__(self, order):
        self.order = order
        self.is_global = order.is_global

    def key(self, mono, comp):
        return self.order.key(mono) + (-comp,)

    def scalar_key(self, mono):
        return self.order.key(mono) + (0,)


class PositionOverTerm(ModuleOrder):
    """Lower component dominates; ties by the scalar order."""

    def __init__(self, order):
        self.order = order
        self.is_global = order.is_global

    def key(self, mono, comp):
        return (-comp,) + self.order.key(mono)

    def scalar_key(self, mono):
        return (0,) + self.order.key(mono)


class SchreyerOrder(ModuleOrder):
    """Order induced by labelling each component with a module monomial.

    u*e_c beats v*e_d when u*label(c) beats v*label(d) under the base module
    order, ties broken by smaller component.
    """

    def __init__(self, base, labels):
        self.base = base
        self.labels = tuple(labels)  # (mono, comp) per component
        self.is_global = base.is_global
        self._label_keys = tuple(base.key(m, c) for (m, c) in labels)

    def key(self, mono, comp):
        sk = self.base.scalar_key(mono)
        lk = self._label_keys[comp]
        return tuple(x + y for x, y in zip(sk, lk)) + (-comp,)

    def scalar_key(self, mono):
        return self.base.scalar_key(mono) + (0,)


class FiltrationOrder(ModuleOrder):
    """Lower coefficient degree leads; ties by degrevlex, then component.

    Not a global order (1 beats x), but on internally homogeneous inputs
    every reduction stays inside one internal degree, where only finitely
    many module monomials exist, so division terminates.
    """

    is_global = False

    def __init__(self, n):
        self.n = n

    def key(self, mono, comp):
        return (-sum(mono),) + tuple(-e for e in reversed(mono)) + (-comp,)

    def scalar_key(self, mono):
        return (-sum(mono),) + tuple(-e for e in reversed(mono)) + (0,)


def monomial_compare(order, a, b):
    """Three-way comparison: -1, 0 or 1 as a <, =, > b under `order`.

    `order` may be scalar (then a, b are exponent tuples) or a module order
    (then a, b are (monomial, component) pairs).
    """
    if isinstance(order, ModuleOrder):
        return order.compare(a, b)
    return order.compare(a, b)
