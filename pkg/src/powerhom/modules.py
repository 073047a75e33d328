"""Shifted graded free modules and their elements.

A FreeModule records the internal degree of each basis vector: degrees
(d_1, ..., d_s) describe R(-d_1) + ... + R(-d_s), so basis vector e_j is
homogeneous of internal degree d_j.  A homogeneous element v = sum a_j e_j
then has deg(a_j) + d_j constant over its nonzero coordinates, while its
filtration order ord(v) is the minimum coefficient degree, ignoring shifts.
"""

from __future__ import annotations

from .poly import Polynomial
from .rings import mono_deg


class FreeModule:
    __slots__ = ("ring", "degrees")

    def __init__(self, ring, degrees):
        self.ring = ring
        self.degrees = tuple(degrees)

    @property
    def rank(self):
        return len(self.degrees)

    @property
    def twists(self):
        """The module as a sum of twists R(t_j); t_j = -degree of e_j."""
        return tuple(-d for d in self.degrees)

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.ring, self.degrees))

    def __repr__(self):
        return f"FreeModule({self.ring!r}, degrees={self.degrees})"

    def zero(self):
        z = self.ring.zero()
        return ModuleElement(self, (z,) * self.rank)

    def element(self, coords):
        coords = tuple(self.ring.coerce(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError("coordinate count does not match rank")
        return ModuleElement(self, coords)

    def basis_element(self, j, poly=None):
        coords = [self.ring.zero()] * self.rank
        coords[j] = self.ring.one() if poly is None else self.ring.coerce(poly)
        return ModuleElement(self, tuple(coords))


def free_module_over(ring, rank=1, degrees=None):
    if degrees is None:
        degrees = (0,) * rank
    return FreeModule(ring, degrees)


class ModuleElement:
    __slots__ = ("module", "coords")

    def __init__(self, module, coords):
        self.module = module
        self.coords = coords

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            raise ValueError("ambient module mismatch")
        return ModuleElement(
            self.module, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            raise ValueError("ambient module mismatch")
        return ModuleElement(
            self.module, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return ModuleElement(self.module, tuple(-a for a in self.coords))

    def __mul__(self, other):
        """Scale by a polynomial or field scalar."""
        return ModuleElement(self.module, tuple(a * other for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.module == other.module
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.module, self.coords))

    # -- grading -----------------------------------------------------------

    def internal_degree(self):
        """The common degree deg(a_j) + d_j, or None if not homogeneous."""
        degs = set()
        for a, d in zip(self.coords, self.module.degrees):
            if a.is_zero():
                continue
            if not a.is_homogeneous():
                return None
            degs.add(a.degree() + d)
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        if self.is_zero():
            return True
        return self.internal_degree() is not None

    def filtration_order(self):
        """Minimum coefficient degree over nonzero coordinates (shifts ignored)."""
        lows = [a.low_degree() for a in self.coords if not a.is_zero()]
        if not lows:
            raise ValueError("zero element has no filtration order")
        return min(lows)

    def leading_form(self):
        """Drop everything above the minimal coefficient degree.

        For homogeneous v this keeps exactly the coordinates a_j with
        deg(a_j) = ord(v); in general it keeps the lowest-degree slice of
        every coordinate that attains the overall minimum.
        """
        if self.is_zero():
            raise ValueError("zero element has no leading form")
        k = self.filtration_order()
        coords = tuple(a.homogeneous_part(k) for a in self.coords)
        return ModuleElement(self.module, coords)

    def is_filtration_homogeneous(self):
        """All nonzero coordinate terms share one coefficient degree."""
        degs = set()
        for a in self.coords:
            for m, _ in a.terms:
                degs.add(mono_deg(m))
        return len(degs) <= 1

    def __str__(self):
        parts = []
        for j, a in enumerate(self.coords):
            if a.is_zero():
                continue
            body = str(a)
            if len(a.terms) > 1:
                body = f"({body})"
            neg = body.startswith("-") and not body.startswith("(")
            if neg:
                body = body[1:]
            if not parts:
                parts.append(("-" if neg else "") + f"{body}*e{j + 1}")
            else:
                parts.append(("- " if neg else "+ ") + f"{body}*e{j + 1}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self}>"


def as_module_element(x, module=None):
    """Wrap a Polynomial as a rank-1 element; pass ModuleElements through."""
    if isinstance(x, ModuleElement):
        return x
    if isinstance(x, Polynomial):
        if module is None:
            module = FreeModule(x.ring, (0,))
        return module.element((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as a module element")


def homogeneity(v):
    """Report (is_homogeneous, internal_degree or None, filtration_order).

    Rejects the zero element, which has neither degree nor order.
    """
    v = as_module_element(v)
    if v.is_zero():
        raise ValueError("zero element rejected")
    deg = v.internal_degree()
    return (deg is not None, deg, v.filtration_order())


def leading_form(x):
    """The lowest-coefficient-degree slice of a nonzero homogeneous element."""
    x = as_module_element(x)
    if x.is_zero():
        raise ValueError("zero element rejected")
    return x.leading_form()
