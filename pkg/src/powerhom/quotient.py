"""Quotient-ring contexts: normal forms and standard-monomial bases.

A QuotientRingCtx fixes a reduced degrevlex Groebner basis of the defining
ideal; normal forms modulo it are unique, and the standard monomials (those
outside the leading-term ideal) give an exact K-basis of each graded
component of the quotient.
"""

from __future__ import annotations

from .groebner import buchberger, reduce as gb_reduce
from .modules import FreeModule, as_module_element
from .rings import mono_divides, mono_deg, monomials_of_degree


class QuotientRingCtx:
    def __init__(self, ring, ideal_gens=()):
        self.ring = ring
        gens = [g for g in ideal_gens if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError("defining ideal must be homogeneous")
        mod = FreeModule(ring, (0,))
        self.gb = buchberger([as_module_element(g, mod) for g in gens], module=mod)
        self.lead_monos = [e.coords[0].lead_monomial() for e in self.gb.elements]
        self.is_monomial = all(
            len(e.coords[0].terms) == 1 for e in self.gb.elements
        )
        self._std = {}
        self._std_index = {}
        self._var_mult = {}
        self._nf_cache = {}

    def defining_polynomials(self):
        return self.gb.polynomials()

    def __repr__(self):
        gens = ", ".join(str(p) for p in self.defining_polynomials()) or "0"
        return f"{self.ring!r}/({gens})"

    # -- normal forms --------------------------------------------------------

    def normal_form(self, p):
        if not self.lead_monos:
            return p
        if self.is_monomial:
            items = {
                m: c
                for m, c in p.terms
                if not any(mono_divides(lm, m) for lm in self.lead_monos)
            }
            return self.ring.from_dict(items)
        nf, _ = gb_reduce(p, self.gb, with_quotients=False)
        return nf.coords[0]

    def is_zero_in_quotient(self, p):
        return self.normal_form(p).is_zero()

    # -- graded structure ----------------------------------------------------

    def std_monomials(self, d):
        """Standard monomials of degree d (a K-basis of the degree-d part)."""
        got = self._std.get(d)
        if got is None:
            got = [
                m
                for m in monomials_of_degree(self.ring.ngens, d)
                if not any(mono_divides(lm, m) for lm in self.lead_monos)
            ]
            self._std[d] = got
        return got

    def std_index(self, d):
        got = self._std_index.get(d)
        if got is None:
            got = {m: i for i, m in enumerate(self.std_monomials(d))}
            self._std_index[d] = got
        return got

    def dim_component(self, d):
        return len(self.std_monomials(d)) if d >= 0 else 0

    def var_mult(self, l, mono):
        """nf(x_l * mono) expanded over standard monomials: [(mono', coeff)]."""
        key = (l, mono)
        got = self._var_mult.get(key)
        if got is None:
            m2 = tuple(e + (1 if i == l else 0) for i, e in enumerate(mono))
            if self.is_monomial:
                got = (
                    []
                    if any(mono_divides(lm, m2) for lm in self.lead_monos)
                    else [(m2, self.ring.field.one)]
                )
            else:
                nf = self.normal_form(self.ring.monomial(m2))
                got = [(m, c) for m, c in nf.terms]
            self._var_mult[key] = got
        return got

    def is_artinian(self):
        n = self.ring.ngens
        pure = set()
        for lm in self.lead_monos:
            supp = [i for i, e in enumerate(lm) if e]
            if len(supp) == 1:
                pure.add(supp[0])
            elif len(supp) == 0:
                return True  # unit ideal
        return pure == set(range(n))

    def top_degree(self):
        """Largest degree with a nonzero component; None if not Artinian."""
        if not self.is_artinian():
            return None
        bound = sum(max(lm[i] for lm in self.lead_monos if lm[i]) for i in range(self.ring.ngens))
        top = -1
        for d in range(bound + 1):
            if self.dim_component(d):
                top = d
        return top

    def coordinates(self, p, d):
        """Coordinate dict of nf(p) over the degree-d standard basis."""
        nf = self.normal_form(p)
        idx = self.std_index(d)
        out = {}
        for m, c in nf.terms:
            if mono_deg(m) != d:
                raise ValueError("element not homogeneous of the requested degree")
            out[idx[m]] = c
        return out
