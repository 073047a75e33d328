"""Artin-Rees numbers of graded submodules and syzygy profiles.

For a graded submodule N of a free module F, the Artin-Rees number
rho(N, F) is the least r with N \\cap m^i F = m^{i-r} (N \\cap m^r F) for
all i >= r.  It equals the top filtration degree of a minimal generator of
the leading-form module N*, which is how artin_rees_number computes it;
artin_rees_oracle instead checks the defining intersections directly and
serves as an independent brute-force cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import (
    buchberger,
    in_submodule,
    minimal_generators,
    standard_basis,
)
from .modules import FreeModule, as_module_element, leading_form
from .resolutions import betti_diagram, minimal_free_resolution, regularity_profile
from .rings import monomials_of_degree


@dataclass
class LeadingFormModule:
    """Minimal filtration-homogeneous generators of N* with their degrees."""

    module: FreeModule
    generators: list
    degrees: list
    preimages: list  # standard-basis elements whose leading forms were kept


@dataclass
class ArtinReesResult:
    rho: int
    degrees: list  # multiset of minimal N*-generator filtration degrees
    witness: object  # a minimal generator attaining rho (None for N = 0)


def _normalize(gens, module):
    cols = [as_module_element(g, module) for g in gens]
    if module is None and cols:
        module = cols[0].module
    cols = [c for c in cols if not c.is_zero()]
    for c in cols:
        if not c.is_homogeneous():
            raise ValueError("Artin-Rees computations need homogeneous input")
    return cols, module


def leading_form_module(gens, module=None):
    """Generators of the leading-form module N* inside gr(F) = F.

    Standard-basis completion under the filtration order, then leading
    forms, then pruning to minimal generators in the filtration grading.
    """
    cols, module = _normalize(gens, module)
    if not cols:
        return LeadingFormModule(module, [], [], [])
    sb = standard_basis(cols, module)
    pairs = [(leading_form(b), b) for b in sb.elements]
    kept = minimal_generators([lf for lf, _ in pairs], module=module,
                              grading="filtration")
    preimages = []
    used = set()
    for g in kept:
        for idx, (lf, b) in enumerate(pairs):
            if idx not in used and lf == g:
                preimages.append(b)
                used.add(idx)
                break
    return LeadingFormModule(
        module, kept, [g.filtration_order() for g in kept], preimages
    )


def artin_rees_number(gens, module=None, *, check_preimages=True):
    """rho(N, F) as the top filtration degree of a minimal N*-generator.

    With check_preimages, also certifies that the preimages of the minimal
    N*-generators generate N (membership of every original generator).
    """
    cols, module = _normalize(gens, module)
    if not cols:
        return ArtinReesResult(0, [], None)
    star = leading_form_module(cols, module)
    rho = max(star.degrees)
    witness = next(g for g, d in zip(star.generators, star.degrees) if d == rho)
    if check_preimages:
        gb = buchberger(star.preimages, module=module)
        for g in cols:
            if not in_submodule(g, gb):
                raise AssertionError("leading-form preimages fail to generate N")
    return ArtinReesResult(rho, sorted(star.degrees), witness)


# ---------------------------------------------------------------------------
# brute-force oracle straight from the definition


def power_module_generators(module, i):
    """Generators of m^i F: monomials of degree i times each basis vector."""
    ring = module.ring
    if i <= 0:
        return [module.basis_element(j) for j in range(module.rank)]
    out = []
    for j in range(module.rank):
        for m in monomials_of_degree(ring.ngens, i):
            out.append(module.basis_element(j, ring.monomial(m)))
    return out


def scale_by_power(gens, module, e):
    """Generators of m^e * <gens>."""
    if e <= 0:
        return list(gens)
    ring = module.ring
    out = []
    for g in gens:
        for m in monomials_of_degree(ring.ngens, e):
            out.append(g * ring.monomial(m))
    return out


def _submodule_leq(gens, gb_other):
    return all(in_submodule(g, gb_other) for g in gens)


def artin_rees_oracle(gens, module=None, margin=3):
    """Least r whose defining window holds, plus a failure certificate.

    Checks N cap m^i F = m^{i-r} (N cap m^r F) for every i in (r, r+margin]
    using module intersections; beyond the window equality is automatic
    once r is at least the true Artin-Rees number.  The certificate records
    the index and witness that disqualified r - 1.
    """
    from .groebner import module_intersection

    if margin < 1:
        raise ValueError("margin must be at least 1")
    cols, module = _normalize(gens, module)
    if not cols:
        return 0, {"r": 0, "note": "zero submodule"}
    ngb = buchberger(cols, module=module)

    inter_cache = {}

    def inter(i):
        """Reduced GB of N cap m^i F."""
        got = inter_cache.get(i)
        if got is None:
            if i <= 0:
                got = ngb
            else:
                mi = buchberger(power_module_generators(module, i), module=module)
                got = module_intersection(ngb, mi)
                got = buchberger(got.elements, module=module)
            inter_cache[i] = got
        return got

    def window_holds(r):
        """Equality at each i in (r, r+margin]; returns (ok, failure)."""
        base = inter(r).elements
        for i in range(r + 1, r + margin + 1):
            lhs = inter(i)
            rhs_gens = scale_by_power(base, module, i - r)
            rhs = buchberger(rhs_gens, module=module) if rhs_gens else None
            if rhs is None or not _submodule_leq(lhs.elements, rhs):
                witness = next(
                    (g for g in lhs.elements
                     if rhs is None or not in_submodule(g, rhs)),
                    None,
                )
                return False, (i, witness)
            if not _submodule_leq(rhs.elements, lhs):
                raise AssertionError("m^{i-r}(N cap m^r F) escaped N cap m^i F")
        return True, None

    r = 0
    last_failure = None
    while True:
        ok, failure = window_holds(r)
        if ok:
            cert = {"r": r}
            if r > 0:
                i, witness = last_failure
                cert["failed_r"] = r - 1
                cert["failed_at"] = i
                cert["witness"] = str(witness)
            return r, cert
        last_failure = failure
        r += 1
        if r > 200:
            raise RuntimeError("oracle failed to stabilize")


# ---------------------------------------------------------------------------
# syzygy profiles and the regularity comparison


def rho_profile(gens, module=None, *, as_quotient=False, resolution=None):
    """(rho_0, rho_1, ..., rho_p) along a minimal free resolution.

    rho_0 is the maximal degree of a minimal generator; rho_j for j >= 1 is
    the Artin-Rees number of the j-th syzygy module inside F_{j-1}.
    """
    if resolution is None:
        cols, module = _normalize(gens, module)
        resolution = minimal_free_resolution(cols, module=module,
                                             as_quotient=as_quotient)
    out = [max(resolution.degrees[0], default=0)]
    for j in range(1, resolution.length + 1):
        cols_j = resolution.columns_of(j)
        out.append(artin_rees_number(cols_j, check_preimages=False).rho)
    return out


@dataclass
class ComparisonReport:
    reg_profile: list
    rho_profile: list
    bounds: list  # sum_{k<=j} rho_k - j
    satisfied: list

    @property
    def all_satisfied(self):
        return all(self.satisfied)


def comparison_check(gens, module=None, *, as_quotient=False):
    """Check reg_j(M) <= rho_0 + ... + rho_j - j for every j.

    At j = 0 the two sides agree by definition, which doubles as a sanity
    anchor for the whole computation.
    """
    cols, module = _normalize(gens, module)
    res = minimal_free_resolution(cols, module=module, as_quotient=as_quotient)
    regs, _ = regularity_profile(betti_diagram(res))
    rhos = rho_profile(cols, module, resolution=res)
    bounds, sat = [], []
    acc = 0
    for j, rho in enumerate(rhos):
        acc += rho
        bounds.append(acc - j)
        rj = regs[j] if j < len(regs) else None
        sat.append(rj is None or rj <= bounds[-1])
    return ComparisonReport(regs, rhos, bounds, sat)
