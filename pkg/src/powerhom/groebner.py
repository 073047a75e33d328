"""Groebner and standard bases for ideals and submodules, with syzygies.

The engine works on flat term lists (key, monomial, component, coeff)
sorted descending under an additive-key module order.  Every basis element
carries a transformation tail expressing it over the input generators;
S-pairs that reduce to zero therefore hand back exact syzygies of the
inputs (Schreyer's construction, with the chain criterion retained and the
coprime criterion replaced by direct emission of the Koszul syzygy).
"""

from __future__ import annotations

import contextvars
import heapq
import itertools
from dataclasses import dataclass

from .modules import FreeModule, ModuleElement, as_module_element
from .poly import PolyRing
from .rings import (
    BlockElim,
    FiltrationOrder,
    ModuleOrder,
    SchreyerOrder,
    TermOverPosition,
    mono_coprime,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_one,
    monomials_of_degree,
)


class ResourceLimit(Exception):
    """A degree cap or deadline was hit; the computation is incomplete."""


_DEGREE_CAP = contextvars.ContextVar("powerhom_degree_cap", default=None)


def set_degree_cap(cap):
    """Cap the internal degree of basis completion; None removes the cap.

    Returns a token for reset_degree_cap.  Computations that would need to
    process S-pairs above the cap raise ResourceLimit instead of returning
    partial answers.
    """
    return _DEGREE_CAP.set(cap)


def reset_degree_cap(token):
    _DEGREE_CAP.reset(token)


@dataclass
class BasisSet:
    """A generating set with its order and certification flags."""

    module: FreeModule
    order: ModuleOrder
    elements: list
    is_groebner: bool = False
    is_reduced: bool = False
    is_standard_basis: bool = False

    @property
    def ring(self):
        return self.module.ring

    def polynomials(self):
        """Rank-1 elements as plain polynomials."""
        if self.module.rank != 1:
            raise ValueError("not an ideal basis")
        return [e.coords[0] for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ---------------------------------------------------------------------------
# flat vectors


def _flatten(elem, morder):
    vec = []
    for comp, poly in enumerate(elem.coords):
        for m, c in poly.terms:
            vec.append((morder.key(m, comp), m, comp, c))
    vec.sort(key=lambda t: t[0], reverse=True)
    return vec


def _unflatten(vec, module):
    ring = module.ring
    coords = [{} for _ in range(module.rank)]
    for _, m, comp, c in vec:
        coords[comp][m] = c
    return ModuleElement(module, tuple(ring.from_dict(d) for d in coords))


def _shifted(vec, ukey, umono, c):
    """c * u * vec, still sorted (keys are additive)."""
    if not any(umono):
        return [(k, m, cp, co * c) for (k, m, cp, co) in vec]
    return [
        (tuple(a + b for a, b in zip(k, ukey)), mono_mul(m, umono), cp, co * c)
        for (k, m, cp, co) in vec
    ]


def _sub_merged(f, fi, g, gi):
    """Merge f[fi:] - g[gi:], both sorted descending by key."""
    out = []
    a, b = fi, gi
    nf, ng = len(f), len(g)
    while a < nf and b < ng:
        ka, kb = f[a][0], g[b][0]
        if ka > kb:
            out.append(f[a])
            a += 1
        elif ka < kb:
            t = g[b]
            out.append((t[0], t[1], t[2], -t[3]))
            b += 1
        else:
            c = f[a][3] - g[b][3]
            if c:
                out.append((ka, f[a][1], f[a][2], c))
            a += 1
            b += 1
    if a < nf:
        out.extend(f[a:])
    while b < ng:
        t = g[b]
        out.append((t[0], t[1], t[2], -t[3]))
        b += 1
    return out


def _tail_sub(T, G, c, umono):
    """T - c * u * G on transformation tails (dicts over (mono, input index))."""
    out = dict(T)
    shift = any(umono)
    for (m, i), a in G.items():
        key = (mono_mul(m, umono), i) if shift else (m, i)
        d = c * a
        s = out.get(key)
        s = -d if s is None else s - d
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


class _Elem:
    __slots__ = ("idx", "fvec", "tail", "lead_mono", "lead_comp", "sugar", "alive")

    def __init__(self, idx, fvec, tail, sugar):
        self.idx = idx
        self.fvec = fvec
        self.tail = tail
        self.lead_mono = fvec[0][1]
        self.lead_comp = fvec[0][2]
        self.sugar = sugar
        self.alive = True


class _Store:
    def __init__(self):
        self.elems = []
        self.by_comp = {}

    def add(self, e):
        self.elems.append(e)
        self.by_comp.setdefault(e.lead_comp, []).append(e)

    def find_reducer(self, mono, comp, skip=None):
        for e in self.by_comp.get(comp, ()):
            if e.alive and e is not skip and mono_divides(e.lead_mono, mono):
                return e
        return None


def _reduce_vec(vec, tail, store, morder, *, quotients=None, skip=None):
    """Full normal form of (vec, tail); tail tracks the certificate."""
    head = []
    work = vec
    wi = 0
    sugar_bump = 0
    while wi < len(work):
        key, mono, comp, coeff = work[wi]
        red = store.find_reducer(mono, comp, skip=skip)
        if red is None:
            head.append(work[wi])
            wi += 1
            continue
        u = mono_div(mono, red.lead_mono)
        uk = morder.scalar_key(u)
        g = _shifted(red.fvec, uk, u, coeff)
        # all head terms still exceed every work term after the merge
        work = _sub_merged(work, wi + 1, g, 1)
        wi = 0
        if tail is not None and red.tail:
            tail = _tail_sub(tail, red.tail, coeff, u)
        if quotients is not None:
            quotients.append((red.idx, coeff, u))
        sugar_bump = max(sugar_bump, red.sugar + mono_deg(u))
    head.extend(work[wi:])
    return head, tail, sugar_bump


def _koszul_syzygy(a, b):
    """Tail of the syzygy b*a - a*b for rank-1 elements a, b."""
    T = {}
    for (_, m, _, c) in b.fvec:
        for (m2, i), c2 in a.tail.items():
            key = (mono_mul(m, m2), i)
            s = T.get(key)
            s = c * c2 if s is None else s + c * c2
            if s:
                T[key] = s
            elif key in T:
                del T[key]
    for (_, m, _, c) in a.fvec:
        for (m2, i), c2 in b.tail.items():
            key = (mono_mul(m, m2), i)
            s = T.get(key)
            s = -(c * c2) if s is None else s - c * c2
            if s:
                T[key] = s
            elif key in T:
                del T[key]
    return T


def _engine(cols_flat, morder, ring, *, degrees=None, want_syz=False,
            interreduce=True, degree_cap=None, rank1=False):
    """Buchberger completion; returns (store, collected syzygy tails)."""
    one = ring.field.one
    if degree_cap is None:
        degree_cap = _DEGREE_CAP.get()
    store = _Store()
    syz = []
    heap = []
    done = set()

    def pair_with_all(e):
        for other in store.by_comp.get(e.lead_comp, ()):
            if other is e:
                continue
            i, j = other.idx, e.idx
            if rank1 and mono_coprime(other.lead_mono, e.lead_mono):
                done.add((i, j))
                if want_syz:
                    syz.append(_koszul_syzygy(other, e))
                continue
            lcm = mono_lcm(other.lead_mono, e.lead_mono)
            s = max(
                other.sugar + mono_deg(lcm) - mono_deg(other.lead_mono),
                e.sugar + mono_deg(lcm) - mono_deg(e.lead_mono),
            )
            heapq.heappush(heap, (s, morder.key(lcm, e.lead_comp), i, j))

    def add_elem(vec, tail, sugar):
        lc = vec[0][3]
        if lc != one:
            vec = [(k, m, cp, c / lc) for (k, m, cp, c) in vec]
            if tail is not None:
                tail = {k: c / lc for k, c in tail.items()}
        e = _Elem(len(store.elems), vec, tail, sugar)
        pair_with_all(e)
        store.add(e)
        return e

    for i, vec in enumerate(cols_flat):
        tail = {(mono_one(ring.ngens), i): one} if want_syz else None
        if not vec:
            if want_syz:
                syz.append(tail)
            continue
        sugar = max(
            mono_deg(m) + (degrees[cp] if degrees else 0) for (_, m, cp, _) in vec
        )
        add_elem(vec, tail, sugar)

    lcm_cache = {}

    def lcm_of(i, j):
        key = (i, j) if i < j else (j, i)
        got = lcm_cache.get(key)
        if got is None:
            got = mono_lcm(store.elems[i].lead_mono, store.elems[j].lead_mono)
            lcm_cache[key] = got
        return got

    while heap:
        sug, lk, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        if degree_cap is not None and sug > degree_cap:
            raise ResourceLimit(
                f"S-pair of degree {sug} exceeds the degree cap {degree_cap}"
            )
        a, b = store.elems[i], store.elems[j]
        lcm = lcm_of(i, j)
        # chain criterion: safe for syzygy collection (the skipped relation
        # is a combination of the two retained ones)
        skipped = False
        for e in store.by_comp.get(a.lead_comp, ()):
            k = e.idx
            if k in (i, j) or not mono_divides(e.lead_mono, lcm):
                continue
            pik = (i, k) if i < k else (k, i)
            pjk = (j, k) if j < k else (k, j)
            if pik in done and pjk in done and lcm_of(i, k) != lcm and lcm_of(j, k) != lcm:
                skipped = True
                break
        if skipped:
            continue
        ua = mono_div(lcm, a.lead_mono)
        ub = mono_div(lcm, b.lead_mono)
        fa = _shifted(a.fvec, morder.scalar_key(ua), ua, one)
        fb = _shifted(b.fvec, morder.scalar_key(ub), ub, one)
        vec = _sub_merged(fa, 1, fb, 1)
        tail = None
        if want_syz:
            ta = a.tail
            if any(ua):
                ta = {(mono_mul(m, ua), t): c for (m, t), c in ta.items()}
            tail = _tail_sub(ta, b.tail, one, ub)
        vec, tail, bump = _reduce_vec(vec, tail, store, morder)
        if vec:
            add_elem(vec, tail, max(sug, bump))
        elif want_syz and tail:
            syz.append(tail)

    if interreduce:
        _autoreduce(store, morder)
    return store, syz


def _autoreduce(store, morder):
    # drop elements whose lead is divisible by another live lead
    for e in store.elems:
        if not e.alive:
            continue
        for other in store.by_comp.get(e.lead_comp, ()):
            if other is e or not other.alive:
                continue
            if mono_divides(other.lead_mono, e.lead_mono):
                if other.lead_mono == e.lead_mono and other.idx > e.idx:
                    continue
                e.alive = False
                break
    # tail-reduce survivors, smallest lead first so reducers are final
    live = [e for e in store.elems if e.alive]
    live.sort(key=lambda e: morder.key(e.lead_mono, e.lead_comp))
    for e in live:
        vec, tail, _ = _reduce_vec(e.fvec[1:], e.tail, store, morder, skip=e)
        e.fvec = [e.fvec[0]] + vec
        e.tail = tail


def _final_elements(store, morder, module):
    live = [e for e in store.elems if e.alive]
    live.sort(key=lambda e: morder.key(e.lead_mono, e.lead_comp), reverse=True)
    return [_unflatten(e.fvec, module) for e in live]


# ---------------------------------------------------------------------------
# public operations


def _as_columns(gens, module=None):
    """Normalize a generator list to ModuleElements over one free module."""
    gens = list(gens)
    if module is None:
        for g in gens:
            if isinstance(g, ModuleElement):
                module = g.module
                break
        else:
            if not gens:
                raise ValueError("cannot infer the ambient module of nothing")
            module = FreeModule(gens[0].ring, (0,))
    cols = [as_module_element(g, module) for g in gens]
    for c in cols:
        if c.module != module:
            raise ValueError("ambient module mismatch")
    return cols, module


def default_module_order(module):
    return TermOverPosition(module.ring.order)


def buchberger(gens, *, module=None, order=None, degree_cap=None):
    """Reduced Groebner basis of the ideal or submodule generated by `gens`.

    The order must be global; filtration orders go through standard_basis.
    Empty input returns an empty basis.
    """
    if isinstance(gens, BasisSet):
        module = gens.module
        gens = gens.elements
    cols, module = _as_columns(gens, module)
    if order is None:
        order = default_module_order(module)
    if not order.is_global:
        raise ValueError("non-global order: use standard_basis")
    cols = [c for c in cols if not c.is_zero()]
    flats = [_flatten(c, order) for c in cols]
    store, _ = _engine(
        flats, order, module.ring, degrees=module.degrees,
        rank1=(module.rank == 1), degree_cap=degree_cap,
    )
    return BasisSet(module, order, _final_elements(store, order, module),
                    is_groebner=True, is_reduced=True)


def standard_basis(gens, module=None):
    """Standard basis under the filtration order (lower coefficient degree leads).

    Requires internally homogeneous generators; the leading forms of the
    result generate the leading-form module of the input submodule.
    """
    cols, module = _as_columns(gens, module)
    cols = [c for c in cols if not c.is_zero()]
    for c in cols:
        if not c.is_homogeneous():
            raise ValueError("standard_basis needs internally homogeneous input")
    order = FiltrationOrder(module.ring.ngens)
    flats = [_flatten(c, order) for c in cols]
    store, _ = _engine(flats, order, module.ring, degrees=module.degrees,
                       rank1=False)
    return BasisSet(module, order, _final_elements(store, order, module),
                    is_groebner=True, is_reduced=True, is_standard_basis=True)


def reduce(v, basis, *, with_quotients=True):
    """Normal form of v against a (Groebner or standard) basis.

    Returns (normal_form, quotients) with v = sum(quotients * basis) + nf.
    """
    if not isinstance(basis, BasisSet):
        raise TypeError("reduce needs a BasisSet")
    v = as_module_element(v, basis.module)
    if v.module != basis.module:
        raise ValueError("order/module mismatch between element and basis")
    order = basis.order
    ring = basis.ring
    store = _Store()
    lcs = []
    for e in basis.elements:
        vec = _flatten(e, order)
        lcs.append(vec[0][3])
        monic = [(k, m, cp, c / vec[0][3]) for (k, m, cp, c) in vec]
        store.add(_Elem(len(store.elems), monic, None, 0))
    quots = []
    vec, _, _ = _reduce_vec(_flatten(v, order), None, store, order,
                            quotients=quots if with_quotients else None)
    nf = _unflatten(vec, basis.module)
    if not with_quotients:
        return nf, None
    qpolys = [ring.zero() for _ in basis.elements]
    for idx, c, u in quots:
        qpolys[idx] = qpolys[idx] + ring.monomial(u, c / lcs[idx])
    return nf, qpolys


def in_submodule(v, basis):
    nf, _ = reduce(v, basis, with_quotients=False)
    return nf.is_zero()


def syzygy_basis(columns, *, module=None, order=None):
    """Generators of the syzygy module of the given columns.

    Output elements live in a free module whose basis degrees are the
    internal degrees of the columns; entries sorted under the induced
    Schreyer order for reproducibility.
    """
    cols, module = _as_columns(columns, module)
    if order is None:
        order = default_module_order(module)
    flats = [_flatten(c, order) for c in cols]
    degs = []
    for c, f in zip(cols, flats):
        d = c.internal_degree() if not c.is_zero() else None
        if d is None:
            d = max((mono_deg(m) + module.degrees[cp] for (_, m, cp, _) in f), default=0)
        degs.append(d)
    store, syz = _engine(flats, order, module.ring, degrees=module.degrees,
                         want_syz=True, interreduce=False,
                         rank1=(module.rank == 1))
    syzmod = FreeModule(module.ring, degs)
    labels = []
    for f in flats:
        labels.append((f[0][1], f[0][2]) if f else (mono_one(module.ring.ngens), 0))
    sorder = SchreyerOrder(order, labels)
    out = []
    for tail in syz:
        coords = [{} for _ in cols]
        for (m, i), c in tail.items():
            coords[i][m] = c
        elem = ModuleElement(
            syzmod, tuple(module.ring.from_dict(d) for d in coords)
        )
        out.append(elem)
    out.sort(key=lambda e: _flatten(e, sorder)[0][0], reverse=True)
    return out


def module_intersection(B1, B2):
    """Generators of N1 cap N2 via a tag variable and elimination."""
    cols1, mod1 = _as_columns(B1.elements if isinstance(B1, BasisSet) else B1)
    cols2, mod2 = _as_columns(B2.elements if isinstance(B2, BasisSet) else B2)
    if mod1.ring != mod2.ring or mod1.rank != mod2.rank:
        raise ValueError("ambient module mismatch")
    ring = mod1.ring
    n = ring.ngens
    tag = "@t"
    big = PolyRing(ring.names + (tag,), ring.field, BlockElim(n + 1, (n,)))
    bigmod = FreeModule(big, mod1.degrees)
    t = big.var(n)

    def lift(elem, factor):
        coords = []
        for p in elem.coords:
            q = big.from_dict({m + (0,): c for m, c in p.terms})
            coords.append(q * factor)
        return ModuleElement(bigmod, tuple(coords))

    cols = [lift(g, t) for g in cols1] + [lift(h, 1 - t) for h in cols2]
    gb = buchberger(cols, module=bigmod)
    out = []
    for e in gb.elements:
        if all(all(m[n] == 0 for m, _ in p.terms) for p in e.coords):
            coords = tuple(
                ring.from_dict({m[:n]: c for m, c in p.terms}) for p in e.coords
            )
            out.append(ModuleElement(mod1, coords))
    return BasisSet(mod1, default_module_order(mod1), out,
                    is_groebner=True, is_reduced=True)


def eliminate(basis, drop):
    """Generators of I intersected with the subring omitting `drop` variables."""
    gens = basis.polynomials() if isinstance(basis, BasisSet) else list(basis)
    if not gens:
        raise ValueError("eliminate needs at least one generator")
    ring = gens[0].ring
    drop_idx = sorted(ring.names.index(v) if isinstance(v, str) else v for v in drop)
    if not drop_idx:
        return buchberger(gens)
    elim_ring = ring.with_order(BlockElim(ring.ngens, drop_idx))
    lifted = [elim_ring.coerce(g) for g in gens]
    gb = buchberger(lifted, module=FreeModule(elim_ring, (0,)))
    keep = [i for i in range(ring.ngens) if i not in set(drop_idx)]
    small = PolyRing(tuple(ring.names[i] for i in keep), ring.field)
    out = []
    for e in gb.elements:
        p = e.coords[0]
        if all(all(m[i] == 0 for i in drop_idx) for m, _ in p.terms):
            out.append(small.from_dict({tuple(m[i] for i in keep): c for m, c in p.terms}))
    mod = FreeModule(small, (0,))
    return BasisSet(mod, default_module_order(mod),
                    [as_module_element(p, mod) for p in out],
                    is_groebner=True, is_reduced=True)


def kernel_of_ring_map(targets, source_names, mode="fiber"):
    """Kernel of a polynomial-algebra map.

    fiber mode: kernel of K[y] -> K[f_1,...,f_m], y_i -> f_i.
    rees mode: kernel of R[y] -> Rees algebra, y_i -> f_i*t, obtained by
    eliminating the auxiliary variable t from (y_i - f_i*t).
    """
    targets = list(targets)
    if not targets:
        raise ValueError("no targets")
    ring = targets[0].ring
    source_names = tuple(source_names)
    if set(source_names) & set(ring.names):
        raise ValueError("source names collide with ring variables")
    n, m = ring.ngens, len(source_names)
    if mode == "fiber":
        big = PolyRing(ring.names + source_names, ring.field)
        gens = []
        for i, f in enumerate(targets):
            y = big.var(n + i)
            fi = big.from_dict({mo + (0,) * m: c for mo, c in f.terms})
            gens.append(y - fi)
        return eliminate(gens, list(range(n)))
    if mode == "rees":
        tname = "@t"
        big = PolyRing(ring.names + source_names + (tname,), ring.field)
        t = big.var(n + m)
        gens = []
        for i, f in enumerate(targets):
            y = big.var(n + i)
            fi = big.from_dict({mo + (0,) * (m + 1): c for mo, c in f.terms})
            gens.append(y - fi * t)
        return eliminate(gens, [n + m])
    raise ValueError(f"unknown mode {mode!r}")


def _membership_basis(cols, module):
    return buchberger(cols, module=module) if cols else None


def minimal_generators(gens, *, module=None, grading="internal"):
    """Prune homogeneous generators to a minimal generating set.

    grading selects the degree used for the Nakayama ordering: the internal
    degree, or the filtration (coefficient) degree for leading-form data.
    The degree multiset of the result is an invariant of the submodule.
    """
    cols, module = _as_columns(gens, module)
    cols = [c for c in cols if not c.is_zero()]
    if not cols:
        return []
    if grading == "internal":
        for c in cols:
            if not c.is_homogeneous():
                raise ValueError("minimal_generators needs homogeneous input")
        degof = lambda c: c.internal_degree()
    elif grading == "filtration":
        for c in cols:
            if not c.is_filtration_homogeneous():
                raise ValueError("generators must be filtration-homogeneous")
        degof = lambda c: c.filtration_order()
    else:
        raise ValueError(f"unknown grading {grading!r}")

    # dedupe exactly
    seen = set()
    uniq = []
    for c in cols:
        key = (c.module.degrees, c.coords)
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    cols = uniq

    # monomial ideals: divisibility pruning
    if module.rank == 1 and all(len(c.coords[0].terms) == 1 for c in cols):
        monos = [c.coords[0].lead_monomial() for c in cols]
        keep = []
        for i, m in enumerate(monos):
            if any(j != i and mono_divides(monos[j], m) and
                   (monos[j] != m or j < i) for j in range(len(monos))):
                continue
            keep.append(cols[i])
        keep.sort(key=degof)
        return keep

    cols.sort(key=degof)
    kept = list(cols)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = kept[:i] + kept[i + 1:]
            if not others:
                continue
            gb = buchberger(others, module=module)
            if in_submodule(kept[i], gb):
                kept.pop(i)
                changed = True
                break
    return kept


def krull_dimension(basis):
    """Krull dimension of the quotient by the ideal; -1 for the unit ideal."""
    if isinstance(basis, BasisSet):
        if not basis.is_groebner:
            basis = buchberger(basis.elements, module=basis.module)
    else:
        basis = buchberger(basis)
    ring = basis.ring
    n = ring.ngens
    leads = []
    for e in basis.elements:
        p = e.coords[0]
        if p.is_zero():
            continue
        lm = p.lead_monomial()
        if not any(lm):
            return -1
        leads.append(frozenset(i for i, x in enumerate(lm) if x))
    if not leads:
        return n
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            sset = set(S)
            if all(not supp <= sset for supp in leads):
                return size
    return 0


def graded_component_dimension(gens, d, *, module=None):
    """dim_K of the degree-d part of the submodule generated by `gens`.

    Independent of any Groebner machinery: spans monomial multiples with
    exact row reduction (used as a cross-check oracle).
    """
    from .linalg import EchelonSpace

    cols, module = _as_columns(gens, module)
    ring = module.ring
    space = EchelonSpace()
    for g in cols:
        if g.is_zero():
            continue
        gdeg = g.internal_degree()
        if gdeg is None:
            raise ValueError("need homogeneous generators")
        if d < gdeg:
            continue
        for u in monomials_of_degree(ring.ngens, d - gdeg):
            vec = {}
            for comp, p in enumerate(g.coords):
                for m, c in p.terms:
                    vec[(comp, mono_mul(m, u))] = c
            space.add(vec)
    return space.dim


def spair_normal_forms(basis):
    """Normal forms of every S-pair of a basis; all zero certifies a GB."""
    out = []
    order = basis.order
    elems = basis.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            fi, fj = _flatten(elems[i], order), _flatten(elems[j], order)
            if not fi or not fj or fi[0][2] != fj[0][2]:
                continue
            lcm = mono_lcm(fi[0][1], fj[0][1])
            ui, uj = mono_div(lcm, fi[0][1]), mono_div(lcm, fj[0][1])
            one = basis.ring.field.one
            a = _shifted(fi, order.scalar_key(ui), ui, one / fi[0][3])
            b = _shifted(fj, order.scalar_key(uj), uj, one / fj[0][3])
            s = _sub_merged(a, 1, b, 1)
            nf, _ = reduce(_unflatten(s, basis.module), basis, with_quotients=False)
            out.append(nf)
    return out
