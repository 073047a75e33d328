"""Minimal graded free resolutions, Betti diagrams, regularity profiles.

Over the polynomial ring: iterated Schreyer syzygies followed by unit
elimination (invertible graded row/column operations with a deterministic
pivot choice), so redundant generators never survive a stage.

Over a quotient ring A = R/I: syzygies of a step are computed by lifting
the columns to R, augmenting with (defining-basis element) * (each basis
vector), taking R-syzygies, projecting back, and pruning to a minimal
generating set by exact per-degree linear algebra over A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import syzygy_basis
from .linalg import EchelonSpace
from .modules import FreeModule, ModuleElement, as_module_element
from .poly import Polynomial
from .quotient import QuotientRingCtx


@dataclass
class FreeResolution:
    """A chain of graded free modules with differentials d_j : F_j -> F_{j-1}.

    diffs[j-1] is the matrix of d_j stored as a list of columns; column c
    lists the coordinates of the image of the c-th basis vector of F_j over
    the basis of F_{j-1}.  degrees[j] are the internal degrees of the basis
    of F_j.  For a module (non-quotient) resolution, `augmentation` holds
    the images of the F_0 basis inside the ambient free module.
    """

    base: object  # PolyRing or QuotientRingCtx
    degrees: list
    diffs: list
    minimal: bool = True
    complete: bool = True
    augmentation: list | None = None
    ambient: FreeModule | None = None

    @property
    def ring(self):
        return self.base.ring if isinstance(self.base, QuotientRingCtx) else self.base

    @property
    def length(self):
        return len(self.degrees) - 1

    def module_at(self, j):
        return FreeModule(self.ring, self.degrees[j])

    def rank(self, j):
        return len(self.degrees[j]) if j <= self.length else 0

    def total_betti(self):
        return [len(d) for d in self.degrees]

    def columns_of(self, j):
        """Columns of d_j as elements of F_{j-1} (j >= 1)."""
        target = self.module_at(j - 1)
        return [ModuleElement(target, tuple(col)) for col in self.diffs[j - 1]]

    def _nf(self, p):
        if isinstance(self.base, QuotientRingCtx):
            return self.base.normal_form(p)
        return p

    def verify_complex(self):
        """Assert d_j ( d_{j+1} ) = 0 exactly (normal forms over a quotient)."""
        for j in range(1, self.length):
            prev = self.diffs[j - 1]
            rows_out = len(self.degrees[j - 1])
            for col in self.diffs[j]:
                acc = [self.ring.zero()] * rows_out
                for r, entry in enumerate(col):
                    if entry.is_zero():
                        continue
                    for rr, e2 in enumerate(prev[r]):
                        acc[rr] = acc[rr] + e2 * entry
                for v in acc:
                    if not self._nf(v).is_zero():
                        raise AssertionError("differential composite is nonzero")
        return True

    def verify_minimal(self):
        for mat in self.diffs:
            for col in mat:
                for entry in col:
                    if entry.constant_coeff():
                        raise AssertionError("unit entry in a minimal resolution")
        return True


@dataclass
class BettiDiagram:
    """Graded Betti numbers beta_{j,k}: shift-k summand counts in step j."""

    data: dict  # (j, k) -> multiplicity

    @classmethod
    def from_resolution(cls, res):
        if not res.minimal:
            raise ValueError("Betti diagram requires a minimal resolution")
        data = {}
        for j, degs in enumerate(res.degrees):
            for k in degs:
                data[(j, k)] = data.get((j, k), 0) + 1
        return cls(data)

    @property
    def homological_length(self):
        return max((j for j, _ in self.data), default=0)

    def total(self, j):
        return sum(v for (jj, _), v in self.data.items() if jj == j)

    def totals(self):
        return [self.total(j) for j in range(self.homological_length + 1)]

    def entry(self, j, k):
        return self.data.get((j, k), 0)

    def max_shift(self):
        return max((k for _, k in self.data), default=0)

    def rows(self):
        """Macaulay-style rows keyed by k - j."""
        out = {}
        for (j, k), v in self.data.items():
            out.setdefault(k - j, {})[j] = v
        return out

    def pretty(self):
        p = self.homological_length
        lines = ["      " + "".join(f"{j:>6}" for j in range(p + 1))]
        for slope in sorted(self.rows()):
            row = self.rows()[slope]
            cells = "".join(f"{row.get(j, '.'):>6}" for j in range(p + 1))
            lines.append(f"{slope:>5}:" + cells)
        lines.append("total:" + "".join(f"{self.total(j):>6}" for j in range(p + 1)))
        return "\n".join(lines)


def betti_diagram(res):
    return BettiDiagram.from_resolution(res)


def regularity_profile(b):
    """(reg_0, ..., reg_p, reg) with reg_j = max{k - j : beta_{jk} != 0}."""
    if isinstance(b, FreeResolution):
        b = BettiDiagram.from_resolution(b)
    p = b.homological_length
    regs = []
    for j in range(p + 1):
        ks = [k for (jj, k), v in b.data.items() if jj == j and v]
        regs.append(max(k - j for k in ks) if ks else None)
    present = [r for r in regs if r is not None]
    return regs, max(present) if present else 0


# ---------------------------------------------------------------------------
# polynomial-ring resolutions


def _matrix_of(columns, target_rank):
    return [list(col.coords) for col in columns]


def _unit_entry(p):
    return (not p.is_zero()) and p.is_unit_constant()


def _eliminate_units(mats, degs, aug, j, ring):
    """Cancel split summands revealed by unit entries of mats[j].

    mats[j] maps F_{j+1} -> F_j.  Row operations on F_j cascade into
    mats[j-1] (or the augmentation when j == 0); column operations on
    F_{j+1} have no forward matrix to touch because mats[j] is the last
    stage built so far.
    """
    while True:
        mat = mats[j]
        pivot = None
        for c, col in enumerate(mat):
            for r, entry in enumerate(col):
                if _unit_entry(entry):
                    if pivot is None or (r, c) < pivot:
                        pivot = (r, c)
        if pivot is None:
            return
        r, c = pivot
        alpha = mat[c][r].lead_coeff()
        # clear row r from the other columns
        for c2, col in enumerate(mat):
            if c2 == c or col[r].is_zero():
                continue
            lam = col[r] * (ring.field.one / alpha)
            mat[c2] = [a - lam * b for a, b in zip(col, mat[c])]
        # row operations clearing column c cascade backwards
        prev = mats[j - 1] if j >= 1 else aug
        for r2 in range(len(mat[c])):
            if r2 == r or mat[c][r2].is_zero():
                continue
            mu = mat[c][r2] * (ring.field.one / alpha)
            if prev is not None:
                prev[r] = [a + mu * b for a, b in zip(prev[r], prev[r2])]
        # delete basis c of F_{j+1} and basis r of F_j
        del mat[c]
        degs[j + 1] = degs[j + 1][:c] + degs[j + 1][c + 1:]
        for col in mat:
            del col[r]
        if prev is not None:
            del prev[r]
        degs[j] = degs[j][:r] + degs[j][r + 1:]
        # drop columns that became zero
        keep = [i for i, col in enumerate(mat) if any(not e.is_zero() for e in col)]
        if len(keep) != len(mat):
            mats[j] = [mat[i] for i in keep]
            degs[j + 1] = tuple(degs[j + 1][i] for i in keep)


def minimal_free_resolution(gens, *, module=None, as_quotient=False, length_cap=None):
    """Minimal graded free resolution over the polynomial ring.

    With as_quotient=False the module resolved is the submodule generated
    by `gens` inside its ambient free module; with as_quotient=True it is
    the cokernel (ambient modulo the submodule).  Input must be homogeneous.
    """
    cols = [as_module_element(g, module) for g in gens]
    cols = [c for c in cols if not c.is_zero()]
    if not cols and module is None:
        raise ValueError("nothing to resolve")
    ambient = module if module is not None else cols[0].module
    ring = ambient.ring
    for c in cols:
        if c.module != ambient:
            raise ValueError("generators live in different modules")
        if not c.is_homogeneous():
            raise ValueError("resolution needs homogeneous input")

    if as_quotient:
        degs = [ambient.degrees, tuple(c.internal_degree() for c in cols)]
        mats = [_matrix_of(cols, ambient.rank)]
        aug = None
        _eliminate_units(mats, degs, aug, 0, ring)
        cur = [ModuleElement(FreeModule(ring, degs[0]), tuple(col)) for col in mats[0]]
    else:
        if not cols:
            return FreeResolution(ring, [()], [], ambient=ambient, augmentation=[])
        degs = [tuple(c.internal_degree() for c in cols)]
        mats = []
        aug = [list(c.coords) for c in cols]  # aug[i] = coords of generator i
        cur = cols

    hard_cap = len(degs) + ring.ngens + 4
    while cur:
        if length_cap is not None and len(degs) - 1 >= length_cap:
            return FreeResolution(
                ring, degs, mats, minimal=True, complete=False,
                augmentation=aug, ambient=ambient if not as_quotient else None,
            )
        if len(degs) > hard_cap:
            raise RuntimeError("resolution failed to terminate")
        syz = syzygy_basis(cur)
        if not syz:
            break
        degs.append(tuple(s.internal_degree() for s in syz))
        mats.append([list(s.coords) for s in syz])
        _eliminate_units(mats, degs, aug, len(mats) - 1, ring)
        src = FreeModule(ring, degs[-2])
        cur = [ModuleElement(src, tuple(col)) for col in mats[-1]]

    while len(degs) > 1 and degs[-1] == ():
        degs.pop()
        mats.pop()

    res = FreeResolution(
        ring, degs, mats, minimal=True, complete=True,
        augmentation=aug, ambient=ambient if not as_quotient else None,
    )
    res.verify_minimal()
    return res


def resolve_ideal(gens, *, length_cap=None):
    """Resolution of the ideal generated by `gens` as a module."""
    return minimal_free_resolution(gens, length_cap=length_cap)


def resolve_quotient_by_ideal(gens, *, length_cap=None):
    """Resolution of R/(gens)."""
    gens = list(gens)
    ring = gens[0].ring if gens else None
    mod = FreeModule(ring, (0,))
    return minimal_free_resolution(gens, module=mod, as_quotient=True,
                                   length_cap=length_cap)


# ---------------------------------------------------------------------------
# quotient-ring resolutions (truncated, minimal)


def _keyvec(colvec, A):
    """Sparse coordinates of a column dict {row: poly} over (row, monomial)."""
    out = {}
    for r, p in colvec.items():
        for m, c in p.terms:
            out[(r, m)] = c
    return out


def _column_degree(colvec, row_degrees):
    degs = set()
    for r, p in colvec.items():
        if p.is_zero():
            continue
        if not p.is_homogeneous():
            raise ValueError("quotient resolution needs homogeneous data")
        degs.add(p.degree() + row_degrees[r])
    if len(degs) != 1:
        raise ValueError("column not homogeneous")
    return degs.pop()


def _min_gens_over_quotient(A, raws, row_degrees):
    """Prune raw homogeneous generators over A to a minimal generating set.

    Exact graded Nakayama: in each degree d a raw generator is kept iff it
    adds a new dimension beyond A_1 * (span in degree d-1) and the raws
    already accepted.  Returns (kept columns, their degrees).
    """
    if not raws:
        return [], ()
    ring = A.ring
    by_deg = {}
    for col in raws:
        d = _column_degree(col, row_degrees)
        by_deg.setdefault(d, []).append(col)
    dmin, dmax = min(by_deg), max(by_deg)
    kept, kept_degs = [], []
    prev_rows = []  # basis vectors of W_{d-1} as keyvec dicts
    for d in range(dmin, dmax + 1):
        space = EchelonSpace()
        for vec in prev_rows:
            for l in range(ring.ngens):
                shifted = {}
                for (r, m), c in vec.items():
                    for m2, c2 in A.var_mult(l, m):
                        key = (r, m2)
                        s = shifted.get(key)
                        s = c * c2 if s is None else s + c * c2
                        if s:
                            shifted[key] = s
                        elif key in shifted:
                            del shifted[key]
                if shifted:
                    space.add(shifted)
        mspan = space.dim
        for col in by_deg.get(d, ()):
            vec = _keyvec(col, A)
            if space.add(vec):
                kept.append(col)
                kept_degs.append(d)
        prev_rows = list(space.rows.values())
    return kept, tuple(kept_degs)


def _quotient_syzygies(A, cols, row_degrees):
    """Raw generators of the A-syzygy module of the given columns."""
    ring = A.ring
    F = FreeModule(ring, row_degrees)
    z = ring.zero()

    def as_elem(col):
        coords = [z] * F.rank
        for r, p in col.items():
            coords[r] = p
        return ModuleElement(F, tuple(coords))

    elems = [as_elem(c) for c in cols]
    for g in A.defining_polynomials():
        for r in range(F.rank):
            elems.append(F.basis_element(r, g))
    syz = syzygy_basis(elems)
    out = []
    ncols = len(cols)
    for s in syz:
        col = {}
        for i in range(ncols):
            p = A.normal_form(s.coords[i])
            if not p.is_zero():
                col[i] = p
        if col:
            out.append(col)
    return out


def resolution_over_quotient(A, steps, module="residue_field"):
    """First `steps` steps of a minimal A-free resolution.

    module is either "residue_field" (resolve K = A/m) or a pair
    (row_degrees, columns) presenting the cokernel of a homogeneous matrix
    over A (columns are dicts {row: Polynomial}).
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    ring = A.ring
    if module == "residue_field":
        degs = [(0,)]
        cand = []
        for i in range(ring.ngens):
            p = A.normal_form(ring.var(i))
            if not p.is_zero():
                cand.append({0: p})
        cols, cdegs = _min_gens_over_quotient(A, cand, degs[0])
    else:
        row_degrees, cand = module
        degs = [tuple(row_degrees)]
        cand = [
            {r: A.normal_form(p) for r, p in col.items() if not A.normal_form(p).is_zero()}
            for col in cand
        ]
        cand = [c for c in cand if c]
        cols, cdegs = _min_gens_over_quotient(A, cand, degs[0])

    diffs = []
    z = ring.zero()
    for step in range(1, steps + 1):
        if not cols:
            degs.append(())
            diffs.append([])
            continue
        rank_above = len(degs[-1])
        mat = []
        for col in cols:
            dense = [z] * rank_above
            for r, p in col.items():
                dense[r] = p
            mat.append(dense)
        diffs.append(mat)
        degs.append(cdegs)
        if step == steps:
            break
        raws = _quotient_syzygies(A, cols, degs[-2])
        cols, cdegs = _min_gens_over_quotient(A, raws, degs[-1])

    while len(degs) < steps + 1:
        degs.append(())
        diffs.append([])
    return FreeResolution(A, degs, diffs, minimal=True, complete=True)
