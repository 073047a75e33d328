"""Ideal powers, Rees presentations, analytic spread, and per-power scans.

The scan machinery records, for each power k in a range, whatever metrics
were requested (generator counts, Betti data, regularity and Artin-Rees
profiles, Poincare coefficients) and feeds stabilization detection and
exact polynomial fitting on tail windows.  Asymptotic statements are always
reported as (onset, law) pairs over the computed range, never beyond it.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .artin_rees import rho_profile
from .groebner import (
    kernel_of_ring_map,
    krull_dimension,
    minimal_generators,
)
from .modules import FreeModule
from .quotient import QuotientRingCtx
from .resolutions import (
    betti_diagram,
    minimal_free_resolution,
    regularity_profile,
)


class ScanRowError(Exception):
    """A per-power computation hit a resource limit; recorded, not fatal."""


def ideal_power(gens, k):
    """Minimal generators of I^k (all degree-k products, then pruning)."""
    if k < 1:
        raise ValueError("power must be at least 1")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("cannot raise the zero ideal to a power")
    prods = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        p = gens[combo[0]].ring.one()
        for i in combo:
            p = p * gens[i]
        prods.append(p)
    kept = minimal_generators(prods)
    return [e.coords[0] for e in kept]


def rees_presentation(gens, source_names=None):
    """Defining ideal of the Rees algebra inside R[y_1..y_m]."""
    gens = list(gens)
    if source_names is None:
        source_names = [f"y{i + 1}" for i in range(len(gens))]
    return kernel_of_ring_map(gens, source_names, mode="rees")


def fiber_presentation(gens, source_names=None):
    """Kernel of K[y] -> K[f_1,...,f_m]; the fiber-cone ideal for
    equigenerated ideals."""
    gens = list(gens)
    if source_names is None:
        source_names = [f"y{i + 1}" for i in range(len(gens))]
    return kernel_of_ring_map(gens, source_names, mode="fiber")


def analytic_spread(gens):
    """Krull dimension of the fiber cone R(I)/mR(I).

    Computed as the dimension of the fiber-mode kernel in K[y]; the
    generators should be minimal and of one degree so that the subalgebra
    K[f_1,...,f_m] is the fiber cone.
    """
    gens = [e.coords[0] for e in minimal_generators(list(gens))]
    degs = {g.degree() for g in gens}
    if len(degs) != 1:
        raise ValueError("analytic spread needs an equigenerated ideal")
    ker = fiber_presentation(gens)
    return krull_dimension(ker)


class IdealPowers:
    """Lazy cache of everything attached to the powers of one graded ideal."""

    def __init__(self, gens):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("empty ideal")
        self.ring = gens[0].ring
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError("graded ideal required")
        self.gens = [e.coords[0] for e in minimal_generators(gens)]
        self._powers = {1: self.gens}
        self._quotients = {}
        self._res_of_power = {}
        self._res_of_quotient = {}
        self._koszul = {}

    def power(self, k):
        got = self._powers.get(k)
        if got is None:
            got = ideal_power(self.gens, k)
            self._powers[k] = got
        return got

    def quotient(self, k):
        got = self._quotients.get(k)
        if got is None:
            got = QuotientRingCtx(self.ring, self.power(k))
            self._quotients[k] = got
        return got

    def resolution_of_power(self, k):
        got = self._res_of_power.get(k)
        if got is None:
            got = minimal_free_resolution(self.power(k))
            self._res_of_power[k] = got
        return got

    def resolution_of_quotient(self, k):
        got = self._res_of_quotient.get(k)
        if got is None:
            mod = FreeModule(self.ring, (0,))
            got = minimal_free_resolution(self.power(k), module=mod, as_quotient=True)
            self._res_of_quotient[k] = got
        return got

    def betti_of_quotient(self, k):
        """Total Betti numbers beta_i(R/I^k) over R, padded to n+1 entries."""
        b = betti_diagram(self.resolution_of_quotient(k)).totals()
        return b + [0] * (self.ring.ngens + 1 - len(b))

    def koszul_homology(self, k, i_max=None, degree_bound=None):
        from .golod import koszul_homology

        key = (k, i_max, degree_bound)
        got = self._koszul.get(key)
        if got is None:
            got = koszul_homology(
                self.quotient(k),
                i_max=i_max,
                degree_bound=degree_bound,
                resolution=self.resolution_of_quotient(k),
            )
            self._koszul[key] = got
        return got

    def analytic_spread(self):
        return analytic_spread(self.gens)


# ---------------------------------------------------------------------------
# stabilization and exact polynomial fitting


@dataclass
class FitResult:
    degree: int
    coefficients: list  # exact, ascending powers of k
    window: tuple  # (k_start, k_end) used for the fit
    exact: bool

    def evaluate(self, k):
        acc = Fraction(0)
        for i, c in enumerate(self.coefficients):
            acc += c * Fraction(k) ** i
        return acc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0 and self.degree > 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*k")
            else:
                terms.append(f"{c}*k^{i}")
        return " + ".join(terms) if terms else "0"


def fit_polynomial(points):
    """Exact interpolation on the largest tail window that stabilizes.

    points: (k, value) pairs with distinct k.  Works down from the full
    range: a suffix fits when its divided differences vanish beyond some
    degree d with at least d+2 points confirming it.  Returns None when no
    suffix is conclusive; never extrapolates a guess.
    """
    pts = sorted((int(k), Fraction(v)) for k, v in points)
    if len(pts) != len({k for k, _ in pts}):
        raise ValueError("duplicate k values")
    if len(pts) < 2:
        raise ValueError("need at least two points")
    for start in range(len(pts) - 1):
        window = pts[start:]
        L = len(window)
        ks = [Fraction(k) for k, _ in window]
        # divided-difference diagonal
        dd = [v for _, v in window]
        diag = [dd[0]]
        for lvl in range(1, L):
            dd = [
                (dd[i + 1] - dd[i]) / (ks[i + lvl] - ks[i])
                for i in range(L - lvl)
            ]
            diag.append(dd[0])
        deg = max((i for i, c in enumerate(diag) if c), default=0)
        if L >= deg + 2:
            # expand the Newton form sum diag[i] * prod_{j<i} (k - k_j)
            coeffs = [Fraction(0)] * (deg + 1)
            basis = [Fraction(1)]  # coefficients of prod so far
            for i in range(deg + 1):
                for j, b in enumerate(basis):
                    coeffs[j] += diag[i] * b
                nxt = [Fraction(0)] * (len(basis) + 1)
                for j, b in enumerate(basis):
                    nxt[j] -= ks[i] * b
                    nxt[j + 1] += b
                basis = nxt
            fit = FitResult(deg, coeffs, (int(ks[0]), int(ks[-1])), True)
            for k, v in window:
                assert fit.evaluate(k) == v
            return fit
    return None


def stabilization_detect(points):
    """Largest constant suffix of (k, value); None when inconclusive.

    Inconclusive means the last two values differ, so no stable tail is
    visible inside the computed range.
    """
    pts = sorted(points)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    if pts[-1][1] != pts[-2][1]:
        return None
    value = pts[-1][1]
    onset = pts[-1][0]
    for k, v in reversed(pts):
        if v != value:
            break
        onset = k
    return onset, value


# ---------------------------------------------------------------------------
# scans


KNOWN_METRICS = ("gens", "betti", "reg", "rho", "poincare")


@dataclass
class ScanRow:
    k: int
    data: dict
    error: str | None = None


@dataclass
class ScanTable:
    ideal_strings: list
    metrics: list
    rows: list
    spread: int | None = None
    poincare_order: int | None = None

    def column_names(self):
        cols = ["k"]
        for m in self.metrics:
            prefixes = ("betti", "qbetti") if m == "betti" else (m,)
            keys = set()
            for row in self.rows:
                keys.update(
                    key
                    for key in row.data
                    if any(key == p or key.startswith(p + "_") for p in prefixes)
                )
            cols.extend(sorted(keys, key=_metric_key_order))
        cols.append("error")
        return cols

    def series(self, key):
        """(k, value) pairs for one column, skipping failed rows."""
        out = []
        for row in self.rows:
            if row.error is None and key in row.data:
                out.append((row.k, row.data[key]))
        return out


def _metric_key_order(key):
    parts = key.split("_")
    tail = []
    for p in parts[1:]:
        tail.append(int(p) if p.isdigit() else p)
    return (parts[0], tail)


def power_scan(ideal, k_range, metrics=("gens", "betti", "reg", "rho"),
               *, poincare_order=None, deadline=None, max_degree=None):
    """Compute requested metrics for each power k; failures stay per-row.

    metrics may include: gens, betti (total Betti numbers of I^k and of
    R/I^k), reg (regularity profile of I^k), rho (Artin-Rees profile of
    I^k), poincare (coefficients of the Poincare series of K over R/I^k,
    needs poincare_order).  A deadline or degree cap marks individual rows
    as failed instead of aborting the scan.
    """
    from .groebner import ResourceLimit, reset_degree_cap, set_degree_cap

    P = ideal if isinstance(ideal, IdealPowers) else IdealPowers(ideal)
    metrics = list(metrics)
    for m in metrics:
        if m not in KNOWN_METRICS:
            raise ValueError(f"unknown metric {m!r}")
    if "poincare" in metrics and poincare_order is None:
        raise ValueError("poincare metric needs poincare_order")
    cap_token = set_degree_cap(max_degree) if max_degree is not None else None
    rows = []
    for k in k_range:
        data = {}
        try:
            _check_deadline(deadline)
            if "gens" in metrics:
                data["gens"] = len(P.power(k))
            if "betti" in metrics or "reg" in metrics:
                res = P.resolution_of_power(k)
                b = betti_diagram(res)
                if "betti" in metrics:
                    for i, t in enumerate(b.totals()):
                        data[f"betti_{i}"] = t
                    for i, t in enumerate(P.betti_of_quotient(k)):
                        data[f"qbetti_{i}"] = t
                if "reg" in metrics:
                    regs, reg = regularity_profile(b)
                    data["reg"] = reg
                    for j, r in enumerate(regs):
                        data[f"reg_{j}"] = r
            _check_deadline(deadline)
            if "rho" in metrics:
                rhos = rho_profile(P.power(k), resolution=P.resolution_of_power(k))
                for j, r in enumerate(rhos):
                    data[f"rho_{j}"] = r
            _check_deadline(deadline)
            if "poincare" in metrics:
                from .golod import poincare_actual

                series = poincare_actual(P.quotient(k), poincare_order)
                for i, c in enumerate(series.coeffs):
                    data[f"poincare_{i}"] = int(c)
            rows.append(ScanRow(k, data))
        except (ScanRowError, ResourceLimit) as exc:
            rows.append(ScanRow(k, data, error=str(exc)))
    if cap_token is not None:
        reset_degree_cap(cap_token)
    spread = None
    try:
        spread = P.analytic_spread()
    except ValueError:
        pass
    return ScanTable(
        [str(g) for g in P.gens], metrics, rows,
        spread=spread, poincare_order=poincare_order,
    )


class Deadline:
    def __init__(self, seconds):
        self.t_end = time.monotonic() + seconds

    def expired(self):
        return time.monotonic() > self.t_end


def _check_deadline(deadline):
    if deadline is not None and deadline.expired():
        raise ScanRowError("timeout")
