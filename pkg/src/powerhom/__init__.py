"""powerhom: exact homological invariants of powers of graded ideals.

Groebner and standard bases, syzygies and minimal free resolutions,
Artin-Rees numbers of syzygy modules, Rees and fiber-cone presentations,
Koszul homology with products, Golod tests through a truncation order, and
deviation sequences -- all over exact rationals or a prime field.
"""

from .artin_rees import (
    ArtinReesResult,
    artin_rees_number,
    artin_rees_oracle,
    comparison_check,
    leading_form_module,
    rho_profile,
)
from .golod import (
    GolodVerdict,
    KoszulHomology,
    deviation_degree_scan,
    deviations_from_series,
    deviations_via_recursion,
    golod_series,
    golod_test,
    koszul_homology,
    poincare_actual,
    star_multiply,
    star_surjectivity_check,
    tor_product_check,
)
from .groebner import (
    BasisSet,
    ResourceLimit,
    buchberger,
    eliminate,
    in_submodule,
    kernel_of_ring_map,
    krull_dimension,
    minimal_generators,
    module_intersection,
    reduce,
    standard_basis,
    syzygy_basis,
)
from .rings import monomial_compare
from .modules import FreeModule, ModuleElement, homogeneity, leading_form
from .parsing import ParseError, parse_polynomial, parse_problem
from .poly import Polynomial, PolyRing, poly_arith
from .powers import (
    FitResult,
    IdealPowers,
    ScanTable,
    analytic_spread,
    fit_polynomial,
    ideal_power,
    power_scan,
    rees_presentation,
    stabilization_detect,
)
from .quotient import QuotientRingCtx
from .resolutions import (
    BettiDiagram,
    FreeResolution,
    betti_diagram,
    minimal_free_resolution,
    regularity_profile,
    resolution_over_quotient,
    resolve_ideal,
    resolve_quotient_by_ideal,
)
from .rings import QQ, PrimeField  # noqa: F401  (monomial_compare above)
from .series import TruncatedSeries

__version__ = "0.1.0"
