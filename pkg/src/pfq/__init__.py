"""p-adic analysis of generalized hypergeometric series with rational parameters."""

from .algebraic import (
    AnnihilatorRelation,
    YEntry,
    annihilator,
    derive_Y,
    one_step_table,
    orbit_X,
    polynomial_matrix_kernel,
    verify_annihilator,
)
from .dwork import (
    SectionData,
    SectionResult,
    are_congruent,
    coefficient_class,
    section_data,
    section_decomposition,
    section_operator,
    series_mod_p,
)
from .errors import InvalidArgument, MathematicalRefusal, PfqError
from .evaluation import PadicApprox, eval_padic, heuristic_nu, truncation_bound
from .exact_arith import (
    MultClass,
    PExpansion,
    Rational,
    christol_reduction,
    class_product,
    dwork_map,
    mult_class,
    mult_order,
    padic_digits,
    reduce_mod_pr,
    valp,
)
from .newton import NewtonPolygon, cone, newton_polygon, np_ev, np_odot, np_oplus
from .primes import GoodReductionSet, christol_bound, good_reduction_set, representative_prime
from .tropical import DIVERGENCE, TropMatrix, TropScalar, trop_mul, weak_closure
from .valuation import DriftedValuation, critical_drift, drifted_valuation, has_good_reduction
from .zigzag import (
    HParams,
    NormalizedParams,
    ZigzagLevel,
    as_params,
    gamma_set,
    initial_vector,
    normalize_params,
    r0_bound,
    transition_matrix,
    w_eval,
    xi_level,
)

__all__ = [name for name in dir() if not name.startswith("_")]
