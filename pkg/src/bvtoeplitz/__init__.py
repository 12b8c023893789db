"""Bratteli-Vershik systems, Toeplitz sequences and dimension groups in exact arithmetic."""

from .decision import Decision, Sign
from .diagram import (
    BratteliDiagram,
    count_paths,
    ers_row_sums,
    is_simple,
    new_diagram,
    supernatural_of,
    telescope,
)
from .errors import BVError, InternalInvariantError
from .k0 import (
    K0Element,
    eigenvalue_test,
    gamma_rational,
    k0_add,
    k0_neg,
    k0_positivity,
    k0_push,
    max_equicontinuous_factor,
    order_unit,
)
from .ordering import (
    FinitePath,
    OrderedDiagram,
    PathRank,
    factor_to_odometer,
    is_properly_ordered,
    max_path,
    min_path,
    order_left_right,
    path_of_rank,
    predecessor,
    rank_of,
    successor,
    telescope_ordered,
)
from .realization import (
    CFRealization,
    TwoSymmetricSpec,
    cf_to_ers,
    odometer_diagram,
    two_symmetric,
    two_symmetric_alpha,
    two_symmetric_product,
    two_symmetric_tau,
)
from .supernatural import (
    SupernaturalNumber,
    rational_group_contains,
    sn_divides,
    sn_equiv,
    sn_mul,
)
from .toeplitz import (
    Skeleton,
    SymbolWindow,
    empirical_entropy,
    entropy_upper_bound,
    generate_window,
    is_essential,
    per_set,
    periodic_structure,
    tower_word,
    verify_toeplitz_window,
    word_complexity,
)

__version__ = "0.1.0"
