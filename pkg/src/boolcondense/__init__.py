"""Query-complexity measures of Boolean functions and hardness condensation."""

from .algebraic import ConvergenceError, MultilinearPoly, degree, mobius, spectral_sensitivity
from .combinatorial import (
    BlockFamily,
    Certificate,
    block_sensitivity,
    certificate_complexity,
    minimal_sensitive_blocks,
    sensitivity,
)
from .condense import (
    CondensationResult,
    condense_by_blocks,
    condense_by_degree,
    condense_by_sensitivity,
    condense_positive,
    laws_check,
    search_restrictions,
)
from .core import (
    ArityError,
    BoolFun,
    BudgetExceeded,
    CapExceeded,
    OracleFun,
    Restriction,
    TableFormatError,
    random_function,
    read_table,
    restrict,
    write_table,
)
from .dt import UnambiguousCover, dt_depth, uc_measures, uc_value
from .lp import approx_degree, fbs_at, fractional_block_sensitivity, solve_exact
from .measures import MEASURES, measure
from .zoo import AND, OR, XOR, compose, mod_rubinstein, parse_spec, rubinstein, tribes

__version__ = "0.1.0"
