from .core import (
    BmsspParams,
    BmsspState,
    Counters,
    Hooks,
    TOP,
    RecursionContractViolation,
    as_bound,
    base_case,
    bmssp,
    bmssp_sssp,
    find_pivots,
)
from .frontier import (
    BlockFrontier,
    BoundViolation,
    EmptyFrontier,
    HeapFrontier,
    OrderViolation,
    BACKENDS,
    make_frontier,
)
