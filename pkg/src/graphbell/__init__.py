"""Bell inequalities for graph states.

Pauli algebra on bitmasks, graph-state stabilizers, Bell operator
constructions, exhaustive local-hidden-variable bounds and a small dense
state-vector backend.
"""

from .bell import (
    BellInequality,
    ObservableMap,
    PartyLayout,
    TwoSettingExpression,
    ardehali_bound,
    ardehali_expression,
    ardehali_pattern,
    basic_inequality,
    chsh_pattern,
    composite,
    condition_on_z,
    expand,
    family_composite,
    fc3_operator,
    greedy_composite,
    lc4_set,
    lc_composite,
    mermin_bound,
    mermin_pattern,
    select_blocks,
    single_term_pattern,
    theorem1_operator,
)
from .dense import (
    SpectrumSummary,
    StateVector,
    expectation,
    fidelity_bound,
    graph_state_vector,
    project_z,
    psd_check,
    spectrum,
)
from .errors import (
    CompositionError,
    ConstructionError,
    DimensionError,
    GraphBellError,
    GraphParseError,
    GuardError,
    ResourceError,
)
from .graph import (
    Graph,
    family,
    generator,
    graph_state_expectation,
    is_independent_set,
    load_graph,
    parse_graph,
    stabilizer_element,
    stabilizer_elements,
)
from .lhv import (
    BoundsReport,
    FacetResult,
    classical_max,
    classical_max_settings,
    classical_value,
    facet_test,
    settings_value,
    violation_report,
)
from .pauli import PauliString, PauliSum, is_hermitian, pauli_mul

__version__ = "0.1.0"
