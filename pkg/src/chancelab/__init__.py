"""chancelab: exact-arithmetic chance measures, confirmation dynamics, and
dominance constructions, with a reproducible experiment runner.

Everything on a verified path is a `fractions.Fraction`; no float ever enters
a computation whose result is asserted.
"""

from .confirmation import (
    ChanceHypothesis,
    CredenceState,
    Trajectory,
    anticipation_limit,
    bayes_update,
    decay_envelope,
    draw_cells,
    lemma_lambda,
    make_credence_state,
    principal_likelihood,
    run_trajectory,
    trajectory_to_csv,
)
from .measures import (
    GeometricTail,
    PartitionMeasure,
    deficiency,
    dominate,
    domination_report,
    dyadic_tail_measure,
    hstar,
    make_partition_measure,
    mass,
    measure_from_json,
    measure_to_json,
    total_mass,
)
from .procedures import (
    Arc,
    CircleChanceModel,
    IntegerAngleSet,
    arc_chance,
    coin_prefix_chance,
    make_circle_model,
    rejection_lottery,
    rotate_integer_set,
    shrinking_arcs,
    singleton_chance,
    uniform_circle_model,
)
from .rational import as_fraction, decimal_str, format_rational, parse_rational, probability
from .scales import (
    Dartboard,
    OrdinalIndex,
    PolynomialScaleFamily,
    SequenceFunction,
    TabulatedSequenceFunction,
    build_scale,
    constant_sequence,
    coverage,
    dominates,
    dominating_function,
    identity_sequence,
    make_dartboard,
    make_sequence_function,
    seq_add,
    seq_eval,
    verify_scale,
)

__version__ = "0.1.0"
