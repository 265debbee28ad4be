"""Counting topologies under formula restrictions, plus classical sequences."""
from .classical import (
    CLASSICAL_KINDS, bell, bell_numbers, catalan, classical_number,
    half_central_binomial, is_mersenne, is_power_of_two, r_bell, r_stirling,
    stirling2,
)
from .engine import (
    CountError, CountQuery, CountResult, ResultCache, SequenceRecord,
    count_sequence, count_topologies, verify_stirling_identity,
)
from .partitions import (
    BLOCK_CONDITIONS, count_noncrossing_partitions, count_topological_partitions,
)
