"""Empirical C-finiteness and MC-finiteness checks on sequence prefixes."""
from .integer import NoRecurrence, Recurrence, find_integer_recurrence, solve_order
from .modular import (
    ModularRecurrence, berlekamp_massey, brute_force_minimal_order, factorize,
    find_modular_recurrence, minimal_length_oracle, reduce_mod, reeds_sloane,
    shortest_register,
)
from .normality import ChunkStats, chunk_frequencies
from .period import MIN_COVERED_PERIODS, PeriodReport, detect_eventual_period, is_consistent_period
from .report import CONSISTENT, INCONCLUSIVE, INCONSISTENT, VERDICTS, mc_report
