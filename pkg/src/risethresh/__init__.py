"""Rising-threshold online multiple knapsack: engine, adversary, oracle, verifiers."""

from .adversary import (
    AdversaryTranscript,
    build_sequence,
    fuzz_instance,
    greedy_trap,
    run_adversary,
    theoretical_U,
)
from .curves import (
    BUDGET_CONST,
    MEDIUM_MIN,
    RATIO,
    capped_gain,
    mark_budget,
    mark_budget_slope,
    pile,
    surplus,
    threshold,
    threshold_integral,
    threshold_inverse,
    transfer,
)
from .engine import Decision, FirstFit, RisingThreshold, Snapshot
from .instances import Instance
from .oracle import OptResult, check_certificate, exact_opt, upper_bound
from .reports import RunReport, diagnostics, lemma_checks, make_engine, run_stream
from .validate import verify_boundary_conditions

__all__ = [
    "AdversaryTranscript",
    "BUDGET_CONST",
    "Decision",
    "FirstFit",
    "Instance",
    "MEDIUM_MIN",
    "OptResult",
    "RATIO",
    "RisingThreshold",
    "RunReport",
    "Snapshot",
    "build_sequence",
    "capped_gain",
    "check_certificate",
    "diagnostics",
    "exact_opt",
    "fuzz_instance",
    "greedy_trap",
    "lemma_checks",
    "make_engine",
    "mark_budget",
    "mark_budget_slope",
    "pile",
    "run_adversary",
    "run_stream",
    "surplus",
    "theoretical_U",
    "threshold",
    "threshold_integral",
    "threshold_inverse",
    "transfer",
    "upper_bound",
    "verify_boundary_conditions",
]

__version__ = "0.1.0"
