"""
Lemma Suite Package

Property sweeps over the numerical lemmas:
    - LemmaSuite: runs the registered properties (codes in SUITE_SPEC.md)
    - SweepConfig: sweep ranges (default and quick)
    - PropertyResult / SuiteResult: verdicts with measured constants
"""

from .lemma_suite import (
    PROPERTIES,
    LemmaSuite,
    PropertyResult,
    SuiteResult,
    SweepConfig,
    Verdict,
)

__all__ = [
    "PROPERTIES",
    "LemmaSuite",
    "PropertyResult",
    "SuiteResult",
    "SweepConfig",
    "Verdict",
]
