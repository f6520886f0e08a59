"""
bergman-divisors — Sampling and Interpolation Divisors Package

Numerical toolkit for multiple sampling / interpolation divisors in
weighted Bergman spaces A²_α and growth spaces A^∞_α of the unit disk.

Subpackages:
    - core: special functions, disk geometry, divisors, truncated model, weights
    - suite: lemma suite validator (property sweeps with empirical constants)
    - tools: CLI utilities (check, frame, interpolate, verify-lemmas, sweeps)
    - schema: JSON Schema definitions for divisor and targets files
    - fixtures: lattice generator parameters for end-to-end checks
    - tests: Unit tests
"""

__version__ = "1.0.0"
__author__ = "bergman-divisors"

SCHEMA_VERSION = "1.0.0"
