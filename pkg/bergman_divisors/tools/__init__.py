"""
Tools Package

Command-line utilities:
    - cli: check, frame, interpolate, verify-lemmas, threshold-sweep, lattice
    - sweeps: process-pool threshold cartography over the dilation constant C
"""
