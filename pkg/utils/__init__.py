"""
Shared utilities: logging, errors and seed derivation.
"""
