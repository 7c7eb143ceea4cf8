"""
Characteristic functions and the symmetry-relation ratio.
"""

from characteristic.functions import cf_spectral, cf_trace, sweep_ratio, symmetry_ratio

__all__ = ["cf_spectral", "cf_trace", "symmetry_ratio", "sweep_ratio"]
