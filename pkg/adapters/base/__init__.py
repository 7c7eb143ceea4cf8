"""
Base classes and interfaces for interferometry backends.
"""

from .backend_base import InterferometryBackend

__all__ = ["InterferometryBackend"]
