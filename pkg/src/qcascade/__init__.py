"""Cascaded quantum emitters.

Steady states, emission resonances and photon correlations of two-level
systems and bosonic modes driven by quantum light through unidirectional
(cascaded) channels.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
