"""Combinatorial and computational model of a Swiss-cheese type action on Hochschild cochains.

Cochain-colored operations are encoded by marked planar trees, equivalently by
boundary words, equivalently by ordinal-colored elements of the operad ``Se``.
"""

__version__ = "0.1.0"
