"""Verification and derivation engine for Ramanujan-type 1/pi series on the
Shimura curve X6*: archimedean certification of the identity tables, 5-adic
analogues, and the exact Hecke -> Newton -> resultant derivation chain.
"""

__version__ = "0.1.0"
