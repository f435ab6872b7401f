"""Exact stability numerics for Kuznetsov components.

Submodules: numeric, charvec, stab, walls, plot, support, report, fano3,
cubic4, mukai, cli.
"""

from .charvec import CharVec, charvec, delta_h, twist_beta
from .numeric import fmt, q
from .stab import Charge, ObjectDescriptor, StabParams, mu_tilt, z_tilt

__all__ = [
    "CharVec",
    "Charge",
    "ObjectDescriptor",
    "StabParams",
    "charvec",
    "delta_h",
    "fmt",
    "mu_tilt",
    "q",
    "twist_beta",
    "z_tilt",
]
__version__ = "0.1.0"
