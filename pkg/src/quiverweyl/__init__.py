"""Combinatorics of Namikawa-Weyl groups for Nakajima quiver varieties."""

from .quiver import INFINITY, FramedProblem, Quiver, QuiverError, build_framed, p_value, tits_pairing
from .roots import RootClass, classify_root, enumerate_positive_roots

__all__ = [
    "INFINITY",
    "FramedProblem",
    "Quiver",
    "QuiverError",
    "RootClass",
    "build_framed",
    "classify_root",
    "enumerate_positive_roots",
    "p_value",
    "tits_pairing",
]
