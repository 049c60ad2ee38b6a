"""Combinatorial machinery for the Thurston map f(z) = 3z^2 / (2z^3 + 1).

Free-group words, the P Gamma(2) action on extended rationals, the even
continued-fraction decomposition, Reidemeister-Schreier rewriting, the
virtual endomorphism phi, the boundary pullback map sigma, wreath recursions
and the twisting classifier.
"""
from .words import Context, Word, WordError, parse
from .projective import ExtRational, MobiusMat, right_act
from .cf import decompose
from .virtualendo import phi, phi_bar, psi_bar
from .boundary import sigma, sigma_via_stabilizer, sigma_twisted, orbit, attractor_scan
from .twister import classify

__version__ = "0.1.0"

__all__ = [
    "Context", "Word", "WordError", "parse", "ExtRational", "MobiusMat",
    "right_act", "decompose", "phi", "phi_bar", "psi_bar", "sigma",
    "sigma_via_stabilizer", "sigma_twisted", "orbit", "attractor_scan", "classify",
]
