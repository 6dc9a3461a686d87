"""Discrete structures in finite-dimensional Hilbert spaces: displacement
operator bases, finite fields, Latin squares and complex Hadamard
matrices, mutually unbiased bases, discrete Wigner functions, the
symplectic/metaplectic representation, projective and unitary t-designs,
and SIC fiducials."""

from . import clifford, combinat, designs, gf, mub, sic, weyl, wigner

__version__ = "0.1.0"

__all__ = ["clifford", "combinat", "designs", "gf", "mub", "sic", "weyl",
           "wigner", "__version__"]
