"""Tropicalization of lattices over Puiseux series: entropy vectors, the
complex Sigma, generators, and sampling checks."""

from .entropy import EntropyVector, LatticeMatrix, entropy_vector, is_supermodular
from .polyhedral import enumerate_complex, label_and_extract_sigma, sigma_complex
from .series import INF, PuiseuxPoly, parse_puiseux
from .tropical import generators, is_member, phi_eval, reconstruct

__all__ = [
    "INF",
    "EntropyVector",
    "LatticeMatrix",
    "PuiseuxPoly",
    "entropy_vector",
    "enumerate_complex",
    "generators",
    "is_member",
    "is_supermodular",
    "label_and_extract_sigma",
    "parse_puiseux",
    "phi_eval",
    "reconstruct",
    "sigma_complex",
]
