"""Exact computations with cones over rational homogeneous varieties.

Prolongations of the Lie algebra of infinitesimal automorphisms of a cone,
root-system combinatorics of torus actions on G/P, and graded models of
Euler-symmetric varieties built from symbol systems.
"""

from .aut import AutConfig, aut_from_quadrics, aut_from_samples, prolong, prolong_k, prolong_k_report
from .euler import build_model, embed, lambda_image, symbol_system
from .linalg import PRIMES, Subspace, kernel_basis, rank, rref
from .roots import build as build_root_system
from .zoo import parse_variety, project

__all__ = [
    "AutConfig", "PRIMES", "Subspace", "aut_from_quadrics", "aut_from_samples", "build_model",
    "build_root_system", "embed", "kernel_basis", "lambda_image", "parse_variety", "project",
    "prolong", "prolong_k", "prolong_k_report", "rank", "rref", "symbol_system",
]
