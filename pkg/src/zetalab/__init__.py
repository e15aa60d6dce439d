"""Numerical audit toolkit for Dedekind zeta functions and related identities.

Modules: numerics (gamma, quadrature, series), fields (number fields and
Dirichlet characters), lfunctions, completed (functional equation and zeros),
harmonic (Fourier, theta, Mellin), positivity (amplitudes and traces), adic,
quaternion, audits and cli.
"""
from .completed import completed_zeta, fe_residual, scan_zeros
from .fields import make_field
from .lfunctions import dedekind_zeta, dirichlet_l, riemann_zeta

__version__ = "0.1.0"

__all__ = ["completed_zeta", "fe_residual", "scan_zeros", "make_field", "dedekind_zeta",
           "dirichlet_l", "riemann_zeta"]
