"""Fractional integral semigroups for the Askey-Wilson operator.

Layers: q-series primitives (qseries), continuous q-Hermite machinery
(hermite, quadrature), divided-difference operators (operators), the
one-parameter kernel semigroups and their spectral calculus (semigroups),
Askey-Wilson polynomial applications (askey_wilson), the q-analogue of the
Gauss-Weierstrass transform (transforms), and a dual-integral-equation
solver (dual_equations).  The cli module exposes everything, including the
identity-verification suites in verify.
"""

from .context import QContext, real_if_close

__version__ = "0.1.0"

__all__ = ["QContext", "real_if_close", "__version__"]
