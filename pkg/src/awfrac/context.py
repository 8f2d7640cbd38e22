"""Global evaluation context: the base q and truncation tolerances.

Every quantity in the package is parameterized by a QContext.  Contexts are
immutable and hashable so node tables and kernel matrices can be cached
against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class QContext:
    """Base q in (0, 1) plus tolerances for infinite products and series.

    eps_product controls where infinite q-products are truncated (the factor
    deviation |a q^N| at the cut, with the remaining tail bounded by
    exp(|a| q^N / (1-q)) - 1).  eps_series is the tail tolerance used when
    summing kernel/exponential series.
    """

    q: float
    eps_product: float = 1e-15
    eps_series: float = 1e-14

    def __post_init__(self) -> None:
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie strictly in (0, 1), got {self.q}")
        if self.eps_product <= 0.0:
            raise ValueError("eps_product must be positive")
        if self.eps_series <= 0.0:
            raise ValueError("eps_series must be positive")

    @property
    def sqrt_q(self) -> float:
        return math.sqrt(self.q)

    @property
    def q4(self) -> float:
        """q^{1/4}, the base point of the weighted-kernel products."""
        return self.q ** 0.25

    @property
    def zeta(self) -> float:
        """(q^{1/4} + q^{-1/4})/2, the off-interval node where the reciprocal
        weight-product expansion is anchored; always > 1."""
        return 0.5 * (self.q ** 0.25 + self.q ** -0.25)


def real_if_close(value: complex, tol: float = 1e-11) -> float:
    """Cast a complex result of a conjugate-symmetric computation to float.

    Raises if the imaginary residual exceeds tol relative to the magnitude
    (absolute for tiny values); this guards the uniform complex code path
    used for e^{+-i theta} arguments.
    """
    mag = abs(value)
    if abs(value.imag) > tol * max(1.0, mag):
        raise ValueError(
            f"result expected real, imaginary residual {value.imag:.3e} "
            f"relative to magnitude {mag:.3e}"
        )
    return float(value.real)
