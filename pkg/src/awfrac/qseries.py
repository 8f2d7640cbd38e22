"""q-series primitives: Pochhammer symbols, h-products, terminating basic
hypergeometric sums, and the power-like polynomial bases.

All evaluation runs in complex arithmetic (uniform code path for e^{+-i theta}
arguments); callers cast to float through context.real_if_close where a real
value is guaranteed by conjugate symmetry.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .context import QContext, real_if_close

_TERMINATION_SCAN_LIMIT = 512


def _product_cutoff(amax: float, base: float, eps: float) -> int:
    """Number of factors after which the remaining tail of (a; base)_inf is
    below eps: cut when |a| base^N < eps (1 - base), so the tail bound
    exp(|a| base^N / (1-base)) - 1 stays under ~eps."""
    if amax == 0.0:
        return 0
    target = eps * (1.0 - base)
    if amax < target:
        return 0
    return int(math.ceil(math.log(target / amax) / math.log(base))) + 1


def qpoch(a: complex, ctx: QContext, n: int | None = None, *, base: float | None = None) -> complex:
    """q-Pochhammer symbol (a; base)_n = prod_{k<n} (1 - a base^k).

    n = None means the infinite product, truncated per ctx.eps_product with a
    geometric tail bound.  base defaults to ctx.q; passing base=sqrt(ctx.q)
    gives the half-step products used by the weighted kernels.
    """
    b = ctx.q if base is None else base
    if n is not None:
        if n < 0:
            raise ValueError("order must be non-negative")
        out = 1.0 + 0.0j
        f = complex(a)
        for _ in range(n):
            out *= (1.0 - f)
            f *= b
        return out
    cut = _product_cutoff(abs(a), b, ctx.eps_product)
    out = 1.0 + 0.0j
    f = complex(a)
    for _ in range(cut):
        out *= (1.0 - f)
        f *= b
    return out


def qpoch_inf_array(args: np.ndarray, base: float, eps: float) -> np.ndarray:
    """Vectorized (a; base)_inf over an array of complex arguments."""
    a = np.asarray(args, dtype=complex)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    cut = _product_cutoff(amax, base, eps)
    out = np.ones_like(a)
    f = a.copy()
    for _ in range(cut):
        out *= (1.0 - f)
        f *= base
    return out


def q_binomial(m: int, k: int, ctx: QContext) -> float:
    """Gaussian binomial coefficient [m, k]_q."""
    if k < 0 or k > m:
        return 0.0
    num = qpoch(ctx.q, ctx, m)
    den = qpoch(ctx.q, ctx, k) * qpoch(ctx.q, ctx, m - k)
    return real_if_close(num / den)


def h_product(x: float, params: Sequence[complex], ctx: QContext, *, base: float | None = None) -> complex:
    """Product of paired infinite factors prod_j (a_j e^{i theta}, a_j e^{-i theta}; base)_inf
    with x = cos theta.

    Conjugate-closed parameter sets give a real value (imaginary residual
    below ~1e-12 relative); the empty set gives 1.
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [-1, 1], got {x}")
    b = ctx.q if base is None else base
    z = cmath.exp(1j * math.acos(x))
    out = 1.0 + 0.0j
    for a in params:
        out *= qpoch(a * z, ctx, base=b) * qpoch(a / z, ctx, base=b)
    return out


def h_product_z(z: np.ndarray | complex, params: Sequence[complex], ctx: QContext, *, base: float | None = None) -> np.ndarray | complex:
    """h-product evaluated through the Laurent variable z (x = (z + 1/z)/2).

    Vectorized over z; this is the annulus-side evaluation used by the
    divided-difference operators.
    """
    b = ctx.q if base is None else base
    zz = np.asarray(z, dtype=complex)
    out = np.ones_like(zz)
    for a in params:
        out *= qpoch_inf_array(a * zz, b, ctx.eps_product)
        out *= qpoch_inf_array(a / zz, b, ctx.eps_product)
    if np.isscalar(z) or getattr(z, "shape", None) == ():
        return complex(out)
    return out


def _find_terminating_order(numerator: Sequence[complex], q: float) -> int:
    best: int | None = None
    for a in numerator:
        if a == 0:
            continue
        # a = q^{-n} means a q^n = 1
        f = complex(a)
        for n in range(_TERMINATION_SCAN_LIMIT):
            if abs(f - 1.0) < 1e-10 * max(1.0, abs(f)):
                if best is None or n < best:
                    best = n
                break
            f *= q
    if best is None:
        raise ValueError("series does not terminate: no numerator parameter of the form q^{-n}")
    return best


def basic_hyper_sum(
    numerator: Sequence[complex],
    denominator: Sequence[complex],
    ctx: QContext,
    z: complex,
) -> complex:
    """Terminating basic hypergeometric sum r phi s(num; den; q, z).

    Exactly one numerator parameter must be of the form q^{-n} (n a
    non-negative integer); the sum then has n+1 terms with the standard term
    ratio, including the (-1)^k q^{C(k,2)} factor raised to 1 + s - r.
    """
    q = ctx.q
    n = _find_terminating_order(numerator, q)
    extra = 1 + len(denominator) - len(numerator)
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    qk = 1.0  # q^k
    for k in range(n):
        ratio = complex(z)
        for a in numerator:
            ratio *= (1.0 - a * qk)
        den = 1.0 - q * qk
        for b_ in denominator:
            den *= (1.0 - b_ * qk)
        if den == 0:
            raise ZeroDivisionError("denominator parameter hits a pole of the term ratio")
        ratio /= den
        if extra:
            ratio *= (-qk) ** extra
        term *= ratio
        qk *= q
        total += term
    return total


def phi_basis_eval(beta: float, x: float, variant: str, ctx: QContext) -> float:
    """Power-analogue basis of order beta at x, for either base-point sign.

    variant "plus" uses base point +q^{1/4}: integer beta gives the finite
    product prod_{k<beta} (1 - 2 x q^{1/4+k/2} + q^{1/2+k}); "minus" flips the
    middle sign.  General beta >= 0 is the ratio of the order-infinity
    h-products at base points +-q^{1/4} and +-q^{beta/2+1/4} (half-step base).
    """
    if beta < 0:
        raise ValueError("order beta must be non-negative")
    if variant not in ("plus", "minus"):
        raise ValueError(f"variant must be 'plus' or 'minus', got {variant!r}")
    sign = 1.0 if variant == "plus" else -1.0
    q = ctx.q
    if float(beta).is_integer():
        nb = int(beta)
        out = 1.0
        fac = q ** 0.25
        mid = q ** 0.5
        for _ in range(nb):
            out *= 1.0 - sign * 2.0 * x * fac + mid
            fac *= q ** 0.5
            mid *= q
        return out
    a0 = sign * q ** 0.25
    a1 = sign * q ** (beta / 2.0 + 0.25)
    num = h_product(x, [a0], ctx, base=ctx.sqrt_q)
    den = h_product(x, [a1], ctx, base=ctx.sqrt_q)
    return real_if_close(num / den)


def phi_basis_z(beta: float, z: np.ndarray | complex, variant: str, ctx: QContext) -> np.ndarray | complex:
    """Annulus-side evaluation of the order-beta basis through z."""
    sign = 1.0 if variant == "plus" else -1.0
    q = ctx.q
    a0 = sign * q ** 0.25
    a1 = sign * q ** (beta / 2.0 + 0.25)
    num = h_product_z(z, [a0], ctx, base=ctx.sqrt_q)
    den = h_product_z(z, [a1], ctx, base=ctx.sqrt_q)
    return num / den


def rho_basis_eval(n: int, x: float, ctx: QContext) -> complex:
    """Odd/even split basis: (1 + e^{2 i theta}) e^{-i n theta}
    (-q^{2-n} e^{2 i theta}; q^2)_{n-1} for n > 0, and 1 for n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1.0 + 0.0j
    theta = math.acos(x)
    z2 = cmath.exp(2j * theta)
    out = (1.0 + z2) * cmath.exp(-1j * n * theta)
    out *= qpoch(-(ctx.q ** (2 - n)) * z2, ctx, n - 1, base=ctx.q ** 2)
    return out
