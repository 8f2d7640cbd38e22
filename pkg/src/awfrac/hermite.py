"""Continuous q-Hermite polynomials, their weight, expansions, the Poisson
and shifted-index bilinear kernels, and the q-exponential function.

The polynomials satisfy H_0 = 1, H_1 = 2x and
2 x H_n = H_{n+1} + (1 - q^n) H_{n-1}, are orthogonal on [-1, 1] with
integral H_m H_n w_H = (q; q)_n delta_{mn}, and carry the generating function
sum_n H_n(cos t) u^n / (q; q)_n = 1 / (u e^{it}, u e^{-it}; q)_inf.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .context import QContext, real_if_close
from .qseries import h_product, h_product_z, q_binomial, qpoch, qpoch_inf_array
from .quadrature import NodeTables, QuadratureRule, node_tables, theta_density

_SERIES_CAP = 600


def qq_factors(m: int, q: float) -> np.ndarray:
    """(q; q)_n for n = 0..m."""
    out = np.empty(m + 1)
    out[0] = 1.0
    f = q
    for n in range(1, m + 1):
        out[n] = out[n - 1] * (1.0 - f)
        f *= q
    return out


def hermite_eval(n: int, x: float, ctx: QContext) -> float:
    """H_n(x | q) by the forward three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    h_prev, h = 1.0, 2.0 * x
    if n == 0:
        return h_prev
    qk = 1.0
    for _ in range(1, n):
        qk *= ctx.q
        h_prev, h = h, 2.0 * x * h - (1.0 - qk) * h_prev
    return h


def hermite_matrix(nmax: int, x: np.ndarray, q: float) -> np.ndarray:
    """Stack H_0..H_nmax evaluated on an array; works for complex x too."""
    xx = np.asarray(x)
    H = np.empty((nmax + 1,) + xx.shape, dtype=xx.dtype if xx.dtype.kind == "c" else float)
    H[0] = 1.0
    if nmax >= 1:
        H[1] = 2.0 * xx
    qk = 1.0
    for n in range(1, nmax):
        qk *= q
        H[n + 1] = 2.0 * xx * H[n] - (1.0 - qk) * H[n - 1]
    return H


def hermite_breve(n: int, z: complex | np.ndarray, ctx: QContext) -> complex | np.ndarray:
    """H_n at x = (z + 1/z)/2, the Laurent-side evaluation."""
    zz = np.asarray(z, dtype=complex)
    H = hermite_matrix(n, 0.5 * (zz + 1.0 / zz), ctx.q)
    out = H[n]
    if np.isscalar(z) or getattr(z, "shape", None) == ():
        return complex(out)
    return out


_HMAT_CACHE: dict = {}


def hermite_node_matrix(nmax: int, ctx: QContext, rule: QuadratureRule) -> np.ndarray:
    key = (ctx.q, rule.key, nmax)
    hit = _HMAT_CACHE.get(key)
    if hit is None:
        hit = hermite_matrix(nmax, node_tables(ctx, rule).x, ctx.q)
        hit.setflags(write=False)
        if len(_HMAT_CACHE) > 32:
            _HMAT_CACHE.pop(next(iter(_HMAT_CACHE)))
        _HMAT_CACHE[key] = hit
    return hit


def weight_eval(x: float, ctx: QContext) -> float:
    """Normalized orthogonality weight w_H(x | q); defined on the open
    interval, with the endpoint singularity handled by open rules."""
    if not -1.0 < x < 1.0:
        raise ValueError("weight is evaluated on the open interval (-1, 1)")
    theta = math.acos(x)
    val = theta_density(np.array([theta]), ctx)[0] / math.sin(theta)
    return float(val)


@dataclass(frozen=True)
class HermiteSeries:
    """Finite coefficient sequence c_0..c_M representing sum c_n H_n(x | q)."""

    coefficients: np.ndarray
    ctx: QContext

    def __post_init__(self) -> None:
        c = np.array(self.coefficients, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        xx = np.asarray(x, dtype=float)
        H = hermite_matrix(self.degree, xx, self.ctx.q)
        out = np.tensordot(self.coefficients, H, axes=(0, 0))
        return float(out) if np.isscalar(x) else out

    def eval_breve(self, z: complex | np.ndarray) -> complex | np.ndarray:
        zz = np.asarray(z, dtype=complex)
        H = hermite_matrix(self.degree, 0.5 * (zz + 1.0 / zz), self.ctx.q)
        out = np.tensordot(self.coefficients, H, axes=(0, 0))
        return complex(out) if (np.isscalar(z) or zz.shape == ()) else out

    def norm_sq(self) -> float:
        """Squared L2(w_H) norm, sum c_n^2 (q; q)_n."""
        norms = qq_factors(self.degree, self.ctx.q)
        return float(np.sum(self.coefficients ** 2 * norms))

    def padded(self, m: int) -> "HermiteSeries":
        if m < self.degree:
            raise ValueError("cannot pad to a lower degree")
        c = np.zeros(m + 1)
        c[: self.coefficients.size] = self.coefficients
        return HermiteSeries(c, self.ctx)

    def map_coefficients(self, fn: Callable[[np.ndarray], np.ndarray]) -> "HermiteSeries":
        return HermiteSeries(fn(self.coefficients.copy()), self.ctx)

    def __add__(self, other: "HermiteSeries") -> "HermiteSeries":
        m = max(self.degree, other.degree)
        return HermiteSeries(
            self.padded(m).coefficients + other.padded(m).coefficients, self.ctx
        )

    def __sub__(self, other: "HermiteSeries") -> "HermiteSeries":
        m = max(self.degree, other.degree)
        return HermiteSeries(
            self.padded(m).coefficients - other.padded(m).coefficients, self.ctx
        )

    def scaled(self, s: float) -> "HermiteSeries":
        return HermiteSeries(s * self.coefficients, self.ctx)


def hermite_expand(
    f: Callable[[np.ndarray], np.ndarray],
    m: int,
    rule: QuadratureRule,
    ctx: QContext,
) -> HermiteSeries:
    """Project f onto H_0..H_m: c_n = <f, H_n>_{w_H} / (q; q)_n."""
    tables = node_tables(ctx, rule)
    fv = _values_on(f, tables.x)
    H = hermite_node_matrix(m, ctx, rule)
    raw = H @ (tables.wdens * fv)
    return HermiteSeries(raw / qq_factors(m, ctx.q), ctx)


def _values_on(f, x: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(x), dtype=float)
        if vals.shape == x.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(f(xi)) for xi in x])


def poisson_denominator_scalar(theta: float, phi: float, t: float, ctx: QContext) -> float:
    """Four-factor geometric product (t e^{i(t+p)}, t e^{i(t-p)}, t e^{-i(t+p)},
    t e^{i(p-t)}; q)_inf; strictly positive for real angles and |t| < 1."""
    val = (
        qpoch(t * cmath.exp(1j * (theta + phi)), ctx)
        * qpoch(t * cmath.exp(1j * (theta - phi)), ctx)
        * qpoch(t * cmath.exp(-1j * (theta + phi)), ctx)
        * qpoch(t * cmath.exp(1j * (phi - theta)), ctx)
    )
    return real_if_close(val)


def poisson_kernel(x: float, y: float, t: float, ctx: QContext, form: str = "closed") -> float:
    """Bilinear generating kernel sum_n H_n(x) H_n(y) t^n / (q; q)_n.

    The closed form is (t^2; q)_inf over the four-factor product; the series
    form truncates when the term magnitude falls below eps_series relative to
    the accumulated sum.
    """
    if abs(t) >= 1.0:
        raise ValueError("|t| must be < 1")
    theta, phi = math.acos(x), math.acos(y)
    if form == "closed":
        num = real_if_close(qpoch(t * t, ctx))
        return num / poisson_denominator_scalar(theta, phi, t, ctx)
    if form == "series":
        total = 0.0
        hx_prev, hx = 1.0, 2.0 * x
        hy_prev, hy = 1.0, 2.0 * y
        tn = 1.0
        poch = 1.0
        qnext = ctx.q  # q^{n+1} while processing term n
        small = 0
        for _ in range(_SERIES_CAP):
            term = hx_prev * hy_prev * tn / poch
            total += term
            if abs(term) < ctx.eps_series * max(1.0, abs(total)):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            tn *= t
            hx_prev, hx = hx, 2.0 * x * hx - (1.0 - qnext) * hx_prev
            hy_prev, hy = hy, 2.0 * y * hy - (1.0 - qnext) * hy_prev
            poch *= 1.0 - qnext
            qnext *= ctx.q
        return total
    raise ValueError(f"unknown form {form!r}")


def bilinear_kernel(x: float, y: float, t: float, m: int, ctx: QContext, form: str) -> float:
    """Shifted-index kernel sum_n H_n(x) H_{n+m}(y) t^n / (q; q)_n via either
    closed form; the index shift m rides on the y variable."""
    if abs(t) >= 1.0:
        raise ValueError("|t| must be < 1")
    if m < 0:
        raise ValueError("shift m must be non-negative")
    theta, phi = math.acos(x), math.acos(y)
    denom = poisson_denominator_scalar(theta, phi, t, ctx)
    eip = cmath.exp(1j * phi)
    eit = cmath.exp(1j * theta)
    if form == "carlitz":
        pref = real_if_close(qpoch(t * t, ctx)) / denom
        acc = 0.0 + 0.0j
        for j in range(m + 1):
            term = q_binomial(m, j, ctx)
            term *= qpoch(t * eit * eip, ctx, j) * qpoch(t * eip / eit, ctx, j)
            term /= qpoch(t * t, ctx, j)
            term *= eip ** (m - 2 * j)
            acc += term
        return real_if_close(pref * acc, tol=1e-10)
    if form == "ismail_stanton":
        pref = real_if_close(qpoch(t * t * ctx.q ** m, ctx)) / denom
        acc = 0.0 + 0.0j
        for k in range(m + 1):
            term = q_binomial(m, k, ctx)
            term *= qpoch(t * eip / eit, ctx, k) * qpoch(t * eit / eip, ctx, m - k)
            term *= eip ** (m - 2 * k)
            acc += term
        return real_if_close(pref * acc, tol=1e-10)
    raise ValueError(f"unknown form {form!r}")


def qexp_normalizer(t: float, ctx: QContext) -> float:
    """(q t^2; q^2)_inf, the factor linking the q-exponential to its
    Hermite generating series."""
    return real_if_close(qpoch(ctx.q * t * t, ctx, base=ctx.q ** 2))


def qexp_eval(x: float, t: float, ctx: QContext) -> float:
    """q-exponential E_q(x; t) from its Hermite expansion:
    (q t^2; q^2)_inf E_q(x; t) = sum_n q^{n^2/4} t^n H_n(x) / (q; q)_n."""
    if abs(t) >= 1.0:
        raise ValueError("|t| must be < 1")
    norm = qexp_normalizer(t, ctx)
    if abs(norm) < 1e-300:
        raise ZeroDivisionError("vanishing normalizer (q t^2; q^2)_inf")
    return hermite_generating_sum(x, t, ctx) / norm


def hermite_generating_sum(x: float, t: float, ctx: QContext) -> float:
    """sum_n q^{n^2/4} t^n H_n(x) / (q; q)_n (entire in t)."""
    total = 0.0
    h_prev, h = 1.0, 2.0 * x
    poch = 1.0
    qnext = ctx.q
    small = 0
    for n in range(_SERIES_CAP):
        term = ctx.q ** (n * n / 4.0) * t ** n * h_prev / poch
        total += term
        if abs(term) < ctx.eps_series * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        h_prev, h = h, 2.0 * x * h - (1.0 - qnext) * h_prev
        poch *= 1.0 - qnext
        qnext *= ctx.q
    return total


def g_eval(x: float, ctx: QContext) -> float:
    """The strictly positive weighted-kernel product
    g(cos t) = (-q^{1/4} e^{it}, -q^{1/4} e^{-it}; q^{1/2})_inf."""
    return real_if_close(h_product(x, [-ctx.q4], ctx, base=ctx.sqrt_q))


def g_breve(z: complex | np.ndarray, ctx: QContext) -> complex | np.ndarray:
    """g evaluated through the Laurent variable; entire in z + 1/z."""
    return h_product_z(z, [-ctx.q4], ctx, base=ctx.sqrt_q)


def g_recip_series(m: int, ctx: QContext) -> HermiteSeries:
    """Coefficients of 1/g: c_n = (-1)^n q^{n/2} H_n(zeta) / ((q; q)_n (q; q)_inf),
    zeta = (q^{1/4} + q^{-1/4})/2."""
    q = ctx.q
    zeta = ctx.zeta
    qq_inf = real_if_close(qpoch(q, ctx))
    norms = qq_factors(m, q)
    hz = hermite_matrix(m, np.array([zeta]), q)[:, 0]
    c = np.empty(m + 1)
    sign = 1.0
    qhalf = 1.0
    for n in range(m + 1):
        c[n] = sign * qhalf * hz[n] / (norms[n] * qq_inf)
        sign = -sign
        qhalf *= math.sqrt(q)
    return HermiteSeries(c, ctx)


def monomial_series(j: int, ctx: QContext) -> HermiteSeries:
    """Hermite coefficients of e_j(x) = x^j for j = 0, 1, 2."""
    if j == 0:
        return HermiteSeries(np.array([1.0]), ctx)
    if j == 1:
        return HermiteSeries(np.array([0.0, 0.5]), ctx)
    if j == 2:
        return HermiteSeries(np.array([(1.0 - ctx.q) / 4.0, 0.0, 0.25]), ctx)
    raise ValueError("only the Korovkin monomials e_0, e_1, e_2 are tabulated")
