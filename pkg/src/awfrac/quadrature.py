"""Quadrature rules on the angular interval (0, pi) and cached node tables.

All kernel integrals are carried out in the theta variable, where the
endpoint weight singularity 1/sqrt(1-x^2) is cancelled by the sin(phi)
Jacobian; the integrands are then analytic and Gauss-Legendre converges
spectrally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .context import QContext
from .qseries import qpoch, qpoch_inf_array


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes theta_i in (0, pi) and positive weights for d(theta) integrals."""

    nodes: np.ndarray
    weights: np.ndarray
    key: tuple = field(default=("custom",))

    def __post_init__(self) -> None:
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(self.nodes <= 0.0) or np.any(self.nodes >= math.pi):
            raise ValueError("nodes must lie strictly inside (0, pi)")
        if np.any(self.weights <= 0.0):
            raise ValueError("weights must be positive")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def count(self) -> int:
        return self.nodes.size

    @classmethod
    def gauss_legendre(cls, n: int, lo: float = 0.0, hi: float = math.pi) -> "QuadratureRule":
        x, w = np.polynomial.legendre.leggauss(n)
        nodes = 0.5 * (hi - lo) * (x + 1.0) + lo
        weights = 0.5 * (hi - lo) * w
        return cls(nodes=nodes, weights=weights, key=("gl", n, round(lo, 15), round(hi, 15)))

    @classmethod
    def composite(cls, pieces: Iterable[tuple[float, float, int]]) -> "QuadratureRule":
        nodes_parts = []
        weights_parts = []
        key_parts: list = ["comp"]
        for lo, hi, n in pieces:
            sub = cls.gauss_legendre(n, lo, hi)
            nodes_parts.append(sub.nodes)
            weights_parts.append(sub.weights)
            key_parts.append((round(lo, 15), round(hi, 15), n))
        return cls(
            nodes=np.concatenate(nodes_parts),
            weights=np.concatenate(weights_parts),
            key=tuple(key_parts),
        )

    @classmethod
    def split_at_equator(cls, n_half: int) -> "QuadratureRule":
        """Two Gauss-Legendre panels meeting at theta = pi/2 (x = 0); used for
        integrands assembled piecewise on (-1, 0) and (0, 1)."""
        return cls.composite([(0.0, math.pi / 2.0, n_half), (math.pi / 2.0, math.pi, n_half)])

    def check_normalization(self, ctx: QContext) -> float:
        """|integral of the Hermite weight - 1| under this rule."""
        dens = theta_density(self.nodes, ctx)
        return abs(float(self.weights @ dens) - 1.0)


def default_rule(n: int = 256) -> QuadratureRule:
    return QuadratureRule.gauss_legendre(n)


def theta_density(theta: np.ndarray, ctx: QContext) -> np.ndarray:
    """w_H(cos theta) sin(theta) = (q; q)_inf (e^{2 i theta}, e^{-2 i theta}; q)_inf / (2 pi)."""
    th = np.asarray(theta, dtype=float)
    p = qpoch_inf_array(np.exp(2j * th), ctx.q, ctx.eps_product)
    const = qpoch(ctx.q, ctx).real / (2.0 * math.pi)
    return const * np.abs(p) ** 2


_TABLE_CACHE: dict = {}


@dataclass(frozen=True, eq=False)
class NodeTables:
    """Per-(ctx, rule) precomputed arrays shared by the kernel operators."""

    theta: np.ndarray
    x: np.ndarray
    z: np.ndarray
    wdens: np.ndarray  # rule weights times the theta-density
    g: np.ndarray      # weighted-kernel product g at the nodes


def node_tables(ctx: QContext, rule: QuadratureRule) -> NodeTables:
    key = (ctx.q, ctx.eps_product, rule.key)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    theta = rule.nodes
    z = np.exp(1j * theta)
    base = ctx.sqrt_q
    gz = qpoch_inf_array(-ctx.q4 * z, base, ctx.eps_product)
    g = np.abs(gz) ** 2
    tables = NodeTables(
        theta=theta,
        x=np.cos(theta),
        z=z,
        wdens=rule.weights * theta_density(theta, ctx),
        g=g,
    )
    if len(_TABLE_CACHE) > 64:
        _TABLE_CACHE.pop(next(iter(_TABLE_CACHE)))
    _TABLE_CACHE[key] = tables
    return tables
