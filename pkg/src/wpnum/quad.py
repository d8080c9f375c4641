"""Polar product quadrature on the unit disk and on round annuli.

Radial nodes are Gauss-Legendre in ``u = |z|**2`` (so ``dA = du dtheta / 2``);
angular nodes are the equispaced trapezoid rule, offset by half a step so no
node sits on the real axis.  Every integrand used in this package is a
polynomial in ``|z|**2`` times a trigonometric polynomial in the angle, which
this pair integrates exactly once the rule is large enough.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError, ParameterError


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive area weights for one region.

    ``domain`` is ``("disk", R)`` for ``|z| < R`` or ``("annulus", r_in, r_out)``
    for ``r_in < |z| < r_out``.  ``degree`` is the total degree in ``z, zbar``
    up to which monomials are integrated exactly.
    """

    domain: tuple
    nodes: np.ndarray
    weights: np.ndarray
    n_radial: int
    n_angular: int
    degree: int
    radii: np.ndarray = field(repr=False)
    angles: np.ndarray = field(repr=False)

    def __len__(self):
        return self.nodes.size

    @property
    def area(self) -> float:
        """Exact Euclidean area of the declared region."""
        if self.domain[0] == "disk":
            return math.pi * self.domain[1] ** 2
        _, a, b = self.domain
        return math.pi * (b * b - a * a)

    def contains(self, z) -> np.ndarray:
        r = np.abs(np.asarray(z))
        if self.domain[0] == "disk":
            return r < self.domain[1]
        return (r > self.domain[1]) & (r < self.domain[2])


@lru_cache(maxsize=64)
def _polar_rule(domain, u_lo, u_hi, n_radial, n_angular):
    if n_radial < 1:
        raise ParameterError(f"n_radial must be >= 1, got {n_radial}")
    if n_angular < 4:
        raise ParameterError(f"n_angular must be >= 4, got {n_angular}")
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    u = 0.5 * (u_hi - u_lo) * x + 0.5 * (u_hi + u_lo)
    wu = 0.5 * (u_hi - u_lo) * wx
    radii = np.sqrt(u)
    angles = 2 * np.pi * (np.arange(n_angular) + 0.5) / n_angular
    # dA = r dr dtheta = du dtheta / 2
    nodes = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    weights = np.repeat(0.5 * wu * (2 * np.pi / n_angular), n_angular)
    degree = min(2 * n_radial - 1, n_angular - 1)
    for a in (nodes, weights, radii, angles):
        a.flags.writeable = False
    return QuadratureRule(domain, nodes, weights, n_radial, n_angular, degree, radii, angles)


def disk_rule(n_radial: int, n_angular: int, max_radius: float = 1.0) -> QuadratureRule:
    """Product rule on ``|z| < max_radius``.

    >>> abs(integrate(disk_rule(20, 64), 1.0) - np.pi) < 1e-12
    True
    """
    if not 0 < max_radius <= 1:
        raise ParameterError(f"max_radius must lie in (0, 1], got {max_radius}")
    return _polar_rule(("disk", float(max_radius)), 0.0, float(max_radius) ** 2, int(n_radial), int(n_angular))


def annulus_rule(r_outer: float, n_radial: int, n_angular: int, r_inner: float = 1.0) -> QuadratureRule:
    """Product rule on ``r_inner < |z| < r_outer`` (default inner radius 1)."""
    if not r_outer > r_inner:
        raise ParameterError(f"r_outer must exceed {r_inner}, got {r_outer}")
    if r_inner < 0:
        raise ParameterError("r_inner must be nonnegative")
    return _polar_rule(
        ("annulus", float(r_inner), float(r_outer)), float(r_inner) ** 2, float(r_outer) ** 2,
        int(n_radial), int(n_angular),
    )


def compensated_sum(a: np.ndarray) -> np.ndarray:
    """Sum along the last axis with error-free pairwise TwoSum steps.

    At every level neighbours ``(x, y)`` are added as ``t = x + y`` and the
    exact rounding error ``(x - (t - z)) + (y - z)`` (``z = t - x``) is kept;
    the collected errors are added back at the end.  The pairing depends
    only on the index, so the result is reproducible bit for bit.
    """
    s = np.asarray(a, dtype=float)
    errs = []
    while s.shape[-1] > 1:
        if s.shape[-1] % 2:
            s = np.concatenate([s, np.zeros(s.shape[:-1] + (1,))], axis=-1)
        x, y = s[..., 0::2], s[..., 1::2]
        t = x + y
        z = t - x
        errs.append(((x - (t - z)) + (y - z)).sum(axis=-1))
        s = t
    return s[..., 0] + (np.sum(errs, axis=0) if errs else 0.0)


def integrate(rule: QuadratureRule, f) -> complex:
    """Weighted sum of ``f`` over the rule nodes.

    ``f`` may be a scalar, an array of samples aligned with ``rule.nodes``, or a
    callable evaluated on the node array.  Real and imaginary parts are
    summed with :func:`compensated_sum`.
    """
    if callable(f):
        f = f(rule.nodes)
    vals = np.broadcast_to(np.asarray(f, dtype=complex), rule.nodes.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise NumericError(f"non-finite integrand {vals[k]} at node {k} (z={rule.nodes[k]})")
    terms = rule.weights * vals
    return complex(float(compensated_sum(terms.real)), float(compensated_sum(terms.imag)))


def integrate_many(rule: QuadratureRule, samples: np.ndarray) -> np.ndarray:
    """Integrate each row of ``samples`` (shape ``(m, len(rule))``)."""
    samples = np.asarray(samples, dtype=complex)
    bad = ~np.isfinite(samples)
    if bad.any():
        i, k = map(int, np.argwhere(bad)[0])
        raise NumericError(f"non-finite integrand in row {i} at node {k} (z={rule.nodes[k]})")
    terms = samples * rule.weights
    return compensated_sum(terms.real) + 1j * compensated_sum(terms.imag)


def disk_moment(a: int, b: int, radius: float = 1.0) -> float:
    """Closed form of the integral of ``z**a * conj(z)**b`` over ``|z| < radius``."""
    if a != b:
        return 0.0
    return 2 * math.pi / (a + b + 2) * radius ** (a + b + 2)


def annulus_moment(a: int, b: int, r_outer: float, r_inner: float = 1.0) -> float:
    """Closed form of the integral of ``z**a * conj(z)**b`` over an annulus."""
    if a != b:
        return 0.0
    if a + b + 2 == 0:
        return 2 * math.pi * math.log(r_outer / r_inner)
    k = a + b + 2
    return 2 * math.pi / k * (r_outer**k - r_inner**k)
