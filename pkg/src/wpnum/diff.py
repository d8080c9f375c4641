"""(k, l)-differentials on the disk, hyperbolic L^p norms, and the map
between quadratic and Beltrami differentials.

A differential of bidegree ``(k, l)`` transforms under a holomorphic chart
change ``g`` as ``h_V(w) = h_U(g(w)) g'(w)**k conj(g'(w))**l``; its pointwise
size ``|h| rho**(-m)`` with ``m = k + l`` is chart independent, and

    ||h||_p**p = integral of |h|**p * rho**(2 - m p) dA.

Polynomial data is held by coefficients::

    h(z) = (1 - |z|**2)**weight_power * P(z)      (or conj(P(z)))

for which the L^2 norm is a finite beta-function sum.  Anything else is held
as a callable and integrated by quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import beta

from . import quad
from ._grid import DEFAULT_SUP_GRID, polar_sup
from .errors import BidegreeError, DivergenceError, DomainError, ParameterError

SQRT_12_OVER_PI = math.sqrt(12 / math.pi)
DEFAULT_DEGREE = 32


def harmonic_weight(n):
    """``w_n = 2 pi / ((n+1)(n+2)(n+3))``: squared L^2 norm of ``(1-|z|^2)^2 conj(z^n)``."""
    n = np.asarray(n, dtype=float)
    return 2 * np.pi / ((n + 1) * (n + 2) * (n + 3))


def _one_minus_r2(z):
    return 1.0 - np.abs(z) ** 2


def _density(domain):
    if domain == "disk":
        return lambda z: 1.0 / _one_minus_r2(z)
    if domain == "annulus":
        return lambda z: 1.0 / np.abs(_one_minus_r2(z))
    if domain == "halfplane":
        return lambda z: 1.0 / np.imag(z)
    raise ParameterError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class Differential:
    """A ``(k, l)``-differential on a model domain.

    Either ``coeffs`` (coefficient form, see module docstring) or
    ``evaluator`` must be given.
    """

    k: int
    l: int
    coeffs: np.ndarray | None = None
    conjugate: bool = False
    weight_power: int = 0
    evaluator: Callable | None = field(default=None, compare=False)
    domain: str = "disk"

    def __post_init__(self):
        if (self.coeffs is None) == (self.evaluator is None):
            raise ParameterError("give exactly one of coeffs or evaluator")
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))

    @property
    def m(self) -> int:
        return self.k + self.l

    @property
    def is_series(self) -> bool:
        return self.coeffs is not None

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.evaluator is not None:
            return np.asarray(self.evaluator(z), dtype=complex)
        v = P.polyval(z, self.coeffs)
        if self.conjugate:
            v = np.conj(v)
        if self.weight_power:
            v = v * _one_minus_r2(z) ** self.weight_power
        return v

    def size(self, z):
        """Chart-independent pointwise modulus ``|h| rho**(-m)``."""
        z = np.asarray(z, dtype=complex)
        if self.domain in ("disk", "annulus"):
            return np.abs(self(z)) * np.abs(_one_minus_r2(z)) ** self.m
        return np.abs(self(z)) * _density(self.domain)(z) ** (-self.m)

    def scaled(self, c: complex) -> "Differential":
        if self.is_series:
            # conj(c' P) = c conj(P) needs c' = conj(c)
            return replace(self, coeffs=self.coeffs * (np.conj(c) if self.conjugate else c))
        f = self.evaluator
        return replace(self, evaluator=lambda z: c * f(z))


def zero(k: int, l: int) -> Differential:
    return Differential(k, l, coeffs=[0.0])


def quadratic_differential(coeffs, antiholomorphic: bool = True) -> Differential:
    """Polynomial quadratic differential.

    ``antiholomorphic=True`` gives ``conj(psi(z)) dzbar**2`` of bidegree
    ``(0, 2)``; otherwise ``psi(z) dz**2`` of bidegree ``(2, 0)``.
    """
    if antiholomorphic:
        return Differential(0, 2, coeffs=coeffs, conjugate=True)
    return Differential(2, 0, coeffs=coeffs)


@dataclass(frozen=True)
class HarmonicBeltrami:
    """Harmonic Beltrami differential ``(1 - |z|^2)^2 conj(phi(z)) dzbar/dz`` on the disk."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return _one_minus_r2(z) ** 2 * np.conj(P.polyval(z, self.coeffs))

    def phi(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def __add__(self, other: "HarmonicBeltrami") -> "HarmonicBeltrami":
        n = max(self.coeffs.size, other.coeffs.size)
        return HarmonicBeltrami(_pad(self.coeffs, n) + _pad(other.coeffs, n))

    def __sub__(self, other: "HarmonicBeltrami") -> "HarmonicBeltrami":
        return self + other.scaled(-1)

    def scaled(self, c: complex) -> "HarmonicBeltrami":
        """``c * mu``; the holomorphic factor picks up ``conj(c)``."""
        return HarmonicBeltrami(np.conj(c) * self.coeffs)

    def to_differential(self) -> Differential:
        return Differential(-1, 1, coeffs=self.coeffs, conjugate=True, weight_power=2)

    def l2_norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.coeffs) ** 2 * harmonic_weight(np.arange(self.coeffs.size)))))

    def sup_norm(self, grid=DEFAULT_SUP_GRID) -> float:
        return sup_norm(self.to_differential(), grid=grid)


def _pad(c, n):
    out = np.zeros(n, dtype=complex)
    out[: c.size] = c
    return out


# ---------------------------------------------------------------- transforms

def transform_differential(h: Differential, g, domain: str | None = None) -> Differential:
    """Pull ``h`` back along the holomorphic map ``g`` (callable with ``.derivative``)."""
    k, l = h.k, h.l

    def pulled(w):
        gw = np.asarray(g(w), dtype=complex)
        if h.domain == "disk" and np.any(np.abs(gw) >= 1):
            raise DomainError("g(w) leaves the unit disk")
        if h.domain == "halfplane" and np.any(gw.imag <= 0):
            raise DomainError("g(w) leaves the upper half-plane")
        dg = np.asarray(g.derivative(w), dtype=complex)
        return h(gw) * dg**k * np.conj(dg) ** l

    return Differential(k, l, evaluator=pulled, domain=domain or h.domain)


def beltrami_from_quadratic(psi: Differential) -> Differential:
    """The isometry from ``(0, 2)``- to ``(-1, 1)``-differentials: multiply by ``rho**-2``."""
    if (psi.k, psi.l) != (0, 2):
        raise BidegreeError(f"expected a (0, 2)-differential, got ({psi.k}, {psi.l})")
    if psi.domain != "disk":
        raise ParameterError("only the disk model is supported")
    if psi.is_series:
        return replace(psi, k=-1, l=1, weight_power=psi.weight_power + 2)
    f = psi.evaluator
    return Differential(-1, 1, evaluator=lambda z: f(z) * _one_minus_r2(z) ** 2)


def quadratic_from_beltrami(mu: Differential) -> Differential:
    """Inverse of :func:`beltrami_from_quadratic`."""
    if (mu.k, mu.l) != (-1, 1):
        raise BidegreeError(f"expected a (-1, 1)-differential, got ({mu.k}, {mu.l})")
    if mu.is_series:
        return replace(mu, k=0, l=2, weight_power=mu.weight_power - 2)
    f = mu.evaluator
    return Differential(0, 2, evaluator=lambda z: f(z) / _one_minus_r2(z) ** 2)


@dataclass(frozen=True)
class SchifferDilatation:
    value: complex
    quasiconformal: bool


def schiffer_dilatation(eps: complex) -> SchifferDilatation:
    """Constant dilatation of ``z -> z + eps * conj(z)``; flagged when ``|eps| >= 1``."""
    eps = complex(eps)
    return SchifferDilatation(eps, abs(eps) < 1)


def schiffer_map(z, eps: complex):
    z = np.asarray(z, dtype=complex)
    out = z + eps * np.conj(z)
    return out if out.ndim else complex(out)


# --------------------------------------------------------------------- norms

def _exact_l2_squared(h: Differential) -> float:
    # |h|^2 rho^{2-2m} = (1-u)^e |P|^2,  e = 2 w + 2 m - 2
    e = 2 * h.weight_power + 2 * h.m - 2
    a2 = np.abs(h.coeffs) ** 2
    if not np.any(a2):
        return 0.0
    if e <= -1:
        raise DivergenceError(f"weight (1-|z|^2)^{e} is not integrable on the disk")
    n = np.arange(a2.size)
    return float(np.pi * np.sum(a2 * beta(n + 1, e + 1)))


def _integrand(h: Differential, p: float):
    rho = _density(h.domain)
    expo = 2 - h.m * p
    return lambda z: np.abs(h(z)) ** p * rho(z) ** expo


def divergence_check(func, n_radial=16, n_angular=64, levels=14, threshold=0.9) -> bool:
    """True if ``integral of func`` over the disk appears to diverge at the boundary.

    Integrates ``func`` over the dyadic shells ``1 - 2**-(j-1) < |z| < 1 - 2**-j``
    and reports divergence when the shell contributions stop decaying (ratio
    of consecutive shells above ``threshold`` for the last four shells).
    """
    radii = [0.0] + [1 - 2.0**-j for j in range(1, levels + 1)]
    shells = []
    for a, b in zip(radii[:-1], radii[1:]):
        rule = quad.disk_rule(n_radial, n_angular, b) if a == 0 else quad.annulus_rule(b, n_radial, n_angular, r_inner=a)
        shells.append(abs(quad.integrate(rule, func)))
    tail = shells[-5:]
    ratios = [t1 / t0 for t0, t1 in zip(tail[:-1], tail[1:]) if t0 > 0]
    return len(ratios) == 4 and min(ratios) > threshold


def lp_norm(h: Differential, p: float = 2, rule: quad.QuadratureRule | None = None,
            exact: bool = False, grid=DEFAULT_SUP_GRID) -> float:
    """Hyperbolic L^p norm of ``h`` for ``1 <= p <= inf``.

    ``exact=True`` uses the coefficient formula (``p = 2`` only).  Otherwise
    the integral is taken with ``rule``; when the rule reaches the unit circle
    and the weight ``rho**(2 - m p)`` is singular there, a shell test runs
    first and :class:`DivergenceError` is raised if the integral diverges.
    ``p = inf`` evaluates the supremum on a polar grid.
    """
    p = float(p)
    if not 1 <= p <= math.inf:
        raise ParameterError(f"p must lie in [1, inf], got {p}")
    if p == math.inf:
        return sup_norm(h, grid=grid)
    if exact:
        if not h.is_series:
            raise ParameterError("exact norms need the coefficient representation")
        if p != 2:
            raise ParameterError("exact norms are available for p = 2 only")
        return math.sqrt(_exact_l2_squared(h))
    if rule is None:
        raise ParameterError("give a quadrature rule or exact=True")
    f = _integrand(h, p)
    if (h.domain == "disk" and rule.domain == ("disk", 1.0)
            and 2 - h.m * p > 0 and divergence_check(f)):
        raise DivergenceError("truncated integrals grow without bound near |z| = 1")
    val = quad.integrate(rule, f).real
    return max(val, 0.0) ** (1 / p)


def sup_norm(h: Differential, radius: float = 1.0, grid=DEFAULT_SUP_GRID) -> float:
    """``sup |h| rho**(-m)`` over ``|z| <= radius`` (disk model)."""
    if h.domain != "disk":
        raise ParameterError("sup_norm is implemented on the disk model")
    r_hi = radius if radius < 1 else 1 - 1e-12
    val, _ = polar_sup(h.size, 0.0, r_hi, *grid)
    return val


def interior_bound_ratio(mu: HarmonicBeltrami, radius: float = 0.9, grid=(128, 256)) -> float:
    """``sup_{|z| <= radius} |mu| / ||mu||_2``: an empirical value of the interior constant."""
    n2 = mu.l2_norm()
    if n2 == 0:
        return 0.0
    return sup_norm(mu.to_differential(), radius=radius, grid=grid) / n2


def sup_norm_batch(mus, grid=(128, 256)) -> np.ndarray:
    """``sup |mu|`` for many harmonic Beltramis at once (shared grid)."""
    from ._grid import power_sum_sup_batch

    K = max(m.coeffs.size for m in mus)
    C = np.stack([_pad(m.coeffs, K) for m in mus], axis=1)
    return power_sum_sup_batch(C, np.arange(K), lambda r: (1 - r * r) ** 2, 0.0, 1.0, *grid)


def random_harmonic(rng: np.random.Generator, degree: int) -> HarmonicBeltrami:
    """Complex Gaussian coefficients ``a_0..a_degree``."""
    a = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return HarmonicBeltrami(a)
