"""The weighted Bergman projection onto harmonic Beltrami differentials.

``K(nu)(z) = 3/pi (1-|z|^2)^2 int_D conj(nu(zeta)) / (1 - conj(zeta) z)^4 dA``.
Expanding the kernel, ``K(nu) = (1-|z|^2)^2 g`` with

    g_n = 3/pi * binom(n+3, 3) * conj(M_n),   M_n = int_D nu(zeta) zeta^n dA.

``K`` is conjugate-linear.  ``P(nu) = conj(K(nu)) = (1-|z|^2)^2 conj(g)`` is
the linear projection: the harmonic Beltrami with holomorphic factor ``g``.
It fixes harmonic Beltramis and kills every ``nu`` whose moments vanish.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from . import quad
from ._grid import polar_sup
from .diff import DEFAULT_DEGREE, HarmonicBeltrami
from .errors import DomainError, ParameterError
from .schwarz import PowerSeries

DEFAULT_RULE = (64, 256)
DEFAULT_TRIVIAL_TOL = 1e-8


class NotABeltramiDifferential(ValueError):
    """``sup |mu| >= 1``: not the dilatation of a quasiconformal map."""


@dataclass(frozen=True)
class MomentVector:
    """``M_0..M_N`` of a Beltrami differential against ``zeta^n``."""

    values: np.ndarray

    @property
    def truncation(self) -> int:
        return self.values.size - 1


def default_rule():
    return quad.disk_rule(*DEFAULT_RULE)


def _samples(nu, rule):
    if callable(nu):
        return np.broadcast_to(np.asarray(nu(rule.nodes), dtype=complex), rule.nodes.shape)
    return np.asarray(nu, dtype=complex)


def moments(nu, N: int = DEFAULT_DEGREE, rule=None) -> MomentVector:
    """Moments ``M_n = int nu(zeta) zeta^n dA`` for ``n = 0..N``."""
    if N < 0:
        raise ParameterError("N must be >= 0")
    rule = rule or default_rule()
    v = _samples(nu, rule)
    rows = np.empty((N + 1, v.size), dtype=complex)
    rows[0] = v
    for n in range(1, N + 1):
        rows[n] = rows[n - 1] * rule.nodes
    return MomentVector(quad.integrate_many(rule, rows))


def kernel_coefficients(N: int) -> np.ndarray:
    """``3/pi * binom(n+3, 3)`` for ``n = 0..N``."""
    n = np.arange(N + 1)
    return 3 / math.pi * comb(n + 3, 3, exact=False)


def k_project_series(nu, N: int = DEFAULT_DEGREE, rule=None) -> PowerSeries:
    """Holomorphic factor ``g`` of ``K(nu) = (1-|z|^2)^2 g``, through degree ``N``."""
    M = moments(nu, N, rule).values
    return PowerSeries(kernel_coefficients(N) * np.conj(M))


def k_project_direct(nu, z, rule=None):
    """``K(nu)(z)`` by direct quadrature of the kernel integral.

    The kernel peaks near ``zeta = z``; the default 64x256 rule resolves it
    to about 1e-6 for ``|z| <= 0.8``.
    """
    rule = rule or default_rule()
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(z) >= 1):
        raise DomainError("need |z| < 1")
    cv = np.conj(_samples(nu, rule))
    zeta_bar = np.conj(rule.nodes)
    out = np.empty(z.shape, dtype=complex)
    for i, zi in enumerate(z):
        out[i] = quad.integrate(rule, cv / (1 - zeta_bar * zi) ** 4)
    out *= 3 / math.pi * (1 - np.abs(z) ** 2) ** 2
    return out if out.size > 1 else complex(out[0])


def p_project(nu, N: int = DEFAULT_DEGREE, rule=None) -> HarmonicBeltrami:
    """Linear projection onto harmonic Beltrami differentials (truncated at degree ``N``)."""
    M = moments(nu, N, rule).values
    return HarmonicBeltrami(kernel_coefficients(N) * np.conj(M))


def is_infinitesimally_trivial(nu, N: int = DEFAULT_DEGREE, tol: float = DEFAULT_TRIVIAL_TOL,
                               rule=None):
    """``(max_n |M_n| <= tol, |M_n| for n = 0..N)``."""
    res = np.abs(moments(nu, N, rule).values)
    return bool(res.max() <= tol), res


def beltrami_sup_on_grid(mu, grid=(64, 256)) -> float:
    val, _ = polar_sup(lambda z: np.abs(mu(z)), 0.0, 1 - 1e-12, *grid, refine=False)
    return val


def decompose(mu, N: int = DEFAULT_DEGREE, rule=None, tol: float = DEFAULT_TRIVIAL_TOL,
              check_grid=(64, 256)):
    """Split ``mu`` into its harmonic part and an infinitesimally trivial remainder.

    Returns ``(harmonic, trivial, residuals)``.  ``trivial`` is the callable
    ``z -> mu(z) - harmonic(z)`` and ``residuals`` are the moduli of its
    moments.  The triviality tolerance is relative to ``sup |mu|``.
    Raises :class:`NotABeltramiDifferential` when ``sup |mu| >= 1`` on the grid.
    """
    rule = rule or default_rule()
    sup = beltrami_sup_on_grid(mu, check_grid)
    if sup >= 1:
        raise NotABeltramiDifferential(f"sup |mu| = {sup:.6g} >= 1")
    harmonic = p_project(mu, N, rule)

    def trivial(z):
        return mu(z) - harmonic(z)

    ok, res = is_infinitesimally_trivial(trivial, N, tol * max(sup, 1e-300), rule)
    return harmonic, trivial, res


# ------------------------------------------------------------ test families

def radial_moment_free(coeffs):
    """``p(|zeta|^2)`` with the constant term adjusted so its integral over the disk is 0.

    ``coeffs`` are the coefficients of ``p`` in ``u = |zeta|^2``; ``int u^k dA = pi/(k+1)``.
    """
    c = np.array(coeffs, dtype=complex)
    c[0] = -np.sum(c[1:] / np.arange(2, c.size + 1))
    return lambda z: np.polynomial.polynomial.polyval(np.abs(z) ** 2, c)


def angular_moment_free(a: int, b: int, scale: complex = 1.0):
    """``conj(zeta)^a zeta^b q(|zeta|^2)`` with every moment zero.

    For ``b > a`` the moments vanish by angular symmetry; for ``a > b`` the
    radial factor ``q = |zeta|^2 - c`` is tuned so the one surviving moment
    (``n = a - b``) is zero.
    """
    if a == b:
        raise ParameterError("a == b is a radial mode; use radial_moment_free")
    if b > a:
        return lambda z: scale * np.conj(z) ** a * z**b
    # int |zeta|^{2a} (|zeta|^2 - c) dA = pi/(a+2) - c pi/(a+1)
    c = (a + 1) / (a + 2)
    return lambda z: scale * np.conj(z) ** a * z**b * (np.abs(z) ** 2 - c)
