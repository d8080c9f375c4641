"""Weil-Petersson pairing at the base point of the disk model.

``<mu, nu> = int_D mu conj(nu) lambda^2 dA`` for Beltrami differentials and
``(alpha, beta) = int_D alpha conj(beta) lambda^{-2} dA`` for quadratic ones.
On the monomial harmonic basis ``mu_n = (1-|z|^2)^2 conj(z^n)`` the Gram
matrix is diagonal with entries ``w_n = 2 pi / ((n+1)(n+2)(n+3))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import quad
from .diff import (Differential, HarmonicBeltrami, _pad, beltrami_from_quadratic,
                   divergence_check, harmonic_weight)
from .errors import BidegreeError, DivergenceError, ParameterError


def _as_callable(x):
    if isinstance(x, HarmonicBeltrami):
        return x
    if isinstance(x, Differential):
        return x
    if callable(x):
        return x
    raise TypeError(f"cannot evaluate {type(x).__name__}")


def _check_bidegree(x, kl):
    if isinstance(x, Differential) and (x.k, x.l) != kl:
        raise BidegreeError(f"expected bidegree {kl}, got ({x.k}, {x.l})")


def wp_inner(mu, nu, rule: quad.QuadratureRule | None = None) -> complex:
    """WP pairing of two Beltrami differentials on the disk.

    With ``rule=None`` both arguments must be :class:`HarmonicBeltrami` and the
    coefficient formula ``sum a_n conj(b_n) w_n`` is used.  Otherwise the
    integrand is sampled on ``rule``; a rule reaching ``|z| = 1`` triggers the
    shell divergence test first.
    """
    if rule is None:
        if not (isinstance(mu, HarmonicBeltrami) and isinstance(nu, HarmonicBeltrami)):
            raise ParameterError("exact pairing needs HarmonicBeltrami arguments")
        n = max(mu.coeffs.size, nu.coeffs.size)
        # mu conj(nu) carries conj(phi_mu) phi_nu
        a, b = _pad(mu.coeffs, n), _pad(nu.coeffs, n)
        return complex(np.sum(np.conj(a) * b * harmonic_weight(np.arange(n))))
    _check_bidegree(mu, (-1, 1))
    _check_bidegree(nu, (-1, 1))
    f, g = _as_callable(mu), _as_callable(nu)

    def integrand(z):
        return f(z) * np.conj(g(z)) / (1 - np.abs(z) ** 2) ** 2

    if rule.domain == ("disk", 1.0) and divergence_check(lambda z: np.abs(integrand(z))):
        raise DivergenceError("WP pairing diverges near the unit circle")
    return quad.integrate(rule, integrand)


def wp_inner_quadratic(alpha, beta, rule: quad.QuadratureRule | None = None) -> complex:
    """Pairing of ``(0, 2)``-differentials, computed directly with weight ``lambda^{-2}``.

    ``rule=None`` uses the coefficient formula for series-represented data.
    The value agrees with ``wp_inner`` of the corresponding Beltrami
    differentials; :func:`wp_inner_quadratic_via_beltrami` is that route.
    """
    _check_bidegree(alpha, (0, 2))
    _check_bidegree(beta, (0, 2))
    if rule is None:
        for x in (alpha, beta):
            if not (x.is_series and x.conjugate and x.weight_power == 0):
                raise ParameterError("exact pairing needs conj(polynomial) dzbar^2 data")
        n = max(alpha.coeffs.size, beta.coeffs.size)
        a, b = _pad(alpha.coeffs, n), _pad(beta.coeffs, n)
        return complex(np.sum(np.conj(a) * b * harmonic_weight(np.arange(n))))
    return quad.integrate(rule, lambda z: alpha(z) * np.conj(beta(z)) * (1 - np.abs(z) ** 2) ** 2)


def wp_inner_quadratic_via_beltrami(alpha, beta, rule: quad.QuadratureRule | None = None) -> complex:
    """``<B alpha, B beta>``: the pairing transported to Beltrami differentials."""
    ma, mb = beltrami_from_quadratic(alpha), beltrami_from_quadratic(beta)
    if rule is None:
        return wp_inner(_to_harmonic(ma), _to_harmonic(mb))
    return wp_inner(ma, mb, rule)


def _to_harmonic(d: Differential) -> HarmonicBeltrami:
    if not (d.is_series and d.conjugate and d.weight_power == 2):
        raise ParameterError("not a harmonic Beltrami differential")
    return HarmonicBeltrami(d.coeffs)


@dataclass(frozen=True)
class GramMatrix:
    matrix: np.ndarray
    basis: str

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= tol)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T)).min())

    def is_psd(self, tol: float = 1e-10) -> bool:
        return self.min_eigenvalue() >= -tol

    def to_json(self) -> str:
        return json.dumps({"basis": self.basis,
                           "re": self.matrix.real.tolist(),
                           "im": self.matrix.imag.tolist()})

    def to_csv(self) -> str:
        """Rows ``i,j,re,im``."""
        lines = ["i,j,re,im"]
        n = self.matrix.shape[0]
        for i in range(n):
            for j in range(n):
                v = self.matrix[i, j]
                lines.append(f"{i},{j},{float(v.real)!r},{float(v.imag)!r}")
        return "\n".join(lines) + "\n"


def monomial_basis(N: int) -> list[HarmonicBeltrami]:
    return [HarmonicBeltrami(np.eye(1, n + 1, n)[0]) for n in range(N + 1)]


def wp_gram(N: int, rule: quad.QuadratureRule | None = None) -> GramMatrix:
    """Gram matrix of ``mu_n = (1-|z|^2)^2 conj(z^n)``, ``n = 0..N``."""
    if N < 0:
        raise ParameterError("N must be >= 0")
    basis = monomial_basis(N)
    if rule is None:
        G = np.array([[wp_inner(a, b) for b in basis] for a in basis])
    else:
        # rows of samples; pairing = sum w mu_i conj(mu_j) lambda^2
        samples = np.array([b(rule.nodes) for b in basis])
        lam2 = 1 / (1 - np.abs(rule.nodes) ** 2) ** 2
        G = np.empty((N + 1, N + 1), dtype=complex)
        for i in range(N + 1):
            G[i] = quad.integrate_many(rule, samples[i][None, :] * np.conj(samples) * lam2[None, :])
    return GramMatrix(G, f"harmonic monomials z^0..z^{N}")
