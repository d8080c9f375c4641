"""Hyperbolic densities on the disk and half-plane, Moebius maps, pullbacks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError


def lambda_disk(z):
    """Hyperbolic density ``1 / (1 - |z|**2)`` on the unit disk."""
    z = np.asarray(z)
    s = 1.0 - np.abs(z) ** 2
    if np.any(s <= 0):
        raise DomainError("lambda_disk is defined only for |z| < 1")
    out = 1.0 / s
    return out if out.ndim else float(out)


def lambda_halfplane(z):
    """Hyperbolic density ``1 / Im z`` on the upper half-plane."""
    y = np.imag(np.asarray(z))
    if np.any(y <= 0):
        raise DomainError("lambda_halfplane is defined only for Im z > 0")
    out = 1.0 / y
    return out if np.ndim(out) else float(out)


def lambda_annulus_flat(z):
    """``1 / | |z|**2 - 1 |``: the disk density continued across the unit circle.

    On ``|z| > 1`` this is the density of the exterior disk; it is the weight
    whose inverse square appears in the annulus norms.
    """
    s = np.abs(np.abs(np.asarray(z)) ** 2 - 1.0)
    if np.any(s == 0):
        raise DomainError("density undefined on the unit circle")
    out = 1.0 / s
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class MetricDensity:
    """A positive conformal density ``rho`` on a domain tagged ``domain``."""

    domain: str
    rho: Callable

    def __call__(self, z):
        return self.rho(z)


DISK = MetricDensity("disk", lambda_disk)
HALFPLANE = MetricDensity("halfplane", lambda_halfplane)


@dataclass(frozen=True)
class HolomorphicMap:
    """A holomorphic map bundled with its derivative."""

    f: Callable
    df: Callable

    def __call__(self, z):
        return self.f(z)

    def derivative(self, z):
        return self.df(z)

    def __matmul__(self, other: "HolomorphicMap") -> "HolomorphicMap":
        # (self @ other)(z) = self(other(z))
        return HolomorphicMap(
            lambda z: self.f(other.f(z)),
            lambda z: self.df(other.f(z)) * other.df(z),
        )


@dataclass(frozen=True)
class MoebiusMap:
    """``z -> (a z + b) / (c z + d)`` with ``ad - bc != 0``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.det == 0:
            raise ParameterError("Moebius map must have ad - bc != 0")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        if np.any(den == 0):
            raise DomainError("point maps to infinity")
        out = (self.a * z + self.b) / den
        return out if out.ndim else complex(out)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        if np.any(den == 0):
            raise DomainError("derivative has a pole at this point")
        out = self.det / den**2
        return out if out.ndim else complex(out)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        m = self.matrix @ other.matrix
        return MoebiusMap(*m.ravel())

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def as_holomorphic(self) -> HolomorphicMap:
        return HolomorphicMap(self.__call__, self.derivative)


def identity_map() -> MoebiusMap:
    return MoebiusMap(1, 0, 0, 1)


def rotation(theta: float) -> MoebiusMap:
    return MoebiusMap(np.exp(1j * theta), 0, 0, 1)


def disk_automorphism(a: complex, theta: float = 0.0) -> MoebiusMap:
    """``z -> e^{i theta} (z - a) / (1 - conj(a) z)`` for ``|a| < 1``."""
    if abs(a) >= 1:
        raise ParameterError("disk automorphism needs |a| < 1")
    e = np.exp(1j * theta)
    return MoebiusMap(e, -e * a, -np.conj(a), 1)


_CAYLEY = MoebiusMap(1j, 1j, -1, 1)


def cayley(z):
    """Cayley map ``i (1 + z) / (1 - z)`` from the disk onto the upper half-plane.

    Boundary points other than the pole ``z = 1`` are accepted and land on
    the real axis.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1) or np.any(z == 1):
        raise DomainError("cayley is defined on |z| <= 1, z != 1")
    return _CAYLEY(z)


def cayley_inv(w):
    """Inverse Cayley map ``(w - i) / (w + i)``."""
    w = np.asarray(w, dtype=complex)
    if np.any(w.imag <= 0):
        raise DomainError("cayley_inv is defined on Im w > 0")
    return _CAYLEY.inverse()(w)


CAYLEY = HolomorphicMap(cayley, _CAYLEY.derivative)


def pullback_metric(g, rho: MetricDensity, domain: str | None = None) -> MetricDensity:
    """Density ``w -> rho(g(w)) |g'(w)|`` on the source domain of ``g``.

    ``g`` is any object with ``__call__`` and ``derivative``.  Evaluation
    raises :class:`DomainError` when ``g(w)`` leaves the domain of ``rho``.
    """

    def pulled(w):
        return rho(g(w)) * np.abs(g.derivative(w))

    return MetricDensity(domain or rho.domain, pulled)
