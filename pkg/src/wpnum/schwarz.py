"""Truncated power series, pre-Schwarzian and Schwarzian derivatives, and the
Ahlfors-Weill reflection.

Maps are always held by Taylor coefficients; derivatives are exact series
operations.  A series carries ``coeffs[0..N]`` and is trusted through degree
``N``: differentiation lowers that by one and products keep the minimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ._grid import DEFAULT_SUP_GRID, polar_sup
from .diff import SQRT_12_OVER_PI, harmonic_weight
from .errors import DomainError, ParameterError


class NotLocallyUnivalent(ValueError):
    """``f'(0) = 0``: the pre-Schwarzian is not holomorphic at the origin."""


@dataclass(frozen=True)
class PowerSeries:
    coeffs: np.ndarray
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        out = P.polyval(np.asarray(z, dtype=complex), self.coeffs)
        return out if np.ndim(out) else complex(out)

    def _binary(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other] + [0] * self.degree)
        n = min(self.coeffs.size, other.coeffs.size)
        return self.coeffs[:n], other.coeffs[:n], min(self.radius, other.radius)

    def __add__(self, other):
        a, b, rad = self._binary(other)
        return PowerSeries(a + b, rad)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, rad = self._binary(other)
        return PowerSeries(a - b, rad)

    def __neg__(self):
        return PowerSeries(-self.coeffs, self.radius)

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self.coeffs * other, self.radius)
        a, b, rad = self._binary(other)
        return PowerSeries(np.convolve(a, b)[: a.size], rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return PowerSeries(self.coeffs / other, self.radius)
        return self * other.reciprocal()

    def deriv(self) -> "PowerSeries":
        if self.degree == 0:
            return PowerSeries([0.0], self.radius)
        return PowerSeries(self.coeffs[1:] * np.arange(1, self.coeffs.size), self.radius)

    def integral(self, constant: complex = 0) -> "PowerSeries":
        """Antiderivative; trusted one degree further than ``self``."""
        c = np.empty(self.coeffs.size + 1, dtype=complex)
        c[0] = constant
        c[1:] = self.coeffs / np.arange(1, self.coeffs.size + 1)
        return PowerSeries(c, self.radius)

    def padded(self, degree: int) -> "PowerSeries":
        """Same polynomial with explicit zero coefficients up to ``degree``."""
        if degree <= self.degree:
            return self
        return PowerSeries(np.concatenate([self.coeffs, np.zeros(degree - self.degree)]), self.radius)

    def reciprocal(self) -> "PowerSeries":
        c = self.coeffs
        if c[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        b = np.zeros_like(c)
        b[0] = 1 / c[0]
        for n in range(1, c.size):
            b[n] = -np.dot(c[1 : n + 1], b[n - 1 :: -1][:n]) / c[0]
        return PowerSeries(b, self.radius)

    def exp(self) -> "PowerSeries":
        """``exp`` of the series via ``E' = g' E``."""
        g = self.coeffs
        dg = g[1:] * np.arange(1, g.size)
        e = np.zeros_like(g)
        e[0] = np.exp(g[0])
        for n in range(g.size - 1):
            e[n + 1] = np.dot(dg[: n + 1], e[n::-1]) / (n + 1)
        return PowerSeries(e, self.radius)

    def truncate(self, degree: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: degree + 1], self.radius)


def series_from_function_taylor(coeffs, radius=1.0) -> PowerSeries:
    return PowerSeries(coeffs, radius)


def moebius_compose(a, b, c, d, f: PowerSeries) -> PowerSeries:
    """Series of ``(a f + b) / (c f + d)``."""
    return (f * a + b) * (f * c + d).reciprocal()


@dataclass(frozen=True)
class WPCoordinates:
    pre_schwarzian: PowerSeries
    derivative_at_0: complex

    def __post_init__(self):
        if self.derivative_at_0 == 0:
            raise ParameterError("f'(0) must be nonzero")


def _check_univalent(f: PowerSeries):
    if f.degree < 1 or f.coeffs[1] == 0:
        raise NotLocallyUnivalent("f'(0) = 0")


def pre_schwarzian(f: PowerSeries) -> PowerSeries:
    """``f''/f'``, trusted through degree ``N - 2``."""
    _check_univalent(f)
    d1 = f.deriv()
    d2 = d1.deriv()
    return d2 * d1.truncate(d2.degree).reciprocal()


def wp_coordinates(f: PowerSeries) -> WPCoordinates:
    return WPCoordinates(pre_schwarzian(f), complex(f.coeffs[1]))


def psi_map(psi: PowerSeries) -> tuple[PowerSeries, complex]:
    """``psi -> (psi' - psi^2 / 2, psi(0))``."""
    d = psi.deriv()
    return d - (psi * psi).truncate(d.degree) * 0.5, complex(psi.coeffs[0])


def schwarzian(f: PowerSeries) -> PowerSeries:
    """``f'''/f' - 3/2 (f''/f')^2``.

    Computed from the third derivative directly; :func:`psi_map` applied to
    :func:`pre_schwarzian` is the independent route to the same series.
    """
    _check_univalent(f)
    d1 = f.deriv()
    d2 = d1.deriv()
    d3 = d2.deriv()
    inv = d1.truncate(d3.degree).reciprocal()
    ratio = d2.truncate(d3.degree) * inv
    return d3 * inv - ratio * ratio * 1.5


def solve_pre_schwarzian(S: PowerSeries, a0: complex = 0) -> PowerSeries:
    """Series ``A`` with ``A' - A^2/2 = S`` and ``A(0) = a0``.

    ``(n+1) A_{n+1} = S_n + 1/2 sum_{j<=n} A_j A_{n-j}``; the result has one
    more trusted coefficient than ``S``.
    """
    s = S.coeffs
    A = np.zeros(s.size + 1, dtype=complex)
    A[0] = a0
    for n in range(s.size):
        A[n + 1] = (s[n] + 0.5 * np.dot(A[: n + 1], A[n::-1])) / (n + 1)
    return PowerSeries(A, S.radius)


def map_from_pre_schwarzian(A: PowerSeries, derivative_at_0: complex = 1) -> PowerSeries:
    """``f`` with ``f(0) = 0``, ``f'(0) = derivative_at_0`` and ``f''/f' = A``.

    Trusted through degree ``deg A + 2``.
    """
    log_fp = A.integral(np.log(complex(derivative_at_0)))
    return log_fp.exp().integral(0)


def map_from_schwarzian(S: PowerSeries, a0: complex = 0, derivative_at_0: complex = 1,
                        degree: int | None = None) -> PowerSeries:
    """Univalent-candidate ``f`` with Schwarzian ``S`` and ``f''/f'(0) = a0``.

    ``S`` is treated as an exact polynomial and zero-padded so ``f`` is
    trusted through ``degree`` (default ``deg S + 3``).
    """
    if degree is not None:
        S = S.padded(degree - 3)
    return map_from_pre_schwarzian(solve_pre_schwarzian(S, a0), derivative_at_0)


# --------------------------------------------------------------------- norms

def bergman_norms(A: PowerSeries | None = None, S: PowerSeries | None = None):
    """``(||A||, ||S||)`` with ``||A||^2 = int |A|^2 dA`` and
    ``||S||^2 = int (1-|z|^2)^2 |S|^2 dA`` over the disk (coefficient-exact).

    Either argument may be ``None``; its slot is then ``None``.
    """
    na = ns = None
    if A is not None:
        c = np.abs(A.coeffs) ** 2
        na = math.sqrt(float(np.sum(c * np.pi / np.arange(1, c.size + 1))))
    if S is not None:
        c = np.abs(S.coeffs) ** 2
        ns = math.sqrt(float(np.sum(c * harmonic_weight(np.arange(c.size)))))
    return na, ns


def bergman_norms_quadrature(rule, A: PowerSeries | None = None, S: PowerSeries | None = None):
    """Quadrature counterpart of :func:`bergman_norms`."""
    from .quad import integrate

    na = ns = None
    if A is not None:
        na = math.sqrt(integrate(rule, lambda z: np.abs(A(z)) ** 2).real)
    if S is not None:
        ns = math.sqrt(integrate(rule, lambda z: (1 - np.abs(z) ** 2) ** 2 * np.abs(S(z)) ** 2).real)
    return na, ns


def weighted_sup(S: PowerSeries, grid=DEFAULT_SUP_GRID) -> float:
    """``sup_{|z|<1} (1-|z|^2)^2 |S(z)|``."""
    val, _ = polar_sup(lambda z: (1 - np.abs(z) ** 2) ** 2 * np.abs(S(z)), 0.0, 1.0, *grid)
    return val


def nehari_tnt_check(S: PowerSeries, grid=DEFAULT_SUP_GRID):
    """``(sup, sqrt(12/pi) ||S||, sup / bound)``; the ratio is 0 when ``S = 0``."""
    sup = weighted_sup(S, grid)
    _, ns = bergman_norms(S=S)
    bound = SQRT_12_OVER_PI * ns
    return sup, bound, (sup / bound if bound > 0 else 0.0)


def monomial_sup_closed_form(n: int) -> float:
    """``max_{0<=r<=1} (1-r^2)^2 r^n``, attained at ``r^2 = n / (n + 4)``."""
    if n == 0:
        return 1.0
    u = n / (n + 4)
    return (1 - u) ** 2 * u ** (n / 2)


# ------------------------------------------------------------- Ahlfors-Weill

def ahlfors_weill_dilatation(S: PowerSeries, z):
    """Dilatation of the Ahlfors-Weill reflection at ``1/conj(z)``, as a function of ``z``.

    ``-(1-|z|^2)^2 / 2 * z^2 / conj(z)^2 * S(z)``; 0 at ``z = 0``.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("need |z| < 1")
    phase = np.ones_like(z)
    nz = z != 0
    phase[nz] = z[nz] ** 2 / np.conj(z[nz]) ** 2
    out = -0.5 * (1 - np.abs(z) ** 2) ** 2 * phase * P.polyval(z, S.coeffs)
    out = np.where(nz, out, 0)
    return out if out.ndim else complex(out)


def aw_l2_identity_check(S: PowerSeries, rule):
    """Both sides of ``int |m|^2 / (1-|z|^2)^2 = 1/4 int (1-|z|^2)^2 |S|^2``.

    The left side integrates the dilatation samples; the right side is the
    coefficient-exact Bergman norm.  Returns ``(lhs, rhs, lhs / rhs)`` with
    ratio 1 when both vanish.
    """
    from .quad import integrate

    lhs = integrate(rule, lambda z: np.abs(ahlfors_weill_dilatation(S, z)) ** 2
                    / (1 - np.abs(z) ** 2) ** 2).real
    _, ns = bergman_norms(S=S)
    rhs = 0.25 * ns**2
    if rhs == 0:
        return lhs, rhs, (1.0 if lhs == 0 else math.inf)
    return lhs, rhs, lhs / rhs


def aw_l2_identity_quadrature(S: PowerSeries, rule):
    """Same as :func:`aw_l2_identity_check` with the right side also by quadrature."""
    from .quad import integrate

    lhs = integrate(rule, lambda z: np.abs(ahlfors_weill_dilatation(S, z)) ** 2
                    / (1 - np.abs(z) ** 2) ** 2).real
    rhs = 0.25 * integrate(rule, lambda z: (1 - np.abs(z) ** 2) ** 2 * np.abs(S(z)) ** 2).real
    if rhs == 0:
        return lhs, rhs, (1.0 if lhs == 0 else math.inf)
    return lhs, rhs, lhs / rhs


def guohui_ratio(mu, S: PowerSeries, rule) -> float:
    """``||S||^2 / ||mu||^2`` for a reflected dilatation ``mu`` (given on the disk).

    ``||mu||^2 = int |mu(z)|^2 / (1-|z|^2)^2 dA``, which equals the hyperbolic
    L^2 norm of the dilatation on the exterior disk.  Returns ``nan`` when
    ``mu`` vanishes.  The result is a lower bound for the constant in the
    Schwarzian-versus-dilatation estimate; it is recorded, not asserted.
    """
    from .quad import integrate

    den = integrate(rule, lambda z: np.abs(mu(z)) ** 2 / (1 - np.abs(z) ** 2) ** 2).real
    if den == 0:
        return math.nan
    _, ns = bergman_norms(S=S)
    return ns**2 / den


def psi_band_ratio(A: PowerSeries) -> float:
    """``(||S||^2 + |A(0)|^2) / ||A||^2`` where ``(S, A(0)) = psi_map(A)``.

    ``A`` is taken as an exact polynomial, so it is zero-padded before the
    square is formed.
    """
    S, a0 = psi_map(A.padded(2 * A.degree + 1))
    na, _ = bergman_norms(A=A)
    _, ns = bergman_norms(S=S)
    return (ns**2 + abs(a0) ** 2) / na**2


def weighted_sup_batch(series, grid=(128, 256)) -> np.ndarray:
    """:func:`weighted_sup` for many power series at once."""
    from ._grid import power_sum_sup_batch

    K = max(s.coeffs.size for s in series)
    C = np.zeros((K, len(series)), dtype=complex)
    for b, s in enumerate(series):
        C[: s.coeffs.size, b] = s.coeffs
    return power_sum_sup_batch(C, np.arange(K), lambda r: (1 - r * r) ** 2, 0.0, 1.0, *grid)


def random_schwarzian(rng: np.random.Generator, degree: int, scale: float = 1.0) -> PowerSeries:
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeries(scale * c)
