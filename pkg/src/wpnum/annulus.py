"""Laurent series on round annuli ``1 < |z| < r`` and the weighted sup/L^2 estimate.

For ``f = sum a_n z^n`` holomorphic on the annulus,

    integral over 1<|z|<r of (1-|z|^2)^2 |f|^2 dA = 2 pi sum |a_n|^2 I_n(r),
    I_n(r) = 1/2 integral_1^{r^2} rho^n (1-rho)^2 d rho,

and ``sup_{1<|z|<t} (1-|z|^2)^2 |f| <= C(r, t) * (that integral)^{1/2}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import beta, betainc

from ._grid import polar_sup
from .errors import NumericError, ParameterError

SQRT_3_OVER_PI = math.sqrt(3 / math.pi)


@dataclass(frozen=True)
class LaurentSeries:
    """Coefficients ``a_{n_min}, ..., a_{n_max}`` valid on ``inner < |z| < outer``."""

    coeffs: np.ndarray
    n_min: int = 0
    outer: float = math.inf
    inner: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))

    @property
    def n_max(self) -> int:
        return self.n_min + self.coeffs.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def coefficient(self, n: int) -> complex:
        i = n - self.n_min
        return complex(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        # Horner in z from the top, then shift by z^n_min
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * z**self.n_min if self.n_min else acc


# ------------------------------------------------------------- coefficients

def laurent_coeffs(f, n_min: int, n_max: int, radii, n_angular: int | None = None,
                   tol: float = 1e-10):
    """Recover Laurent coefficients of ``f`` from samples on circles.

    Each circle ``|z| = rho_k`` gives ``a_n rho_k^n`` by the DFT; the radii
    are combined by least squares, ``a_n = sum rho_k^n c_nk / sum rho_k^{2n}``.

    Returns ``(series, residual)`` where ``residual`` is the max relative
    mismatch between the samples and the reconstruction; content outside
    the index window shows up there.  A ``RuntimeWarning`` is not raised;
    callers compare ``residual`` to ``tol`` themselves (``ok`` flag in the
    third slot).
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2:
        raise ParameterError("need at least two sampling circles")
    if n_max < n_min:
        raise ParameterError("n_max < n_min")
    span = max(abs(n_min), abs(n_max))
    if n_angular is None:
        n_angular = 2 * (n_max - n_min) + 8
    if n_angular <= 2 * span:
        raise ParameterError(f"n_angular must exceed 2*max|n| = {2 * span}")
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    samples = np.asarray(f(z), dtype=complex) * np.ones(z.shape)
    if not np.all(np.isfinite(samples)):
        raise NumericError("non-finite samples")
    spectra = np.fft.fft(samples, axis=1) / n_angular
    idx = np.arange(n_min, n_max + 1)
    c = spectra[:, idx % n_angular]                 # c[k, n] ~ a_n rho_k^n
    pw = radii[:, None] ** idx[None, :]
    a = np.sum(pw * c, axis=0) / np.sum(pw**2, axis=0)
    series = LaurentSeries(a, n_min)
    recon = series(z)
    scale = max(float(np.max(np.abs(samples))), 1e-300)
    residual = float(np.max(np.abs(recon - samples))) / scale
    return series, residual, residual <= tol


# ------------------------------------------------------------------ moments

def _binomial_series(n, x, terms=400):
    # 1/2 int_0^x (1+s)^n s^2 ds = 1/2 sum_j binom(n, j) x^{j+3} / (j+3)
    total, coef, xp = 0.0, 1.0, x**3
    for j in range(terms):
        term = coef * xp / (j + 3)
        total += term
        if n >= 0 and j >= n:
            break
        if abs(term) < 1e-18 * abs(total):
            break
        coef *= (n - j) / (j + 1)
        xp *= x
    return 0.5 * total


def moment_I(n: int, r: float) -> float:
    """``I_n(r) = 1/2 int_1^{r^2} rho^n (1 - rho)^2 d rho`` in closed form.

    Branches: ``n >= 0`` finite binomial sum in ``r^2 - 1`` (all terms
    positive); ``n <= -4`` incomplete beta after ``rho -> 1/rho``;
    ``n = -1, -2, -3`` elementary antiderivatives with logarithms, switched
    to the convergent binomial series near ``r = 1`` to avoid cancellation.
    """
    n = int(n)
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r}")
    if r == 1:
        return 0.0
    R = r * r
    x = R - 1.0
    if n >= 0:
        return _binomial_series(n, x)
    if n <= -4:
        # rho = 1/s: int_{1/R}^1 s^{-n-4} (1-s)^2 ds = B(3, -n-3) * betainc(3, -n-3, 1 - 1/R)
        b = -n - 3
        return 0.5 * float(beta(3, b) * betainc(3, b, x / R))
    if x < 0.5:
        return _binomial_series(n, x)
    L = math.log(R)
    if n == -1:
        # int (1/rho - 2 + rho)
        val = L - 2 * x + 0.5 * (R * R - 1)
    elif n == -2:
        # int (rho^-2 - 2/rho + 1)
        val = (1 - 1 / R) - 2 * L + x
    else:
        # int (rho^-3 - 2 rho^-2 + 1/rho)
        val = 0.5 * (1 - 1 / R**2) - 2 * (1 - 1 / R) + L
    return 0.5 * val


def moments_I(indices, r: float) -> np.ndarray:
    return np.array([moment_I(int(n), r) for n in indices])


def weighted_norm_series(s: LaurentSeries, r: float) -> float:
    """``(2 pi sum |a_n|^2 I_n(r))^{1/2}``: the weighted L^2 norm over ``1 < |z| < r``."""
    a2 = np.abs(s.coeffs) ** 2
    return math.sqrt(2 * math.pi * float(np.sum(a2 * moments_I(s.indices, r))))


# ------------------------------------------------------------------ estimate

def wulf_constant(r: float, t: float) -> float:
    """The explicit constant ``C(r, t)`` of the annulus sup/L^2 estimate."""
    if not 1 < t < r:
        raise ParameterError(f"need 1 < t < r, got r={r}, t={t}")
    r2, t2 = r * r, t * t
    first = 4 / math.sqrt(2 * math.pi) * math.sqrt(r2 + t2) / (r2 - t2) * (1 - t2) ** 2 / (r2 + 3)
    return first + 4 * SQRT_3_OVER_PI * t


def wulf_pointwise_factor(z, r: float):
    """Pointwise version of the constant, evaluated at ``|z|`` in ``(1, r)``."""
    a2 = np.abs(np.asarray(z)) ** 2
    r2 = r * r
    return (4 / math.sqrt(2 * math.pi) * np.sqrt(r2 + a2) / (r2 - a2) * (1 - a2) ** 2 / (a2 + r2 + 2)
            + 4 * SQRT_3_OVER_PI * np.sqrt(a2))


def wulf_sharp_constant(r: float, t: float, n_terms: int = 400, n_grid: int = 400) -> float:
    """Best constant in the estimate, from the Cauchy-Schwarz extremal.

    ``(1-|z|^2)^2 |f(z)| <= (1-|z|^2)^2 (sum |z|^{2n} / I_n)^{1/2} / sqrt(2 pi) * ||f||``
    with equality for ``a_n = conj(z^n) / I_n``; maximised over ``1 < |z| <= t``.
    Used for reporting how much slack the explicit constant has.
    """
    if not 1 < t < r:
        raise ParameterError(f"need 1 < t < r, got r={r}, t={t}")
    idx = np.arange(-n_terms, n_terms + 1)
    with np.errstate(over="ignore"):
        mom = moments_I(idx, r)
    keep = np.isfinite(mom)          # terms with overflowing I_n contribute nothing
    idx, mom = idx[keep], mom[keep]
    rho = np.linspace(1.0, t, n_grid)[1:]
    # log-sum-exp to keep |z|^{2n} / I_n in range
    logs = 2 * np.outer(np.log(rho), idx) - np.log(mom)[None, :]
    mx = logs.max(axis=1)
    s = np.exp(mx) * np.sum(np.exp(logs - mx[:, None]), axis=1)
    vals = (1 - rho**2) ** 2 * np.sqrt(s / (2 * math.pi))
    return float(vals.max())


def sup_weighted(f, t: float, grid=(128, 512), r_inner: float = 1.0) -> float:
    """``sup (1-|z|^2)^2 |f(z)|`` over ``r_inner < |z| <= t`` (outer circle included)."""
    if t <= r_inner:
        raise ParameterError("t must exceed the inner radius")

    def g(z):
        return (1 - np.abs(z) ** 2) ** 2 * np.abs(f(z))

    val, _ = polar_sup(g, r_inner, t, *grid)
    return val


def reflect(s: LaurentSeries) -> LaurentSeries:
    """Series of ``z -> conj(f(1/conj(z)))``, i.e. ``b_{-n} = conj(a_n)``.

    Carries a series on ``1 < |z| < r`` to one on ``1/r < |z| < 1``.
    """
    return LaurentSeries(np.conj(s.coeffs[::-1]), -s.n_max, 1 / s.inner, 1 / s.outer)


def random_laurent(rng: np.random.Generator, n_min: int, n_max: int, r: float) -> LaurentSeries:
    """I.i.d. complex Gaussian coefficients, normalised to unit weighted norm on ``1<|z|<r``."""
    k = n_max - n_min + 1
    a = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    s = LaurentSeries(a, n_min, r)
    return LaurentSeries(a / weighted_norm_series(s, r), n_min, r)


def balanced_laurent(rng: np.random.Generator, n_min: int, n_max: int, r: float) -> LaurentSeries:
    """Gaussian coefficients scaled by ``I_n(r)^{-1/2}`` so every index weighs alike; unit norm."""
    idx = np.arange(n_min, n_max + 1)
    g = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    s = LaurentSeries(g / np.sqrt(moments_I(idx, r)), n_min, r)
    return LaurentSeries(s.coeffs / weighted_norm_series(s, r), n_min, r)


def extremal_laurent(z0: complex, n_min: int, n_max: int, r: float) -> LaurentSeries:
    """Truncated Cauchy-Schwarz extremal ``a_n = conj(z0^n) / I_n(r)``; unit norm.

    Within the window it maximises ``|f(z0)|`` among functions of unit norm.
    """
    idx = np.arange(n_min, n_max + 1)
    a = np.conj(complex(z0) ** idx.astype(float)) / moments_I(idx, r)
    s = LaurentSeries(a, n_min, r)
    return LaurentSeries(s.coeffs / weighted_norm_series(s, r), n_min, r)


def sup_weighted_batch(series, t: float, grid=(64, 256), r_inner: float = 1.0) -> np.ndarray:
    """:func:`sup_weighted` for many Laurent series at once."""
    from ._grid import power_sum_sup_batch

    lo = min(s.n_min for s in series)
    hi = max(s.n_max for s in series)
    exps = np.arange(lo, hi + 1)
    C = np.zeros((exps.size, len(series)), dtype=complex)
    for b, s in enumerate(series):
        C[s.n_min - lo : s.n_max - lo + 1, b] = s.coeffs
    return power_sum_sup_batch(C, exps.astype(float), lambda x: (1 - x * x) ** 2, r_inner, t, *grid)
