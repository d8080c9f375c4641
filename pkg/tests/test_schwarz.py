import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from wpnum import quad, schwarz
from wpnum.errors import DomainError
from wpnum.schwarz import PowerSeries

RULE = quad.disk_rule(64, 256)
N = 24


def taylor(expr, n=N):
    z = sp.Symbol("z")
    ser = sp.series(expr(z), z, 0, n + 1).removeO()
    return np.array([complex(ser.coeff(z, k)) for k in range(n + 1)])


def sympy_schwarzian(expr, n):
    z = sp.Symbol("z")
    f = expr(z)
    d1, d2, d3 = (sp.diff(f, z, k) for k in (1, 2, 3))
    s = sp.simplify(d3 / d1 - sp.Rational(3, 2) * (d2 / d1) ** 2)
    ser = sp.series(s, z, 0, n + 1).removeO()
    return np.array([complex(ser.coeff(z, k)) for k in range(n + 1)])


def univalent_poly(rng, degree=8, size=0.5):
    # z + sum a_k z^k with sum k |a_k| < 1 is univalent on the disk
    a = rng.standard_normal(degree - 1) + 1j * rng.standard_normal(degree - 1)
    k = np.arange(2, degree + 1)
    a *= size / np.sum(k * np.abs(a))
    return PowerSeries(np.concatenate([[0, 1], a]))


# ------------------------------------------------------------------ series


def test_series_arithmetic(rng):
    a = PowerSeries(rng.standard_normal(6))
    b = PowerSeries(1 + rng.standard_normal(6) * 0.1)
    z = 0.3 - 0.2j
    assert (a + b)(z) == pytest.approx(a(z) + b(z), abs=1e-14)
    np.testing.assert_allclose((a * b).coeffs, np.convolve(a.coeffs, b.coeffs)[:6], atol=1e-15)
    recip = b.reciprocal()
    prod = (b * recip).coeffs
    np.testing.assert_allclose(prod, np.eye(1, 6)[0], atol=1e-14)
    assert a.deriv().integral(a.coeffs[0]).coeffs == pytest.approx(a.coeffs)


def test_series_exp_matches_sympy():
    got = PowerSeries([0, 0.5, 0.2] + [0] * 10).exp().coeffs
    want = taylor(lambda z: sp.exp(sp.Rational(1, 2) * z + sp.Rational(1, 5) * z**2), 12)
    np.testing.assert_allclose(got, want, atol=1e-14)


def test_reciprocal_needs_constant():
    with pytest.raises(ZeroDivisionError):
        PowerSeries([0, 1]).reciprocal()


# ----------------------------------------------------------- pre-Schwarzian


def test_pre_schwarzian_identity():
    assert np.all(schwarz.pre_schwarzian(PowerSeries([0, 1, 0, 0, 0])).coeffs == 0)


def test_pre_schwarzian_quadratic():
    b = 0.3 - 0.1j
    A = schwarz.pre_schwarzian(PowerSeries([0, 1, b] + [0] * 8)).coeffs
    # 2b / (1 + 2bz) = sum 2b (-2b)^k z^k
    want = np.array([2 * b * (-2 * b) ** k for k in range(A.size)])
    np.testing.assert_allclose(A, want, atol=1e-15)
    assert A[:3] == pytest.approx([2 * b, -4 * b**2, 8 * b**3])


def test_pre_schwarzian_z_over_one_minus_z():
    f = PowerSeries([0] + [1] * N)
    np.testing.assert_allclose(schwarz.pre_schwarzian(f).coeffs, 2, atol=1e-12)


def test_not_locally_univalent():
    with pytest.raises(schwarz.NotLocallyUnivalent):
        schwarz.pre_schwarzian(PowerSeries([0, 0, 1, 0]))
    with pytest.raises(schwarz.NotLocallyUnivalent):
        schwarz.schwarzian(PowerSeries([1.0, 0, 1, 0]))


# --------------------------------------------------------------- Schwarzian


def test_moebius_schwarzian_vanishes():
    f = PowerSeries(taylor(lambda z: (2 * z + 1) / (sp.Rational(1, 2) * z + 3)))
    assert np.max(np.abs(schwarz.schwarzian(f).coeffs)) < 1e-12


@pytest.mark.parametrize("a", [0.0, 0.3, -0.7, 0.5j, 0.9 + 0.1j])
def test_cayley_type_family(a):
    f = PowerSeries([0] + [a**k for k in range(N)])  # z / (1 - a z)
    assert np.max(np.abs(schwarz.schwarzian(f).coeffs)) < 1e-12


def test_koebe_against_sympy():
    koebe = PowerSeries([0] + list(range(1, N + 1)))
    S = schwarz.schwarzian(koebe).coeffs
    want = sympy_schwarzian(lambda z: z / (1 - z) ** 2, S.size - 1)
    assert S[0] == pytest.approx(-6, abs=1e-12)
    np.testing.assert_allclose(S, want, atol=1e-9)
    # -6/(1-z^2)^2 = -6 sum (k+1) z^{2k}
    closed = np.zeros(S.size)
    closed[::2] = -6 * (np.arange(closed[::2].size) + 1)
    np.testing.assert_allclose(S, closed, atol=1e-9)


def test_exponential():
    a = 0.4 + 0.3j
    f = PowerSeries([0] + [a ** (k - 1) / math.factorial(k) for k in range(1, N)])  # (e^{az}-1)/a
    S = schwarz.schwarzian(f).coeffs
    assert S[0] == pytest.approx(-(a**2) / 2, abs=1e-14)
    assert np.max(np.abs(S[1:])) < 1e-12


def test_general_against_sympy():
    expr = lambda z: sp.tan(z / 2) + z**3 / 7
    f = PowerSeries(taylor(expr, 16))
    np.testing.assert_allclose(schwarz.schwarzian(f).coeffs, sympy_schwarzian(expr, 13), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_chain_consistency(seed):
    f = univalent_poly(np.random.default_rng(seed), 10).padded(30)
    direct = schwarz.schwarzian(f).coeffs
    via_psi, a0 = schwarz.psi_map(schwarz.pre_schwarzian(f))
    n = min(direct.size, via_psi.coeffs.size)
    np.testing.assert_allclose(via_psi.coeffs[:n], direct[:n], atol=1e-12)
    assert a0 == pytest.approx(2 * f.coeffs[2])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_moebius_invariance(seed):
    rng = np.random.default_rng(seed)
    f = univalent_poly(rng, 8).padded(30)
    th = rng.uniform(0, 2 * np.pi)
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    c, d = 0.3 * np.exp(1j * th), 1.0
    if abs(a * d - b * c) < 0.1:
        a += 1
    g = schwarz.moebius_compose(a, b, c, d, f)
    np.testing.assert_allclose(schwarz.schwarzian(g).coeffs, schwarz.schwarzian(f).coeffs, atol=1e-10)


def test_finite_difference_derivative(rng):
    f = univalent_poly(rng, 6).padded(20)
    g = PowerSeries(np.concatenate([[0, 0], 0.1 * (rng.standard_normal(5) + 1j * rng.standard_normal(5))])).padded(20)
    h = 1e-4
    fd = (schwarz.schwarzian(f + g * h).coeffs - schwarz.schwarzian(f - g * h).coeffs) / (2 * h)
    # series-level derivative: S = A' - A^2/2, dA = (g'' - A g') / f'
    f1, g1 = f.deriv(), g.deriv()
    A = schwarz.pre_schwarzian(f)
    n = A.degree
    dA = (g1.deriv() - A * g1.truncate(n)) * f1.truncate(n).reciprocal()
    dS = dA.deriv() - (A * dA).truncate(n - 1)
    m = min(fd.size, dS.coeffs.size)
    np.testing.assert_allclose(fd[:m], dS.coeffs[:m], atol=1e-6)


def test_solve_and_reconstruct(rng):
    S = schwarz.random_schwarzian(rng, 5, 0.1)
    f = schwarz.map_from_schwarzian(S, a0=0.2, derivative_at_0=1.5, degree=30)
    assert f.coeffs[0] == 0 and f.coeffs[1] == pytest.approx(1.5)
    assert schwarz.pre_schwarzian(f).coeffs[0] == pytest.approx(0.2)
    got = schwarz.schwarzian(f).coeffs
    np.testing.assert_allclose(got[: S.coeffs.size], S.coeffs, atol=1e-12)
    assert np.max(np.abs(got[S.coeffs.size:])) < 1e-12


# -------------------------------------------------------------------- norms


def test_bergman_examples():
    assert schwarz.bergman_norms(A=PowerSeries([0.0]))[0] == 0
    c = 2 - 1j
    na, ns = schwarz.bergman_norms(A=PowerSeries([c]), S=PowerSeries([c]))
    assert na == pytest.approx(abs(c) * math.sqrt(math.pi), rel=1e-15)
    assert ns == pytest.approx(abs(c) * math.sqrt(math.pi / 3), rel=1e-15)


def test_bergman_exact_vs_quadrature(rng):
    A = schwarz.random_schwarzian(rng, 12)
    S = schwarz.random_schwarzian(rng, 12)
    ex = schwarz.bergman_norms(A, S)
    qu = schwarz.bergman_norms_quadrature(RULE, A, S)
    assert qu == pytest.approx(ex, rel=1e-11)


def test_nehari_examples():
    assert schwarz.nehari_tnt_check(PowerSeries([0.0])) == (0, 0, 0.0)
    sup, bound, ratio = schwarz.nehari_tnt_check(PowerSeries([3 - 4j]))
    assert sup == pytest.approx(5, rel=1e-12)
    assert bound == pytest.approx(10, rel=1e-12)
    assert ratio == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("n", range(0, 21))
def test_monomial_sup(n):
    res = minimize_scalar(lambda r: -(1 - r * r) ** 2 * r**n, bounds=(0, 1), method="bounded",
                          options={"xatol": 1e-12})
    oracle = max(-res.fun, 1.0 if n == 0 else 0.0)
    assert schwarz.monomial_sup_closed_form(n) == pytest.approx(oracle, rel=1e-10)
    S = PowerSeries(np.eye(1, n + 1, n)[0])
    sup, bound, ratio = schwarz.nehari_tnt_check(S, grid=(64, 64))
    assert sup == pytest.approx(oracle, rel=1e-9)
    assert ratio < 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 20))
def test_nehari_bound(seed, degree):
    S = schwarz.random_schwarzian(np.random.default_rng(seed), degree)
    assert schwarz.nehari_tnt_check(S, grid=(64, 128))[2] <= 1


# ------------------------------------------------------------ Ahlfors-Weill


def test_aw_dilatation_examples(rng):
    assert schwarz.ahlfors_weill_dilatation(PowerSeries([0.0]), 0.3 + 0.1j) == 0
    c = 1 + 2j
    assert schwarz.ahlfors_weill_dilatation(PowerSeries([c]), 0.5) == pytest.approx(-0.28125 * c)
    assert schwarz.ahlfors_weill_dilatation(PowerSeries([c]), 0) == 0
    S = schwarz.random_schwarzian(rng, 6)
    z = 0.95 * np.sqrt(rng.uniform(size=40)) * np.exp(2j * np.pi * rng.uniform(size=40))
    np.testing.assert_allclose(np.abs(schwarz.ahlfors_weill_dilatation(S, z)),
                               (1 - np.abs(z) ** 2) ** 2 * np.abs(S(z)) / 2, rtol=1e-13)
    with pytest.raises(DomainError):
        schwarz.ahlfors_weill_dilatation(S, 1.0)


def test_aw_identity_examples():
    c = 0.5 - 1.5j
    for fn in (schwarz.aw_l2_identity_check, schwarz.aw_l2_identity_quadrature):
        lhs, rhs, ratio = fn(PowerSeries([c]), RULE)
        assert lhs == pytest.approx(abs(c) ** 2 * math.pi / 12, rel=1e-10)
        assert rhs == pytest.approx(abs(c) ** 2 * math.pi / 12, rel=1e-10)
        lhs, rhs, _ = fn(PowerSeries([0.0]), RULE)
        assert lhs == 0 and rhs == 0
    lhs, rhs, ratio = schwarz.aw_l2_identity_check(PowerSeries([0, 0, 6]), RULE)
    assert rhs == pytest.approx(0.25 * 36 * 2 * math.pi / 60, rel=1e-14)
    assert ratio == pytest.approx(1, abs=1e-10)


def test_guohui(rng):
    S = schwarz.random_schwarzian(rng, 7)
    mu = lambda z: schwarz.ahlfors_weill_dilatation(S, z)
    r = schwarz.guohui_ratio(mu, S, RULE)
    assert r == pytest.approx(4, rel=1e-10)
    t = 0.37
    assert schwarz.guohui_ratio(lambda z: t * mu(z), S * t, RULE) == pytest.approx(r, rel=1e-12)
    assert math.isnan(schwarz.guohui_ratio(lambda z: 0 * z, S, RULE))


def test_psi_band(rng):
    vals = []
    for _ in range(30):
        A = schwarz.random_schwarzian(rng, 6)
        A = A * (0.1 * rng.uniform() / schwarz.bergman_norms(A=A)[0])
        vals.append(schwarz.psi_band_ratio(A))
    assert 0 < min(vals) <= max(vals) < np.inf


def test_psi_band_exact_for_monomial():
    # A = e z^n, |e| small: S = n e z^{n-1} - e^2 z^{2n}/2
    e, n = 0.01, 3
    A = PowerSeries(np.eye(1, n + 1, n)[0] * e)
    ns2 = (n * e) ** 2 * 2 * math.pi / (n * (n + 1) * (n + 2)) + (e * e / 2) ** 2 * 2 * math.pi / (
        (2 * n + 1) * (2 * n + 2) * (2 * n + 3))
    na2 = e * e * math.pi / (n + 1)
    assert schwarz.psi_band_ratio(A) == pytest.approx(ns2 / na2, rel=1e-12)
