import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as si

from wpnum import diff, geom, quad
from wpnum.errors import BidegreeError, DivergenceError, ParameterError

RULE = quad.disk_rule(64, 256)
FINE = quad.disk_rule(128, 512)

coeff_lists = st.lists(
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    min_size=1, max_size=9)


def _radial_oracle(n, power):
    # 2 pi int_0^1 (1-r^2)^power r^(2n+1) dr
    val, _ = si.quad(lambda r: (1 - r * r) ** power * r ** (2 * n + 1), 0, 1, epsabs=0, epsrel=1e-13)
    return 2 * math.pi * val


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12])
def test_harmonic_weight_oracle(n):
    assert diff.harmonic_weight(n) == pytest.approx(_radial_oracle(n, 2), rel=1e-12)


def test_transform_identity(rng):
    h = diff.quadratic_differential([1, 2j, -0.5])
    z = 0.8 * rng.uniform(size=20) * np.exp(2j * np.pi * rng.uniform(size=20))
    t = diff.transform_differential(h, geom.identity_map())
    np.testing.assert_allclose(t(z), h(z), rtol=1e-15)


def test_transform_rotation_constant_beltrami():
    c, th = 0.4 - 0.1j, 0.7
    mu = diff.Differential(-1, 1, coeffs=[np.conj(c)], conjugate=True)
    t = diff.transform_differential(mu, geom.rotation(th))
    assert t(0.3 + 0.1j) == pytest.approx(c * np.exp(-2j * th), abs=1e-15)


def test_transform_scaling_quadratic():
    h = diff.quadratic_differential([1.0], antiholomorphic=False)
    half = geom.MoebiusMap(0.5, 0, 0, 1)
    t = diff.transform_differential(h, half)
    assert t(0.6 - 0.2j) == pytest.approx(0.25, abs=1e-15)


def test_transformation_rule_on_overlap(rng):
    # h_V(w) g'^k conj(g')^l = h_U(g(w)) reads h_V = pulled back
    h = diff.Differential(3, -1, coeffs=[1, 0.2, -0.3j])
    g = geom.disk_automorphism(0.2 + 0.3j, 1.0)
    t = diff.transform_differential(h, g)
    w = 0.7 * rng.uniform(size=25) * np.exp(2j * np.pi * rng.uniform(size=25))
    dg = g.derivative(w)
    np.testing.assert_allclose(t(w), h(g(w)) * dg**3 * np.conj(dg) ** -1, rtol=1e-14)


def test_lp_zero():
    z = diff.zero(0, 2)
    for p in (1, 2, math.inf):
        assert diff.lp_norm(z, p, rule=RULE) == 0
    assert diff.lp_norm(z, exact=True) == 0


def test_lp_constant_quadratic():
    c = 1.5 - 2j
    h = diff.quadratic_differential([c], antiholomorphic=False)
    want = abs(c) * math.sqrt(math.pi / 3)
    assert diff.lp_norm(h, 2, exact=True) == pytest.approx(want, rel=1e-14)
    assert diff.lp_norm(h, 2, rule=RULE) == pytest.approx(want, rel=1e-12)


def test_lp_sup_harmonic_constant():
    assert diff.HarmonicBeltrami([1.0]).sup_norm() == pytest.approx(1.0, abs=1e-12)


def test_lp_rejects_bad_p():
    h = diff.quadratic_differential([1.0])
    for p in (0.5, -1, math.nan):
        with pytest.raises(ParameterError):
            diff.lp_norm(h, p, rule=RULE)


def test_lp_general_p_oracle():
    # psi = 1 + z, p = 3: int |1+z|^3 (1-r^2)^4 (weight rho^{2-6})
    h = diff.quadratic_differential([1.0, 1.0])
    inner = lambda r: si.quad(lambda t: abs(1 + r * np.exp(1j * t)) ** 3, 0, 2 * math.pi, epsrel=1e-12)[0]
    val, _ = si.quad(lambda r: inner(r) * (1 - r * r) ** 4 * r, 0, 1, epsrel=1e-11)
    assert diff.lp_norm(h, 3, rule=FINE) == pytest.approx(val ** (1 / 3), rel=1e-8)


def test_divergence_guard_constant_beltrami():
    mu = diff.Differential(-1, 1, coeffs=[0.3], conjugate=True)
    with pytest.raises(DivergenceError):
        diff.lp_norm(mu, 2, rule=RULE)
    with pytest.raises(DivergenceError):
        diff.lp_norm(mu, 2, exact=True)


def test_divergence_guard_quiet_on_convergent():
    # (1-r^2)^{-1/2} is integrable: no signal
    assert not diff.divergence_check(lambda z: 1 / np.sqrt(1 - np.abs(z) ** 2))
    assert diff.divergence_check(lambda z: 1 / (1 - np.abs(z) ** 2))


def test_b_examples():
    zero = diff.beltrami_from_quadratic(diff.zero(0, 2))
    assert zero(0.5) == 0
    c = 0.7 + 0.2j
    psi = diff.quadratic_differential([np.conj(c)])  # c dzbar^2
    mu = diff.beltrami_from_quadratic(psi)
    assert (mu.k, mu.l) == (-1, 1)
    z = 0.4 - 0.3j
    assert mu(z) == pytest.approx(c * (1 - abs(z) ** 2) ** 2, abs=1e-15)
    want = abs(c) * math.sqrt(math.pi / 3)
    assert diff.lp_norm(mu, 2, rule=RULE) == pytest.approx(want, rel=1e-10)
    assert diff.lp_norm(psi, 2, rule=RULE) == pytest.approx(want, rel=1e-10)


def test_b_rejects_bidegree():
    with pytest.raises(BidegreeError):
        diff.beltrami_from_quadratic(diff.quadratic_differential([1.0], antiholomorphic=False))
    with pytest.raises(BidegreeError):
        diff.quadratic_from_beltrami(diff.zero(0, 2))


@settings(max_examples=30, deadline=None)
@given(coeff_lists)
def test_b_round_trip(coeffs):
    psi = diff.quadratic_differential(coeffs)
    back = diff.quadratic_from_beltrami(diff.beltrami_from_quadratic(psi))
    assert np.max(np.abs(back.coeffs - psi.coeffs)) <= 1e-14 * max(1, np.max(np.abs(psi.coeffs)))
    assert (back.k, back.l, back.weight_power) == (0, 2, 0)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_b_isometry(seed):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    psi = diff.quadratic_differential(c)
    mu = diff.beltrami_from_quadratic(psi)
    for p in (1, 2):
        a, b = diff.lp_norm(psi, p, rule=RULE), diff.lp_norm(mu, p, rule=RULE)
        assert abs(a - b) <= 1e-10 * a
    assert diff.lp_norm(psi, 2, exact=True) == pytest.approx(diff.lp_norm(mu, 2, exact=True), rel=1e-13)
    a, b = diff.lp_norm(psi, math.inf, grid=(64, 128)), diff.lp_norm(mu, math.inf, grid=(64, 128))
    assert abs(a - b) <= 1e-10 * a


@pytest.mark.parametrize("p", [1, 2, math.inf])
def test_pullback_invariance(rng, p):
    # dominant constant term keeps psi zero-free, so |psi|^p has no kinks
    c = 0.3 * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
    c[0] = 1 + np.sum(np.abs(c[1:]))
    psi = diff.quadratic_differential(c)
    base = diff.lp_norm(psi, p, rule=FINE)
    for _ in range(3):
        a = 0.4 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        m = geom.disk_automorphism(a, rng.uniform(0, 2 * np.pi))
        moved = diff.transform_differential(psi, m)
        assert diff.lp_norm(moved, p, rule=FINE) == pytest.approx(base, rel=1e-8)


def test_series_matches_sampled(rng):
    mu = diff.random_harmonic(rng, 10)
    d = mu.to_differential()
    sampled = diff.Differential(-1, 1, evaluator=lambda z: (1 - np.abs(z) ** 2) ** 2
                                * np.conj(np.polyval(mu.coeffs[::-1], z)))
    z = 0.99 * np.sqrt(rng.uniform(size=200)) * np.exp(2j * np.pi * rng.uniform(size=200))
    np.testing.assert_allclose(d(z), sampled(z), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(mu(z), d(z), rtol=1e-15, atol=1e-15)


def test_harmonic_l2_matches_quadrature(rng):
    mu = diff.random_harmonic(rng, 12)
    assert diff.lp_norm(mu.to_differential(), 2, rule=RULE) == pytest.approx(mu.l2_norm(), rel=1e-11)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 12))
def test_h_subset_omega(seed, degree):
    mu = diff.random_harmonic(np.random.default_rng(seed), degree)
    assert mu.sup_norm(grid=(64, 128)) <= diff.SQRT_12_OVER_PI * mu.l2_norm() * (1 + 1e-9)


def test_constant_phi_ratio():
    # phi = 1: sup = 1, L^2 = sqrt(pi/3), ratio sqrt(3/pi) = half the bound
    mu = diff.HarmonicBeltrami([1.0])
    assert mu.sup_norm() / mu.l2_norm() == pytest.approx(math.sqrt(3 / math.pi), rel=1e-12)


def test_interior_bound_stable(rng):
    ratios = {d: max(diff.interior_bound_ratio(diff.random_harmonic(rng, d)) for _ in range(20))
              for d in (4, 8, 16)}
    for v in ratios.values():
        assert 0 < v <= diff.SQRT_12_OVER_PI


def test_harmonic_linear_ops(rng):
    a, b = diff.random_harmonic(rng, 3), diff.random_harmonic(rng, 5)
    z = 0.5 + 0.1j
    c = 0.3 - 2j
    assert (a + b)(z) == pytest.approx(a(z) + b(z), abs=1e-14)
    assert (a - b)(z) == pytest.approx(a(z) - b(z), abs=1e-14)
    assert a.scaled(c)(z) == pytest.approx(c * a(z), abs=1e-14)


def test_schiffer():
    s = diff.schiffer_dilatation(0)
    assert s.value == 0 and s.quasiconformal
    assert diff.schiffer_map(0.2 + 0.5j, 0) == 0.2 + 0.5j
    s = diff.schiffer_dilatation(0.3)
    assert s.value == 0.3 and s.quasiconformal
    assert diff.schiffer_map(1 + 1j, 0.3) == pytest.approx(1.3 + 0.7j, abs=1e-15)
    assert not diff.schiffer_dilatation(1).quasiconformal
    assert not diff.schiffer_dilatation(2j).quasiconformal


def test_schiffer_dilatation_by_finite_differences():
    eps, z, h = 0.25 - 0.1j, 0.3 + 0.4j, 1e-6
    fz = (diff.schiffer_map(z + h, eps) - diff.schiffer_map(z - h, eps)) / (2 * h)
    fy = (diff.schiffer_map(z + 1j * h, eps) - diff.schiffer_map(z - 1j * h, eps)) / (2 * h)
    dz, dzbar = (fz - 1j * fy) / 2, (fz + 1j * fy) / 2
    assert dzbar / dz == pytest.approx(diff.schiffer_dilatation(eps).value, abs=1e-9)
