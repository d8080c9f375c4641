import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import iv

from wpnum import quad
from wpnum.errors import NumericError, ParameterError


@pytest.fixture(scope="module")
def unit():
    return quad.disk_rule(20, 64, 1.0)


@pytest.fixture(scope="module")
def ann():
    return quad.annulus_rule(2.0, 20, 64)


def test_disk_area(unit):
    assert quad.integrate(unit, 1.0).real == pytest.approx(math.pi, rel=1e-12)


def test_disk_odd_moment_vanishes(unit):
    assert abs(quad.integrate(unit, lambda z: z)) < 1e-14


def test_disk_hyperbolic_weight(unit):
    # 2 pi int_0^1 (1-r^2)^2 r dr = pi/3
    val = quad.integrate(unit, lambda z: (1 - abs(z) ** 2) ** 2).real
    assert val == pytest.approx(math.pi / 3, rel=1e-10)


def test_disk_second_moments(unit):
    assert quad.integrate(unit, lambda z: abs(z) ** 2).real == pytest.approx(math.pi / 2, rel=1e-12)
    val = quad.integrate(unit, lambda z: (1 - abs(z) ** 2) ** 2 * abs(z) ** 2).real
    assert val == pytest.approx(math.pi / 12, rel=1e-12)


def test_annulus_area(ann):
    assert quad.integrate(ann, 1.0).real == pytest.approx(3 * math.pi, rel=1e-12)


def test_annulus_inverse_power_vanishes(ann):
    assert abs(quad.integrate(ann, lambda z: 1 / z)) < 1e-13


def test_annulus_weight(ann):
    # I_0(2) = (r^2-1)^3/6 = 4.5, times 2 pi
    val = quad.integrate(ann, lambda z: (1 - abs(z) ** 2) ** 2).real
    assert val == pytest.approx(9 * math.pi, rel=1e-10)


def test_zero_integrand(unit, ann):
    assert quad.integrate(unit, 0.0) == 0
    assert quad.integrate(ann, np.zeros(len(ann))) == 0


def test_weights_positive_nodes_inside():
    for rule in (quad.disk_rule(7, 12, 0.5), quad.annulus_rule(3.0, 5, 9)):
        assert np.all(rule.weights > 0)
        assert np.all(rule.contains(rule.nodes))
        assert rule.weights.sum() == pytest.approx(rule.area, rel=1e-13)


@pytest.mark.parametrize("args", [(0, 8, 1.0), (4, 3, 1.0), (4, 8, 0.0), (4, 8, 1.5)])
def test_disk_rule_rejects(args):
    with pytest.raises(ParameterError):
        quad.disk_rule(*args)


def test_annulus_rule_rejects():
    with pytest.raises(ParameterError):
        quad.annulus_rule(1.0, 4, 8)


def test_non_finite_sample_reports_node(unit):
    vals = np.ones(len(unit), dtype=complex)
    vals[17] = np.nan
    with pytest.raises(NumericError, match="node 17"):
        quad.integrate(unit, vals)


def test_compensated_sum_beats_naive():
    a = np.array([1e16, 1.0, -1e16, 1.0] * 100)
    assert quad.compensated_sum(a) == 200.0


@settings(max_examples=60, deadline=None)
@given(n_r=st.integers(1, 12), n_t=st.integers(4, 40), radius=st.floats(0.1, 1.0),
       data=st.data())
def test_disk_exactness(n_r, n_t, radius, data):
    rule = quad.disk_rule(n_r, n_t, radius)
    a = data.draw(st.integers(0, rule.degree))
    b = data.draw(st.integers(0, rule.degree - a))
    got = quad.integrate(rule, lambda z: z**a * np.conj(z) ** b)
    want = quad.disk_moment(a, b, radius)
    # off-diagonal moments vanish; compare at the scale of int |z|^(a+b)
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


@settings(max_examples=40, deadline=None)
@given(n_r=st.integers(1, 12), n_t=st.integers(4, 40), r=st.floats(1.05, 3.0), data=st.data())
def test_annulus_exactness(n_r, n_t, r, data):
    rule = quad.annulus_rule(r, n_r, n_t)
    a = data.draw(st.integers(0, rule.degree))
    b = data.draw(st.integers(0, rule.degree - a))
    got = quad.integrate(rule, lambda z: z**a * np.conj(z) ** b)
    want = quad.annulus_moment(a, b, r)
    scale = quad.annulus_moment((a + b) // 2, (a + b) // 2, r).real
    assert abs(got - want) <= 1e-12 * max(1.0, scale)


def test_refinement_monotone():
    # int_D exp(Re z) dA = 2 pi I_1(1)
    exact = 2 * math.pi * iv(1, 1.0)
    errs = []
    for n in (1, 2, 4, 8, 16):
        rule = quad.disk_rule(n, 4 * n)
        errs.append(abs(quad.integrate(rule, lambda z: np.exp(z.real)).real - exact))
    for e0, e1 in zip(errs, errs[1:]):
        assert e1 <= max(e0, 1e-14)
